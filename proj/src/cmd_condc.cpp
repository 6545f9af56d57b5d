#include "commands.hpp"

#include <matprodlab/condc.hpp>
#include <matprodlab/family.hpp>
#include <matprodlab/langw.hpp>

#include <random>
#include <sstream>

namespace mpl::cli {

namespace {

MatrixSequence load_sequence(const std::string& path) {
  json j = load_json(path);
  const json& arr = j.is_object() ? j.at("matrices") : j;
  if (!arr.is_array() || arr.empty()) throw UsageError(path + ": expected a nonempty array of matrices");
  MatrixSequence seq;
  try {
    for (const auto& m : arr) seq.push_back(matrix_from_json(m));
    sequence_dim(seq);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  return seq;
}

CutSequence parse_cuts(const std::string& text, std::size_t length) {
  if (text == "every") return CutSequence::every_step(length);
  std::vector<std::size_t> cuts;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) cuts.push_back(std::stoul(item));
    return CutSequence(cuts);
  } catch (const std::exception& e) {
    throw UsageError("bad --cuts: " + std::string(e.what()));
  }
}

rational parse_bound(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad ") + what + ": " + e.what());
  }
}

json witness_json(const ConditionCWitness& w) {
  json steps = json::array();
  for (const auto& st : w.per_n)
    steps.push_back({{"n", st.n},
                     {"k", st.k},
                     {"in_H1", st.q.in_H1},
                     {"lambda_min", to_json(st.q.lambda_min)},
                     {"Lambda_min", to_json(st.q.Lambda_min)}});
  json cuts = w.cuts.cuts();
  return {{"cuts", cuts},
          {"lambda", to_json(w.lambda)},
          {"Lambda", to_json(w.Lambda)},
          {"horizon", w.horizon},
          {"ok", w.ok},
          {"violation_n", w.violation_n ? json(*w.violation_n) : json(nullptr)},
          {"violation", w.violation},
          {"max_Lambda_seen", to_json(w.max_Lambda_seen)},
          {"max_lambda_seen", to_json(w.max_lambda_seen)},
          {"chained_ok", w.chained_ok},
          {"max_chained_Lambda", to_json(w.max_chained_Lambda)},
          {"steps", steps}};
}

std::string witness_csv(const ConditionCWitness& w) {
  std::ostringstream s;
  s << "n,k,in_H1,lambda_min,Lambda_min\n";
  for (const auto& st : w.per_n)
    s << st.n << "," << st.k << "," << st.q.in_H1 << "," << st.q.lambda_min << "," << st.q.Lambda_min << "\n";
  return s.str();
}

json dominance_json(const DominanceReport& rep) {
  json V = json::array();
  for (const auto& v : rep.V) V.push_back(float_vector_to_json(v));
  json steps = json::array();
  for (const auto& st : rep.steps) {
    json probes = json::array();
    for (const auto& p : st.probes) probes.push_back({{"probe", p.probe}, {"h", p.h}, {"lhs", p.lhs}, {"rhs", p.rhs}});
    steps.push_back({{"n", st.n},
                     {"k", st.k},
                     {"J", st.J},
                     {"eps_hat", st.eps_hat},
                     {"log_rate", st.log_rate},
                     {"sigma_ratio", st.sigma_ratio},
                     {"probes", probes}});
  }
  return {{"H", rep.H},
          {"V", V},
          {"r", to_json(rep.r)},
          {"C", to_json(rep.C)},
          {"ordering_ok", rep.ordering_ok},
          {"partition_ok", rep.partition_ok},
          {"rate_ok", rep.rate_ok},
          {"trapping_ok", rep.trapping_ok},
          {"bound_ok", rep.bound_ok},
          {"steps", steps}};
}

}  // namespace

void add_condc(CLI::App& app, Globals& g, int& rc) {
  auto* cmd = app.add_subcommand("condc", "condition (C) witness and dominance diagnostics");
  struct Opts {
    std::string word, sequence, cuts, lambda = "3/4", Lambda;
    std::size_t regular = 0, n = 0;
    bool dominance = false;
  };
  auto o = std::make_shared<Opts>();
  auto* src_word = cmd->add_option("--word", o->word, "digit word over {0,1,2} for the beta family");
  auto* src_seq = cmd->add_option("--sequence", o->sequence, "JSON file with a matrix sequence");
  auto* src_reg = cmd->add_option("--regular", o->regular, "random concatenation of this many W-words (uses --seed)");
  src_word->excludes(src_seq)->excludes(src_reg);
  src_seq->excludes(src_reg);
  cmd->add_option("--cuts", o->cuts, "'every', or comma-separated s_0,s_1,...; default W-blocks for words");
  cmd->add_option("--lambda", o->lambda, "H3 constant (default 3/4)");
  cmd->add_option("--Lambda", o->Lambda, "H2 constant (default: measured maximum, rounded up)");
  cmd->add_option("--n", o->n, "horizon (default: last cut - 1)");
  cmd->add_flag("--dominance", o->dominance, "also run dominance diagnostics with 5 seeded positive probes");
  cmd->callback([&g, &rc, o] {
    MatrixSequence seq;
    std::string word = o->word;
    if (o->regular) word = random_regular_word(g.seed, o->regular, std::min<std::size_t>(g.kmax_or(4), 4));
    if (!word.empty()) {
      for (char c : word)
        if (c < '0' || c > '2') throw UsageError("word digits must be 0, 1 or 2");
      seq = word_sequence(beta_generators(), word);
    } else if (!o->sequence.empty()) {
      seq = load_sequence(o->sequence);
    } else {
      throw UsageError("one of --word, --sequence, --regular is required");
    }
    rational lambda = parse_bound(o->lambda, "--lambda");
    CutSequence cuts;
    if (!o->cuts.empty()) {
      cuts = parse_cuts(o->cuts, seq.size());
    } else if (!word.empty()) {
      cuts = w_block_cuts(w_decompose(word));
    } else {
      cuts = CutSequence::every_step(seq.size());
    }
    if (cuts.last() > seq.size()) throw UsageError("cuts extend beyond the sequence");
    if (cuts.size() < 3) throw UsageError("need at least one cut s_2 > 0 (word too short for W-block cuts?)");
    std::size_t N = o->n ? o->n : cuts.last() - 1;
    if (N >= cuts.last()) throw UsageError("--n must lie below the last cut");
    if (!(lambda >= 0 && lambda < 1)) throw UsageError("--lambda must lie in [0, 1)");
    ConditionCWitness w;
    if (o->Lambda.empty()) {
      rational huge(mpz_class(1) << 4096);
      w = check_condition_c(seq, cuts, lambda, huge, N);
      mpz_class ceil_L = w.max_Lambda_seen.get_num() / w.max_Lambda_seen.get_den();
      if (rational(ceil_L) < w.max_Lambda_seen) ceil_L += 1;
      w.Lambda = rational(ceil_L);
      w.chained_ok = w.max_chained_Lambda <= w.Lambda / (1 - lambda);
    } else {
      rational Lambda = parse_bound(o->Lambda, "--Lambda");
      if (Lambda < 1) throw UsageError("--Lambda must be >= 1");
      w = check_condition_c(seq, cuts, lambda, Lambda, N);
    }
    bool ok = w.ok && w.chained_ok;
    json params = {{"word", word}, {"sequence", o->sequence}, {"cuts", o->cuts}, {"lambda", o->lambda},
                   {"Lambda", o->Lambda}, {"n", N}, {"regular", o->regular}, {"dominance", o->dominance}};
    json report = {{"manifest", manifest("condc", g, params)}, {"witness", witness_json(w)}};
    std::ostringstream s;
    s << "condition (C) up to n = " << w.horizon << " with lambda " << w.lambda << ", Lambda " << w.Lambda << ": "
      << (w.ok ? "holds" : "fails at n = " + std::to_string(*w.violation_n) + " (" + w.violation + ")")
      << "; chained bound " << (w.chained_ok ? "holds" : "fails") << "; max lambda seen " << w.max_lambda_seen;
    say(g, s.str());
    if (o->dominance) {
      DominanceOptions opt;
      std::mt19937_64 rng(g.seed);
      std::uniform_int_distribution<int> val(1, 9);
      std::size_t d = sequence_dim(seq);
      for (int t = 0; t < 5; ++t) {
        ExactMatrix X(d, 1);
        for (std::size_t i = 0; i < d; ++i) X[i] = rational(val(rng), val(rng));
        opt.probes.push_back(X);
      }
      auto rep = dominance_diagnostics(seq, cuts, w.lambda, w.Lambda, N, opt);
      report["dominance"] = dominance_json(rep);
      ok = ok && rep.bound_ok;
      std::ostringstream t;
      t << "dominance: H = " << rep.H << "; partition " << (rep.partition_ok ? "ok" : "fails") << "; rates "
        << (rep.rate_ok ? "ok" : "fail") << "; probe bound " << (rep.bound_ok ? "holds" : "fails");
      say(g, t.str());
    }
    report["pass"] = ok;
    emit_json(g, report);
    emit_csv(g, witness_csv(w));
    rc = ok ? kPass : kVerificationFailure;
  });
}

}  // namespace mpl::cli
