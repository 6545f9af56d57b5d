#include "commands.hpp"

#include <matprodlab/gallery.hpp>

#include <random>
#include <sstream>

namespace mpl::cli {

namespace {

struct ExampleOutcome {
  bool pass = true;
  std::string summary;
  std::string csv;
  json data = json::object();
};

ExampleOutcome block_triangular(std::size_t n) {
  ExactMatrix a = exact_from_ints({{8, 4, 0, 0}, {4, 8, 0, 0}, {1, 1, 2, 1}, {1, 2, 1, 2}});
  auto rep = blocktri_check(MatrixSequence(n, a), {2, 2});
  std::ostringstream csv;
  csv << "n,eps,partial_sum,Lambda_P,Lambda_bound,lambda_P,lambda_bound\n";
  for (const auto& s : rep.steps)
    csv << s.n << "," << s.eps << "," << fmt17(s.partial_sum.get_d()) << "," << s.Lambda_P << ","
        << fmt17(s.Lambda_bound.get_d()) << "," << s.lambda_P << "," << fmt17(s.lambda_bound.get_d()) << "\n";
  return {rep.ok(),
          "block-triangular products: " + std::string(rep.ok() ? "bounds hold" : "bounds fail") + " for n <= " +
              std::to_string(n) + "; S = " + fmt17(rep.S.get_d()),
          csv.str(),
          {{"S", to_json(rep.S)}, {"Lambda", to_json(rep.Lambda)}, {"ok", rep.ok()}}};
}

ExampleOutcome triangular(std::size_t n) {
  auto one = [](std::size_t) { return rational(1); };
  auto geo = [](std::size_t k) { return rational(1, 1ul << std::min<std::size_t>(k, 62)); };
  std::ostringstream csv;
  csv << "n,s_n,column2_first,limit_first\n";
  bool ok = true;
  Tri2x2Report last;
  for (std::size_t k = 1; k <= n; ++k) {
    last = tri2x2_limit(one, geo, one, k);
    ok = ok && last.exact_match;
    csv << k << "," << fmt17(last.s_partial.get_d()) << "," << fmt17(last.column2_direct[0].get_d()) << ","
        << fmt17(last.limit2[0]) << "\n";
  }
  return {ok, "2x2 triangular products with b_n = 2^-n: direct and closed form " + std::string(ok ? "agree" : "differ") +
                  "; column 2 tends to " + fmt17(last.limit2[0]),
          csv.str(), {{"exact_match", ok}}};
}

ExampleOutcome two_limits(std::size_t n) {
  std::size_t kmax = std::min<std::size_t>(n, 24);
  std::ostringstream csv;
  csv << "k,n_k,gap_first_limit,gap_second_limit\n";
  bool ok = true;
  for (std::size_t k = 1; k <= kmax; ++k) {
    auto r = two_limits_products(k);
    ok = ok && r.exact_match;
    csv << k << "," << k * (k + 1) / 2 << "," << fmt17(r.gap_to_first_limit) << "," << fmt17(r.gap_to_second_limit)
        << "\n";
  }
  return {ok, "triangular products with two limit directions: closed forms " + std::string(ok ? "exact" : "mismatch") +
                  " for k <= " + std::to_string(kmax),
          csv.str(), {{"kmax", kmax}, {"exact_match", ok}}};
}

ExampleOutcome positive(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> v(1, 9);
  std::vector<ExactMatrix> fam;
  for (int t = 0; t < 3; ++t) {
    ExactMatrix m(4, 4);
    for (std::size_t i = 0; i < 16; ++i) m[i] = v(rng);
    fam.push_back(m);
  }
  MatrixSequence seq;
  for (std::size_t k = 0; k < n; ++k) seq.push_back(fam[rng() % 3]);
  auto r = positive_family_limit(seq, ExactMatrix::ones(4));
  std::ostringstream csv;
  csv << "n,error,bound\n";
  for (std::size_t k = 0; k < r.errors.size(); ++k)
    csv << k + 1 << "," << fmt17(r.errors[k]) << "," << fmt17(r.C * std::pow(r.gamma, static_cast<double>(k + 1)))
        << "\n";
  return {r.rate_ok, "positive family: gamma = " + fmt17(r.gamma) + "; geometric rate " + (r.rate_ok ? "holds" : "fails"),
          csv.str(), {{"gamma", r.gamma}, {"C", r.C}, {"limit", r.limit}, {"rate_ok", r.rate_ok}}};
}

ExampleOutcome alternating(std::size_t n) {
  auto r = alternating_b_example(n);
  std::ostringstream csv;
  csv << "n,direction_first,weight_first\n";
  for (std::size_t k = 0; k < n; ++k)
    csv << k + 1 << "," << fmt17(r.column_direction[k][0]) << "," << fmt17(r.weights[k][0]) << "\n";
  return {true, "alternating family: column directions constant, weights alternate between 1/2 and 1/3", csv.str(),
          json::object()};
}

std::string bits_word(std::size_t k, std::size_t bits, std::size_t length, char pad) {
  std::string w;
  for (std::size_t b = bits; b-- > 0;) w += (k >> b) & 1 ? '1' : '0';
  return w + std::string(length - bits, pad);
}

ExampleOutcome rademacher(std::size_t depth, double beta) {
  std::size_t bits = std::min<std::size_t>(depth, 14);
  std::ostringstream csv;
  csv << "x,p_series,p_matrix\n";
  double worst = 0;
  for (std::size_t k = 0; k < (std::size_t(1) << bits); ++k) {
    auto r = lyap_direction_rademacher(bits_word(k, bits, 60, '0'), beta);
    worst = std::max(worst, r.gap);
    csv << fmt17(static_cast<double>(k) / static_cast<double>(std::size_t(1) << bits)) << "," << fmt17(r.p_series)
        << "," << fmt17(r.p_matrix) << "\n";
  }
  auto mono = rademacher_monotone_check(beta, std::min<std::size_t>(bits, 12));
  std::string m = mono.monotone ? "monotone" : "not monotone (" + mono.lower + " vs " + mono.upper + ")";
  return {worst < 1e-9, "Rademacher direction map at beta = " + fmt17(beta) + ": series vs matrices max gap " +
                            fmt17(worst) + "; " + m,
          csv.str(), {{"beta", beta}, {"max_gap", worst}, {"monotone", mono.monotone}}};
}

ExampleOutcome continued_fraction(std::size_t depth) {
  std::size_t bits = std::min<std::size_t>(depth, 14);
  std::ostringstream csv;
  csv << "x,p_cf,p_matrix\n";
  bool ok = true;
  for (std::size_t k = 0; k < (std::size_t(1) << bits); ++k) {
    auto r = lyap_direction_cf(bits_word(k, bits, bits + 1, '1'));
    ok = ok && r.matrix_identity;
    csv << fmt17(static_cast<double>(k) / static_cast<double>(std::size_t(1) << bits)) << ","
        << fmt17(r.p_cf.get_d()) << "," << fmt17(r.p_matrix.get_d()) << "\n";
  }
  return {ok, "continued-fraction direction map: matrix identity " + std::string(ok ? "holds" : "fails") + " on 2^" +
                  std::to_string(bits) + " prefixes",
          csv.str(), {{"matrix_identity", ok}}};
}

ExampleOutcome three_rates(std::size_t n) {
  auto r = three_rates_run(n);
  std::ostringstream csv;
  csv << "n,k,r,phi,norm_u1,norm_u2,norm_u3,norm_u4,log11_u1,log2_u3,closed_form\n";
  for (const auto& s : r.steps)
    csv << s.n << "," << s.k << "," << s.r << "," << s.phi << "," << s.norm_u1 << "," << s.norm_u2 << "," << s.norm_u3
        << "," << s.norm_u4 << "," << fmt17(s.log11_u1) << "," << fmt17(s.log2_u3) << "," << s.closed_form_match
        << "\n";
  bool ok = r.closed_form_ok && r.u3_identity && r.phi_is_r;
  return {ok, "three growth rates: closed form " + std::string(r.closed_form_ok ? "exact" : "mismatch") +
                  "; |P_n U_3| = 2^(phi+2) - 2 " + (r.u3_identity ? "holds" : "fails") + " for n <= " + std::to_string(n),
          csv.str(),
          {{"closed_form", r.closed_form_ok}, {"u3_identity", r.u3_identity}, {"phi_is_r", r.phi_is_r},
           {"log2_equals_phi", r.log2_u3_equals_phi}, {"u4_constant", r.u4_constant}}};
}

ExampleOutcome rotating(std::size_t n) {
  std::size_t kmax = std::min<std::size_t>(std::max<std::size_t>(n, 1), 10);
  auto r = rotating_products(kmax);
  std::ostringstream csv;
  csv << "k,n,checkpoint,gap_to_limit,sigma_ratio\n";
  for (const auto& c : r.checkpoints)
    csv << c.k << "," << c.n << "," << (c.is_m ? "m" : "n") << "," << fmt17(c.gap_to_limit) << ","
        << fmt17(c.sigma_ratio) << "\n";
  return {true, "rotating products: " + std::to_string(r.checkpoints.size()) +
                    " checkpoints; max sigma2/sigma1 past the first pair " + fmt17(r.max_sigma_ratio_tail),
          csv.str(), {{"kmax", kmax}, {"max_sigma_ratio_tail", r.max_sigma_ratio_tail}}};
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> v{"block-triangular", "triangular",         "two-limits",
                                          "positive",         "alternating",        "rademacher",
                                          "continued-fraction", "three-rates",      "rotating"};
  return v;
}

}  // namespace

void add_examples(CLI::App& app, Globals& g, int& rc) {
  auto* cmd = app.add_subcommand("examples", "worked examples with plot-ready CSV output");
  cmd->require_subcommand(1);
  auto* list = cmd->add_subcommand("list", "list example names");
  list->callback([&g, &rc] {
    for (const auto& n : example_names()) say(g, n);
    emit_json(g, {{"examples", example_names()}});
    rc = kPass;
  });
  auto* run = cmd->add_subcommand("run", "run one example");
  struct Opts {
    std::string name;
    std::size_t n = 40;
    double beta = 2.0;
  };
  auto o = std::make_shared<Opts>();
  run->add_option("--name", o->name, "example name")->required()->check(CLI::IsMember(example_names()));
  run->add_option("--n", o->n, "horizon (default 40)");
  run->add_option("--beta", o->beta, "parameter of the Rademacher map, 1 < beta <= 2");
  run->callback([&g, &rc, o] {
    if (o->n < 1 || o->n > 2000) throw UsageError("--n must lie in 1..2000");
    std::size_t depth = g.depth_or(10);
    ExampleOutcome out;
    const std::string& name = o->name;
    if (name == "block-triangular") out = block_triangular(o->n);
    else if (name == "triangular") out = triangular(std::min<std::size_t>(o->n, 200));
    else if (name == "two-limits") out = two_limits(o->n);
    else if (name == "positive") out = positive(o->n, g.seed);
    else if (name == "alternating") out = alternating(o->n);
    else if (name == "rademacher") {
      if (!(o->beta > 1 && o->beta <= 2)) throw UsageError("--beta must lie in (1, 2]");
      out = rademacher(depth, o->beta);
    } else if (name == "continued-fraction") out = continued_fraction(depth);
    else if (name == "three-rates") out = three_rates(o->n);
    else out = rotating(o->n);
    say(g, out.summary);
    emit_json(g, {{"manifest", manifest("examples run", g, {{"name", name}, {"n", o->n}, {"beta", o->beta}})},
                  {"pass", out.pass},
                  {"summary", out.summary},
                  {"data", out.data}});
    emit_csv(g, out.csv);
    rc = out.pass ? kPass : kVerificationFailure;
  });
}

}  // namespace mpl::cli
