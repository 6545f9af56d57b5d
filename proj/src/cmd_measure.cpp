#include "commands.hpp"

#include <matprodlab/family.hpp>
#include <matprodlab/kamae.hpp>
#include <matprodlab/repmeasure.hpp>

#include <cmath>
#include <sstream>

namespace mpl::cli {

namespace {

LinearRepresentation load_representation(const std::string& path) {
  json j = load_json(path);
  try {
    Family fam;
    for (const auto& m : j.at("matrices")) fam.push_back(matrix_from_json(m));
    return LinearRepresentation(std::move(fam), vector_from_json(j.at("R")), vector_from_json(j.at("L")));
  } catch (const std::exception& e) {
    throw UsageError(path + ": invalid representation: " + e.what());
  }
}

void check_word(const std::string& w, std::size_t alphabet) {
  for (char c : w)
    if (c < '0' || static_cast<std::size_t>(c - '0') >= alphabet)
      throw UsageError("word digit '" + std::string(1, c) + "' outside the alphabet");
}

std::string case_name(KamaeCase c) { return to_string(c); }

}  // namespace

void add_measure(CLI::App& app, Globals& g, int& rc) {
  auto* cmd = app.add_subcommand("measure", "cylinder masses and n-step potentials of a linear representation");
  struct Opts {
    std::string rep, builtin, word;
  };
  auto o = std::make_shared<Opts>();
  auto* rep_opt = cmd->add_option("--rep", o->rep, "representation JSON {matrices, R, L}");
  cmd->add_option("--builtin", o->builtin, "built-in representation")->check(CLI::IsMember({"kamae"}))->excludes(rep_opt);
  cmd->add_option("--word", o->word, "cylinder word");
  cmd->callback([&g, &rc, o] {
    if (o->rep.empty() && o->builtin.empty()) throw UsageError("one of --rep, --builtin is required");
    LinearRepresentation rep = o->rep.empty() ? kamae_representation() : load_representation(o->rep);
    std::size_t depth = g.depth_or(6);
    if (depth > 12) throw UsageError("--depth above 12 produces too many cylinders for the table");
    bool additive = true;
    std::string bad;
    std::ostringstream csv;
    csv << "word,mu,mu_decimal,phi_n\n";
    json levels = json::array();
    for (std::size_t n = 1; n <= depth; ++n) {
      rational total = 0;
      for (const auto& w : all_words(rep.alphabet(), n)) {
        rational mu = measure_cylinder(rep, w);
        total += mu;
        rational split = 0;
        for (std::size_t a = 0; a < rep.alphabet(); ++a) split += measure_cylinder(rep, w + char('0' + a));
        if (split != mu && additive) {
          additive = false;
          bad = w;
        }
        std::string phi = "";
        rational tail = measure_cylinder(rep, w.substr(1));
        if (sgn(mu) > 0 && sgn(tail) > 0) phi = fmt17(log_of(mu / tail));
        csv << w << "," << mu << "," << fmt17(mu.get_d()) << "," << phi << "\n";
      }
      levels.push_back({{"n", n}, {"total", to_json(total)}});
      if (total != 1 && additive) {
        additive = false;
        bad = "level " + std::to_string(n);
      }
    }
    json report = {{"manifest", manifest("measure", g, {{"rep", o->rep}, {"builtin", o->builtin}, {"word", o->word}, {"depth", depth}})},
                   {"dim", rep.dim()},
                   {"alphabet", rep.alphabet()},
                   {"levels", levels},
                   {"additive", additive}};
    std::ostringstream s;
    s << "representation valid (d = " << rep.dim() << ", alphabet " << rep.alphabet() << "); additivity to depth "
      << depth << " " << (additive ? "exact" : "fails at " + bad);
    if (!o->word.empty()) {
      check_word(o->word, rep.alphabet());
      rational mu = measure_cylinder(rep, o->word);
      report["word"] = {{"word", o->word}, {"mu", to_json(mu)}};
      s << "; mu[" << o->word << "] = " << mu;
      try {
        auto p = n_step_potential(rep, o->word, o->word.size());
        report["word"]["phi_n"] = {{"exp", to_json(p.ratio)}, {"value", p.value}};
        s << ", phi_n = " << fmt17(p.value);
      } catch (const std::domain_error&) {
        report["word"]["phi_n"] = nullptr;
      }
    }
    say(g, s.str());
    report["pass"] = additive;
    emit_json(g, report);
    emit_csv(g, csv.str());
    rc = additive ? kPass : kVerificationFailure;
  });
}

void add_kamae(CLI::App& app, Globals& g, int& rc) {
  auto* cmd = app.add_subcommand("kamae", "the Kamae measure: masses, potential table, convergence check");
  cmd->require_subcommand(1);

  auto* pot = cmd->add_subcommand("potential", "step-function table (a, case, phi) and a sampling of phi on [0,1]");
  auto samples = std::make_shared<std::string>();
  pot->add_option("--samples", *samples, "CSV file for the sampling x, phi(x)");
  pot->callback([&g, &rc, samples] {
    std::size_t depth = g.depth_or(10);
    if (depth < 1 || depth > 20) throw UsageError("--depth must lie in 1..20");
    std::ostringstream csv;
    csv << "a,case,phi\n";
    json rows = json::array();
    auto add = [&](unsigned long a, KamaeCase c) {
      double phi = kamae_phi_of({c, a});
      csv << a << "," << case_name(c) << "," << fmt17(phi) << "\n";
      rows.push_back({{"a", a}, {"case", case_name(c)}, {"phi", phi}});
    };
    add(0, KamaeCase::ZERO_ZERO);
    for (unsigned long a = 1; a <= depth; ++a) add(a, KamaeCase::ZERO_ONES_ZERO);
    for (unsigned long a = 1; a <= depth; ++a) add(a, KamaeCase::ONES_ZERO);
    add(0, KamaeCase::ZERO_ONE_BAR);
    add(0, KamaeCase::ONE_BAR);
    std::ostringstream smp;
    smp << "x,phi\n";
    std::size_t bits = std::min<std::size_t>(depth, 16);
    for (std::size_t k = 0; k < (std::size_t(1) << bits); ++k) {
      std::string y;
      for (std::size_t b = bits; b-- > 0;) y += (k >> b) & 1 ? '1' : '0';
      double phi;
      try {
        phi = kamae_phi(y);
      } catch (const NeedsMoreDigits&) {
        phi = kamae_phi_of({y[0] == '0' ? KamaeCase::ZERO_ONE_BAR : KamaeCase::ONE_BAR, 0});
      }
      smp << fmt17(static_cast<double>(k) / static_cast<double>(std::size_t(1) << bits)) << "," << fmt17(phi) << "\n";
    }
    if (!samples->empty()) {
      Globals tmp = g;
      tmp.csv_path = *samples;
      emit_csv(tmp, smp.str());
    }
    say(g, "potential table with " + std::to_string(rows.size()) + " rows; sampling on 2^" + std::to_string(bits) +
               " points");
    emit_json(g, {{"manifest", manifest("kamae potential", g, {{"depth", depth}, {"samples", *samples}})},
                  {"table", rows}});
    emit_csv(g, csv.str());
    rc = kPass;
  });

  auto* ver = cmd->add_subcommand("verify", "|phi_n - phi| at n = 40 on every cylinder class with a <= 10");
  ver->callback([&g, &rc] {
    auto rep = kamae_representation();
    const std::size_t n = 40;
    auto err = [&](const std::string& y, double phi) { return std::abs(n_step_potential(rep, y, n).value - phi); };
    json rows = json::array();
    std::ostringstream csv;
    csv << "case,a,tail,error\n";
    bool ok = true;
    auto add = [&](const std::string& name, unsigned long a, const std::string& tail, double e) {
      rows.push_back({{"case", name}, {"a", a}, {"tail", tail}, {"error", e}});
      csv << name << "," << a << "," << tail << "," << fmt17(e) << "\n";
      ok = ok && e < 1e-8;
    };
    add("[00]", 0, "1", err("00" + std::string(n - 2, '1'), std::log(1.0 / 3)));
    add("[00]", 0, "0", err(std::string(n, '0'), std::log(1.0 / 3)));
    for (unsigned long a = 1; a <= 10; ++a)
      for (char t : {'0', '1'}) {
        std::string z = "0" + std::string(a, '1') + "0", y = std::string(a, '1') + "0";
        add("[01^a0]", a, std::string(1, t), err((z + std::string(n, t)).substr(0, n), kamae_phi(z)));
        add("[1^a0]", a, std::string(1, t), err((y + std::string(n, t)).substr(0, n), kamae_phi(y)));
      }
    add("01bar", 0, "", err("0" + std::string(n - 1, '1'), kamae_phi_of({KamaeCase::ZERO_ONE_BAR, 0})));
    add("1bar", 0, "", err(std::string(n, '1'), kamae_phi_of({KamaeCase::ONE_BAR, 0})));
    double worst = 0;
    std::string where;
    for (const auto& r : rows)
      if (r["error"].get<double>() > worst) {
        worst = r["error"].get<double>();
        where = r["case"].get<std::string>();
      }
    say(g, std::string(ok ? "all" : "not all") + " classes within 1e-8 at n = 40; worst " + fmt17(worst) + " at " +
               where);
    emit_json(g, {{"manifest", manifest("kamae verify", g, {{"n", n}})}, {"rows", rows}, {"pass", ok}});
    emit_csv(g, csv.str());
    rc = ok ? kPass : kVerificationFailure;
  });

  auto* mu = cmd->add_subcommand("measure", "mass of a binary cylinder");
  auto word = std::make_shared<std::string>();
  mu->add_option("--word", *word, "binary word")->required();
  mu->callback([&g, &rc, word] {
    check_word(*word, 2);
    rational raw = kamae_measure_raw(*word), m = kamae_measure(*word);
    say(g, "||A(w)||/3^n = " + to_string(raw) + "; normalized mass " + to_string(m));
    emit_json(g, {{"manifest", manifest("kamae measure", g, {{"word", *word}})},
                  {"raw", to_json(raw)},
                  {"mu", to_json(m)}});
    rc = kPass;
  });
}

}  // namespace mpl::cli
