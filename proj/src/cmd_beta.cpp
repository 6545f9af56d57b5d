#include "acceptance.hpp"
#include "commands.hpp"

#include <matprodlab/betaconv.hpp>

#include <sstream>

namespace mpl::cli {

namespace {

void check_ternary(const std::string& w) {
  if (w.empty()) throw UsageError("--word must be nonempty");
  for (char c : w)
    if (c < '0' || c > '2') throw UsageError("word digits must be 0, 1 or 2");
}

json cubic_json(const CubicFieldElement& x) {
  return {{"coefficients", {to_json(x.coeff(0)), to_json(x.coeff(1)), to_json(x.coeff(2))}},
          {"exact", x.str()},
          {"decimal", x.decimal(30)}};
}

void run_criterion_command(const Globals& g, int& rc, int id, const AcceptanceParams& p, const char* name) {
  auto r = run_criterion(id, p);
  say(g, format_line(r));
  emit_json(g, {{"manifest", manifest(name, g, {{"depth", p.depth}})},
                {"pass", r.pass},
                {"detail", r.detail},
                {"data", r.data}});
  rc = r.pass ? kPass : kVerificationFailure;
}

}  // namespace

void add_beta(CLI::App& app, Globals& g, int& rc) {
  auto* cmd = app.add_subcommand("beta", "Bernoulli convolution for the cubic Pisot number");
  cmd->require_subcommand(1);

  auto* mu = cmd->add_subcommand("mu", "cylinder mass, interval and ratio bound of a ternary word");
  auto word = std::make_shared<std::string>();
  mu->add_option("--word", *word, "word over {0,1,2}")->required();
  mu->callback([&g, &rc, word] {
    check_ternary(*word);
    auto iv = beta_interval(*word);
    auto inf = functional_infima(g.depth_or(8));
    auto diag = ratio_diagnostics(*word, inf);
    json report = {{"manifest", manifest("beta mu", g, {{"word", *word}, {"depth", inf.depth}})},
                   {"word", *word},
                   {"binary", expand(*word)},
                   {"mu", to_json(diag.mu)},
                   {"nu", to_json(diag.nu)},
                   {"ratio", to_json(diag.ratio)},
                   {"interval_left", cubic_json(iv.left)},
                   {"interval_length", cubic_json(iv.length)},
                   {"bound", diag.bound},
                   {"rule", diag.rule},
                   {"pass", diag.ok}};
    std::ostringstream s;
    s << "mu[" << *word << "] = " << diag.mu << " (" << fmt17(diag.mu.get_d()) << "); nu = " << diag.nu
      << "; interval [" << iv.left.decimal(20) << ", +" << iv.length.decimal(20) << "); ratio bound " << diag.rule
      << " " << (diag.ok ? "holds" : "fails");
    say(g, s.str());
    emit_json(g, report);
    rc = diag.ok ? kPass : kVerificationFailure;
  });

  auto* verify = cmd->add_subcommand("verify", "vertex closure, incidence, fixed vector, additivity, field identity");
  verify->callback([&g, &rc] {
    AcceptanceConfig cfg;
    cfg.depth = g.depth_or(8);
    auto p = resolve_params(cfg);
    p.additivity_depth = p.depth;
    run_criterion_command(g, rc, 5, p, "beta verify");
  });

  auto* limits = cmd->add_subcommand("limits", "limits along 0^n and 2^n and the support scan");
  limits->callback([&g, &rc] {
    AcceptanceConfig cfg;
    cfg.depth = g.depth_or(10);
    run_criterion_command(g, rc, 6, resolve_params(cfg), "beta limits");
  });

  auto* gibbs = cmd->add_subcommand("gibbs", "weak Gibbs ratio statistic per cylinder length");
  auto n = std::make_shared<std::size_t>(14);
  gibbs->add_option("--n", *n, "largest cylinder length (default 14)");
  gibbs->callback([&g, &rc, n] {
    std::size_t depth = g.depth_or(10);
    if (*n < 1 || *n > 16 || depth < 1 || depth > 14) throw UsageError("need 1 <= --n <= 16 and 1 <= --depth <= 14");
    auto rep = psi_and_weak_gibbs(*n, depth, 1);
    bool dec = *n < 5 || weak_gibbs_decreasing(rep, 4, *n);
    std::ostringstream csv;
    csv << "n,cylinders,max_abs_log_ratio_over_n,max_nu_mu_root\n";
    json rows = json::array();
    for (const auto& r : rep.rows) {
      csv << r.n << "," << r.cylinders << "," << fmt17(r.max_abs_log_ratio_over_n) << "," << fmt17(r.max_nu_mu_root)
          << "\n";
      rows.push_back({{"n", r.n},
                      {"cylinders", r.cylinders},
                      {"statistic", r.max_abs_log_ratio_over_n},
                      {"max_nu_mu_root", r.max_nu_mu_root}});
    }
    std::ostringstream s;
    s << "statistic at n = " << *n << ": " << fmt17(rep.rows.back().max_abs_log_ratio_over_n) << " (Psi depth "
      << depth << "); " << (dec ? "decreasing" : "not decreasing") << " from n = 4";
    say(g, s.str());
    emit_json(g, {{"manifest", manifest("beta gibbs", g, {{"n", *n}, {"depth", depth}})},
                  {"rows", rows},
                  {"decreasing_from_4", dec},
                  {"pass", dec}});
    emit_csv(g, csv.str());
    rc = dec ? kPass : kVerificationFailure;
  });

  auto* verts = cmd->add_subcommand("vertices", "vertex set with exact coefficients and 30-digit decimals");
  verts->callback([&g, &rc] {
    auto v = vertex_closure();
    json arr = json::array();
    std::ostringstream csv;
    csv << "index,c0,c1,c2,decimal\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      arr.push_back(cubic_json(v[i]));
      csv << i + 1 << "," << v[i].coeff(0) << "," << v[i].coeff(1) << "," << v[i].coeff(2) << ","
          << v[i].decimal(30) << "\n";
    }
    say(g, std::to_string(v.size()) + " vertices (value = c0 + c1 b + c2 b^2)");
    emit_json(g, {{"manifest", manifest("beta vertices", g, json::object())}, {"vertices", arr}});
    emit_csv(g, csv.str());
    rc = kPass;
  });
}

}  // namespace mpl::cli
