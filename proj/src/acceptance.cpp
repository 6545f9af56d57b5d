#include "acceptance.hpp"

#include "output.hpp"

#include <matprodlab/betaconv.hpp>
#include <matprodlab/gallery.hpp>
#include <matprodlab/kamae.hpp>
#include <matprodlab/langw.hpp>
#include <matprodlab/properties.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace mpl::cli {

AcceptanceParams resolve_params(const AcceptanceConfig& cfg) {
  AcceptanceParams p;
  p.profile = cfg.profile;
  p.seed = cfg.seed;
  if (cfg.profile == "quick") {
    p.kmax = 8;
    p.depth = 8;
    p.run_cap = 8;
    p.gibbs_n = 8;
    p.gibbs_depth = 8;
  } else if (cfg.profile != "full") {
    throw std::invalid_argument("profile must be quick or full");
  }
  if (cfg.kmax) p.kmax = cfg.profile == "quick" ? std::min<std::size_t>(*cfg.kmax, 8) : *cfg.kmax;
  if (cfg.depth) p.depth = cfg.profile == "quick" ? std::min<std::size_t>(*cfg.depth, 8) : *cfg.depth;
  if (p.kmax < 1 || p.depth < 1) throw std::invalid_argument("kmax and depth must be positive");
  p.run_cap = std::min(p.run_cap, p.kmax);
  p.gibbs_depth = std::min(p.gibbs_depth, p.depth);
  p.additivity_depth = std::min(p.additivity_depth, p.depth);
  return p;
}

namespace {

CriterionResult golden_suite() {
  CriterionResult r{1, "golden products"};
  auto rep = verify_golden_products();
  r.pass = rep.ok();
  std::size_t matched = 0;
  for (const auto& e : rep.printed) matched += e.matches && e.props.ok();
  std::ostringstream d;
  d << matched << "/" << rep.printed.size() << " printed products exact with key properties; " << rep.generated.size()
    << " factor words checked";
  auto fails = rep.failures();
  if (!fails.empty()) d << "; first failure " << fails.front();
  r.detail = d.str();
  r.data = {{"printed", rep.printed.size()}, {"generated", rep.generated.size()}, {"failures", fails}};
  return r;
}

CriterionResult family_bounds(const AcceptanceParams& p) {
  CriterionResult r{2, "W family bounds"};
  auto rep = verify_family_bounds(p.kmax);
  r.pass = rep.ok();
  json rows = json::array();
  std::vector<std::string> witnesses;
  rational max_lambda(0);
  for (const auto& row : rep.rows) {
    max_lambda = rmax(max_lambda, row.max_lambda);
    rows.push_back({{"family", std::string(w_families[row.family].tag)},
                    {"bound", w_families[row.family].Lambda_bound},
                    {"max_Lambda", to_json(row.max_Lambda)},
                    {"max_lambda", to_json(row.max_lambda)},
                    {"certified", row.certified}});
    if (!row.Lambda_ok || !row.lambda_ok) {
      auto colon = row.witness.find(':');
      std::string word = row.witness.substr(0, colon);
      std::string value = row.witness.substr(row.witness.find('=') + 2);
      if (!row.lambda_ok)
        witnesses.push_back("min_lambda(A(" + word + ")) = " + value + " > " + std::to_string(w_global_lambda));
      else
        witnesses.push_back("min_Lambda(A(" + word + ")) = " + value + " > " +
                            std::to_string(w_families[row.family].Lambda_bound));
    }
  }
  std::ostringstream d;
  d << "kmax " << p.kmax << "; max lambda " << max_lambda;
  if (!witnesses.empty()) {
    d << "; witness";
    for (const auto& w : witnesses) d << " " << w;
  } else {
    d << "; all 13 family constants hold";
  }
  r.detail = d.str();
  r.data = {{"kmax", p.kmax}, {"rows", rows}, {"witnesses", witnesses}};
  return r;
}

CriterionResult doubling_exhaustion(const AcceptanceParams& p) {
  CriterionResult r{3, "doubling exhaustion"};
  auto g = build_gamma2();
  auto checks = check_gamma2(g);
  auto off = gamma2_offender_search(g, p.run_cap, 40);
  bool eleven = !off.unbounded && off.max_offender_blocks < 11;
  r.pass = checks.ok() && eleven && off.printed_label_offends;
  std::ostringstream d;
  d << "graph " << g.vertices.size() << " vertices";
  if (off.unbounded) {
    d << "; offenders unbounded";
  } else {
    d << "; longest offender " << off.max_offender_blocks << " blocks";
    if (!off.longest_offenders.empty()) d << " (" << off.longest_offenders.front() << ")";
    d << "; every path of >= " << off.paths_over_blocks << " blocks ends in 2T2";
  }
  d << "; longest offenders 0001001011 2^k 010 " << (off.extremal_in_longest ? "confirmed" : "not confirmed");
  d << "; printed 0001001021 2^k 010 " << (off.printed_label_offends ? "offends" : "reaches 2T2");
  r.detail = d.str();
  r.data = {{"vertices", g.vertices.size()},
            {"graph_checks", checks.ok()},
            {"max_offender_blocks", off.max_offender_blocks},
            {"paths_over_blocks", off.paths_over_blocks},
            {"run_cap", off.run_cap},
            {"longest_offenders", off.longest_offenders},
            {"extremal_in_longest", off.extremal_in_longest},
            {"extremal_endpoints_ok", off.extremal_endpoints_ok},
            {"printed_label_offends", off.printed_label_offends}};
  return r;
}

CriterionResult concatenations(const AcceptanceParams& p) {
  CriterionResult r{4, "long concatenations"};
  auto rep = verify_concatenations(p.concat_samples, std::min<std::size_t>(p.kmax, 4), p.seed);
  r.pass = rep.ok();
  std::ostringstream d;
  d << rep.random_samples << " random + " << rep.structured_samples << " structured words (seed " << p.seed
    << "); max lambda " << fmt_short(rep.max_lambda.get_d()) << " <= 3/4; constant " << rep.proof_constant << " < 3/4";
  if (rep.witness) d << "; failure " << rep.witness->substr(0, 40);
  r.detail = d.str();
  r.data = {{"seed", p.seed},
            {"random", rep.random_samples},
            {"structured", rep.structured_samples},
            {"failures", rep.failures},
            {"max_lambda", to_json(rep.max_lambda)},
            {"proof_constant", to_json(rep.proof_constant)}};
  return r;
}

CriterionResult beta_machinery(const AcceptanceParams& p) {
  CriterionResult r{5, "beta machinery"};
  auto verts = vertex_closure();
  auto ref = reference_vertices();
  bool closure = verts.size() == 7;
  for (const auto& x : ref) closure = closure && std::count(verts.begin(), verts.end(), x) == 1;
  Family inc = incidence_matrices(ref);
  bool incidence = inc.size() == 3;
  for (std::size_t e = 0; e < inc.size(); ++e) incidence = incidence && inc[e] == beta_generators()[e];
  const Family& m = beta_weighted();
  bool fixed = product(m[0] + m[1] + m[2], beta_R()) == beta_R();
  bool additive = true;
  std::string first_bad;
  std::size_t cylinders = 0;
  for (std::size_t n = 1; n <= p.additivity_depth && additive; ++n) {
    rational total = 0;
    auto words = all_words(3, n);
    for (const auto& w : words) {
      rational mu = mu_cylinder(w);
      total += mu;
      if (n < p.additivity_depth && mu != mu_cylinder(w + "0") + mu_cylinder(w + "1") + mu_cylinder(w + "2")) {
        additive = false;
        first_bad = w;
        break;
      }
    }
    cylinders = words.size();
    if (total != 1) {
      additive = false;
      if (first_bad.empty()) first_bad = "level " + std::to_string(n) + " total";
    }
  }
  CubicFieldElement inv = CubicFieldElement::beta().inverse();
  bool identity = inv + inv * inv + cubic_pow(inv, 4) == CubicFieldElement(1);
  r.pass = closure && incidence && fixed && additive && identity;
  std::ostringstream d;
  d << "closure " << verts.size() << " vertices " << (closure ? "ok" : "mismatch") << "; incidence "
    << (incidence ? "exact" : "mismatch") << "; A*R = R " << (fixed ? "exact" : "fails") << "; additivity to depth "
    << p.additivity_depth << " (" << cylinders << " cylinders) " << (additive ? "exact" : "fails at " + first_bad)
    << "; 1/b + 1/b^2 + 1/b^4 = 1 " << (identity ? "exact" : "fails");
  r.detail = d.str();
  json vj = json::array();
  for (const auto& v : verts) vj.push_back({{"exact", v.str()}, {"decimal", v.decimal(30)}});
  r.data = {{"vertices", vj},
            {"incidence", incidence},
            {"fixed_vector", fixed},
            {"additivity_depth", p.additivity_depth},
            {"additive", additive},
            {"identity", identity}};
  return r;
}

double sup_error(const ExactMatrix& v, const std::vector<rational>& target) {
  double e = 0;
  for (std::size_t i = 0; i < target.size(); ++i) e = std::max(e, std::abs(rational(v[i] - target[i]).get_d()));
  return e;
}

CriterionResult constant_limits(const AcceptanceParams& p) {
  CriterionResult r{6, "constant-word limits"};
  const unsigned long n = 40;
  std::vector<rational> v0{0, rational(1, 5), rational(1, 5), 0, rational(1, 5), rational(1, 5), rational(1, 5)};
  std::vector<rational> v2{rational(1, 3), 0, rational(1, 3), rational(1, 3), 0, 0, 0};
  double e0 = sup_error(pi_constant('0', n, beta_R()), v0);
  double e2 = sup_error(pi_constant('2', n, beta_R()), v2);
  double e0_far = sup_error(pi_constant('0', 100 * n, beta_R()), v0);
  auto scan = support_scan(p.depth, {0, 2, 4});
  r.pass = e0 < 1e-6 && e2 < 1e-6 && scan.failures == 0;
  std::ostringstream d;
  d << "sup error at n = 40: 0^n " << fmt_short(e0) << ", 2^n " << fmt_short(e2) << " (tolerance 1e-6; rate 1/n, 0^n at n = "
    << 100 * n << ": " << fmt_short(e0_far) << "); support {1,3,5} on " << scan.words << " depth-" << p.depth
    << " words, " << scan.failures << " failures";
  if (scan.failures) d << " (first " << scan.first_failure << ")";
  r.detail = d.str();
  r.data = {{"n", n},
            {"error_zero", e0},
            {"error_two", e2},
            {"error_zero_n4000", e0_far},
            {"support_depth", p.depth},
            {"support_words", scan.words},
            {"support_failures", scan.failures}};
  return r;
}

CriterionResult weak_gibbs(const AcceptanceParams& p) {
  CriterionResult r{7, "weak Gibbs trend"};
  auto rep = psi_and_weak_gibbs(p.gibbs_n, p.gibbs_depth, 4);
  bool decreasing = weak_gibbs_decreasing(rep, 4, p.gibbs_n);
  double last = rep.rows.empty() ? 0 : rep.rows.back().max_abs_log_ratio_over_n;
  bool small = p.gibbs_n < 14 || last < 0.2;

  auto kam = kamae_representation();
  auto err = [&](const std::string& y, double phi) {
    return std::abs(n_step_potential(kam, y, y.size()).value - phi);
  };
  const std::size_t n = 40;
  double e00 = err("00" + std::string(n - 2, '1'), std::log(1.0 / 3)), e010 = 0, e10 = 0;
  for (unsigned long a = 1; a <= 10; ++a) {
    std::string z = "0" + std::string(a, '1') + "0", o = std::string(a, '1') + "0";
    for (const auto& tail : {std::string(n, '0'), std::string(n, '1')}) {
      e010 = std::max(e010, err((z + tail).substr(0, n), kamae_phi(z)));
      e10 = std::max(e10, err((o + tail).substr(0, n), kamae_phi(o)));
    }
  }
  double e01bar = err("0" + std::string(n - 1, '1'), kamae_phi_of({KamaeCase::ZERO_ONE_BAR, 0}));
  double e1bar = err(std::string(n, '1'), kamae_phi_of({KamaeCase::ONE_BAR, 0}));
  bool kamae_ok = std::max({e00, e010, e10, e01bar, e1bar}) < 1e-8;
  r.pass = decreasing && small && kamae_ok;
  std::ostringstream d;
  d << "beta: statistic " << (decreasing ? "decreasing" : "not decreasing") << " on n = 4.." << p.gibbs_n << ", "
    << fmt_short(last) << " at n = " << p.gibbs_n << " (depth " << p.gibbs_depth << ")";
  if (p.gibbs_n < 14) d << ", threshold at n = 14 needs the full profile";
  d << "; Kamae |phi_40 - phi|: [00] " << fmt_short(e00) << ", [01^a0] " << fmt_short(e010) << ", [1^a0] "
    << fmt_short(e10) << ", 01bar " << fmt_short(e01bar) << ", 1bar " << fmt_short(e1bar) << " (tolerance 1e-8)";
  r.detail = d.str();
  json rows = json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"n", row.n}, {"statistic", row.max_abs_log_ratio_over_n}, {"cylinders", row.cylinders}});
  r.data = {{"depth", p.gibbs_depth},
            {"rows", rows},
            {"decreasing", decreasing},
            {"kamae_errors",
             {{"[00]", e00}, {"[01^a0]", e010}, {"[1^a0]", e10}, {"01bar", e01bar}, {"1bar", e1bar}}}};
  return r;
}

CriterionResult three_rates(const AcceptanceParams& p) {
  CriterionResult r{8, "three growth rates"};
  auto dom = three_rates_dominance(p.example_n);
  auto rep = three_rates_run(p.example_n);
  r.pass = rep.closed_form_ok && dom.partition_ok && rep.log2_u3_equals_phi && dom.directions_ok;
  std::ostringstream d;
  d << "closed form " << (rep.closed_form_ok ? "exact" : "mismatch") << " for n <= " << p.example_n << "; J = {1},{2},{3,4} "
    << (dom.partition_ok ? "at every n" : "fails") << "; log2|P_n U_3| = phi(n) "
    << (rep.log2_u3_equals_phi ? "holds" : "fails");
  if (rep.first_log2_mismatch) d << " first at n = " << *rep.first_log2_mismatch;
  d << " (exact: |P_n U_3| = 2^(phi+2) - 2 " << (rep.u3_identity ? "holds" : "fails") << ")";
  d << "; V_1, V_2 within C r^k " << (dom.directions_ok ? "yes" : "no");
  r.detail = d.str();
  json steps = json::array();
  for (const auto& s : rep.steps)
    steps.push_back({{"n", s.n}, {"phi", s.phi}, {"norm_u3", to_json(s.norm_u3)}, {"log2_u3", s.log2_u3}});
  r.data = {{"N", p.example_n},
            {"closed_form", rep.closed_form_ok},
            {"partition", dom.partition_ok},
            {"log2_equals_phi", rep.log2_u3_equals_phi},
            {"u3_identity", rep.u3_identity},
            {"directions", dom.directions_ok},
            {"V3_equals_V1", dom.V3_equals_V1},
            {"steps", steps}};
  return r;
}

CriterionResult property_suite(const AcceptanceParams& p) {
  CriterionResult r{9, "metric and class properties"};
  auto rep = metric_property_suite(p.property_samples, p.seed);
  r.pass = rep.ok();
  auto tally = [](const PropertyTally& t) {
    return json{{"checked", t.checked}, {"failed", t.failed}, {"first_failure", t.first_failure}};
  };
  std::ostringstream d;
  d << rep.samples << " samples (seed " << p.seed << "); failures: contraction " << rep.contraction.failed << "/"
    << rep.contraction.checked << ", sandwich " << rep.sandwich.failed << "/" << rep.sandwich.checked
    << ", composition " << rep.composition.failed << "/" << rep.composition.checked << ", closure (a)-(c) "
    << rep.closure_abc.failed << "/" << rep.closure_abc.checked << ", closure (d)-(f) " << rep.closure_def.failed << "/"
    << rep.closure_def.checked;
  r.detail = d.str();
  r.data = {{"seed", p.seed},
            {"samples", rep.samples},
            {"contraction", tally(rep.contraction)},
            {"sandwich", tally(rep.sandwich)},
            {"composition", tally(rep.composition)},
            {"closure_abc", tally(rep.closure_abc)},
            {"closure_def", tally(rep.closure_def)}};
  return r;
}

CriterionResult dominance_bound(const AcceptanceParams& p) {
  CriterionResult r{10, "dominance bound on regular words"};
  std::mt19937_64 rng(p.seed);
  std::size_t checks = 0, failures = 0, certified = 0;
  double max_lhs = 0, min_rhs = std::numeric_limits<double>::infinity();
  std::string witness;
  json words = json::array();
  for (std::size_t s = 1; s <= p.regular_words; ++s) {
    std::uint64_t word_seed = p.seed + s;
    auto w = random_regular_word(word_seed, 300, 4);
    auto cert = condition_c_certificate(w, 0);
    certified += cert.ok();
    DominanceOptions opt;
    std::uniform_int_distribution<int> val(1, 9);
    for (int t = 0; t < 5; ++t) {
      ExactMatrix X(7, 1);
      for (std::size_t i = 0; i < 7; ++i) X[i] = rational(val(rng), val(rng));
      opt.probes.push_back(X);
    }
    auto seq = word_sequence(beta_generators(), w);
    auto rep = dominance_diagnostics(seq, cert.cuts, rational(3, 4), cert.Lambda_measured, cert.cuts.last() - 1, opt);
    for (const auto& st : rep.steps)
      for (const auto& pr : st.probes) {
        ++checks;
        max_lhs = std::max(max_lhs, pr.lhs);
        min_rhs = std::min(min_rhs, pr.rhs);
        if (!pr.ok) {
          ++failures;
          if (witness.empty()) witness = "seed " + std::to_string(word_seed) + " n " + std::to_string(st.n);
        }
      }
    words.push_back({{"seed", word_seed},
                     {"length", w.size()},
                     {"certificate", cert.ok()},
                     {"Lambda", to_json(cert.Lambda_measured)},
                     {"H", rep.H},
                     {"bound_ok", rep.bound_ok}});
  }
  r.pass = failures == 0 && certified == p.regular_words && checks > 0;
  std::ostringstream d;
  d << p.regular_words << " words, " << certified << " certified; " << checks << " probe checks, " << failures
    << " failures; max lhs " << fmt_short(max_lhs) << ", min rhs " << fmt_short(min_rhs);
  if (!witness.empty()) d << "; first failure " << witness;
  r.detail = d.str();
  r.data = {{"seed", p.seed}, {"words", words}, {"checks", checks}, {"failures", failures}};
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceParams& p) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = golden_suite(); break;
    case 2: r = family_bounds(p); break;
    case 3: r = doubling_exhaustion(p); break;
    case 4: r = concatenations(p); break;
    case 5: r = beta_machinery(p); break;
    case 6: r = constant_limits(p); break;
    case 7: r = weak_gibbs(p); break;
    case 8: r = three_rates(p); break;
    case 9: r = property_suite(p); break;
    case 10: r = dominance_bound(p); break;
    default: throw std::invalid_argument("criterion id must be 1.." + std::to_string(kCriteria));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg, const std::vector<int>& only) {
  AcceptanceParams p = resolve_params(cfg);
  std::vector<int> ids = only;
  if (ids.empty())
    for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, p));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail;
  return s.str();
}

json acceptance_json(const AcceptanceParams& p, const std::vector<CriterionResult>& results) {
  json crit = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.pass;
    crit.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
  }
  return {{"profile", p.profile},
          {"parameters",
           {{"kmax", p.kmax},
            {"depth", p.depth},
            {"run_cap", p.run_cap},
            {"gibbs_n", p.gibbs_n},
            {"gibbs_depth", p.gibbs_depth},
            {"seed", p.seed}}},
          {"passed", passed},
          {"total", results.size()},
          {"criteria", crit}};
}

}  // namespace mpl::cli
