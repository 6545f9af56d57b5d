#include "acceptance.hpp"
#include "commands.hpp"

#include <matprodlab/langw.hpp>

#include <sstream>

namespace mpl::cli {

namespace {

struct CheckOutcome {
  bool pass = false;
  std::string summary;
  json data = json::object();
};

CheckOutcome from_criterion(const CriterionResult& r) { return {r.pass, format_line(r), r.data}; }

CheckOutcome key_lemma_check(const Globals& g) {
  auto sweep = key_lemma_sweep(200, std::min<std::size_t>(g.kmax_or(4), 8), g.seed);
  auto prop = key_lemma_propagation();
  CheckOutcome o;
  o.pass = sweep.ok() && prop.ok();
  std::ostringstream s;
  s << "key properties on " << sweep.samples << " random concatenations: " << sweep.failures << " failures; "
    << "one-step propagation over " << prop.qualifying << "/" << prop.tuples << " tuples: "
    << prop.left_failures + prop.right_failures << " failures";
  if (sweep.witness) s << "; witness " << sweep.witness->substr(0, 40);
  o.summary = s.str();
  o.data = {{"samples", sweep.samples},
            {"failures", sweep.failures},
            {"tuples", prop.tuples},
            {"qualifying", prop.qualifying},
            {"left_failures", prop.left_failures},
            {"right_failures", prop.right_failures}};
  return o;
}

CheckOutcome support_class_check() {
  auto g1 = build_gamma1();
  auto rep = verify_support_classes(g1);
  CheckOutcome o;
  o.pass = rep.ok();
  std::ostringstream s;
  s << "Gamma1: " << g1.vertices.size() << " classes, V1 " << rep.v1_count << ", V2 " << rep.v2_count
    << "; Delta(V2) = T2 " << (rep.v2_is_t2 ? "yes" : "no") << "; parts (a)-(e) " << (rep.ok() ? "hold" : "fail");
  if (!rep.witnesses.empty()) s << "; witness " << rep.witnesses.front();
  o.summary = s.str();
  json v2 = json::array();
  for (auto m : g1.v2_supports()) v2.push_back(mask_string(m));
  o.data = {{"vertices", g1.vertices.size()},
            {"V1", rep.v1_count},
            {"V2", rep.v2_count},
            {"V2_supports", v2},
            {"v2_is_t2", rep.v2_is_t2},
            {"part_a", rep.part_a},
            {"part_b", rep.part_b},
            {"part_c", rep.part_c},
            {"part_d", rep.part_d},
            {"part_e", rep.part_e},
            {"witnesses", rep.witnesses}};
  return o;
}

// Rows 1 and 5 of A(w) never vanish; the other rows are reported for reference.
CheckOutcome row_check() {
  CheckOutcome o;
  o.pass = true;
  json rows = json::array();
  for (std::size_t j = 0; j < kDim; ++j) {
    auto r = row_nonvanishing_check(j);
    bool required = j == 0 || j == 4;
    if (required) o.pass = o.pass && !r.zero_reachable;
    rows.push_back({{"row", j + 1},
                    {"required", required},
                    {"classes", r.classes.size()},
                    {"zero_reachable", r.zero_reachable}});
  }
  auto h = head_constants();
  o.summary = std::string("rows 1 and 5 of A(w) ") + (o.pass ? "never vanish" : "can vanish") +
              "; head constants Lambda_0 = " + to_string(h.Lambda0) + ", lambda_0 = " + to_string(h.lambda0);
  o.data = {{"rows", rows}, {"Lambda0", to_json(h.Lambda0)}, {"lambda0", to_json(h.lambda0)}};
  return o;
}

}  // namespace

void add_langw(CLI::App& app, Globals& g, int& rc) {
  auto* cmd = app.add_subcommand("langw", "the language W and its uniform bounds");
  cmd->require_subcommand(1);

  auto* verify = cmd->add_subcommand("verify", "run one verification on W");
  auto check = std::make_shared<std::string>();
  verify->add_option("--check", *check, "which verification")
      ->required()
      ->check(CLI::IsMember({"golden", "family-bounds", "concatenations", "key-lemma", "support-classes", "doubling",
                             "rows"}));
  verify->callback([&g, &rc, check] {
    AcceptanceConfig cfg;
    cfg.seed = g.seed;
    cfg.kmax = g.kmax_or(64);
    auto p = resolve_params(cfg);
    p.run_cap = std::min<std::size_t>(p.kmax, 16);
    CheckOutcome o;
    if (*check == "golden") o = from_criterion(run_criterion(1, p));
    else if (*check == "family-bounds") o = from_criterion(run_criterion(2, p));
    else if (*check == "concatenations") o = from_criterion(run_criterion(4, p));
    else if (*check == "doubling") o = from_criterion(run_criterion(3, p));
    else if (*check == "key-lemma") o = key_lemma_check(g);
    else if (*check == "support-classes") o = support_class_check();
    else o = row_check();
    say(g, o.summary);
    emit_json(g, {{"manifest", manifest("langw verify", g, {{"check", *check}, {"kmax", p.kmax}})},
                  {"pass", o.pass},
                  {"summary", o.summary},
                  {"data", o.data}});
    rc = o.pass ? kPass : kVerificationFailure;
  });

  auto* dec = cmd->add_subcommand("decompose", "right-to-left decomposition of a word into W-words");
  auto word = std::make_shared<std::string>();
  dec->add_option("--word", *word, "word over {0,1,2}")->required();
  dec->callback([&g, &rc, word] {
    for (char c : *word)
      if (c < '0' || c > '2') throw UsageError("word digits must be 0, 1 or 2");
    auto d = w_decompose(*word);
    json body = json::array();
    std::ostringstream s;
    s << "head '" << d.head << "' (" << to_string(d.head_kind) << ")";
    for (const auto& w : d.body) {
      body.push_back({{"word", w.render()}, {"family", std::string(w_families[w.family].tag)}, {"k", w.k}});
      s << " | " << w.render();
    }
    say(g, s.str());
    emit_json(g, {{"manifest", manifest("langw decompose", g, {{"word", *word}})},
                  {"head", d.head},
                  {"head_kind", to_string(d.head_kind)},
                  {"body", body}});
    rc = kPass;
  });
}

void add_graphs(CLI::App& app, Globals& g, int& rc) {
  auto* cmd = app.add_subcommand("graphs", "support graphs Gamma1 and Gamma2 with DOT export");
  auto which = std::make_shared<std::string>("gamma2");
  cmd->add_option("--which", *which, "gamma1 or gamma2")->check(CLI::IsMember({"gamma1", "gamma2"}));
  cmd->callback([&g, &rc, which] {
    bool ok;
    json report = {{"manifest", manifest("graphs", g, {{"which", *which}})}};
    std::string dot;
    std::ostringstream s;
    if (*which == "gamma1") {
      auto g1 = build_gamma1();
      auto rep = verify_support_classes(g1);
      ok = rep.ok() && g1.violations.empty();
      dot = gamma1_dot(g1);
      json verts = json::array();
      for (std::size_t v = 0; v < g1.vertices.size(); ++v)
        verts.push_back({{"label", g1.label(v)}, {"support", mask_string(g1.vertices[v].support)},
                         {"in_V2", g1.vertices[v].in_V2}});
      report["vertices"] = verts;
      report["edges"] = g1.edges;
      s << "Gamma1: " << g1.vertices.size() << " vertices; checks " << (ok ? "hold" : "fail");
    } else {
      auto g2 = build_gamma2();
      auto checks = check_gamma2(g2);
      ok = checks.ok();
      dot = gamma2_dot(g2);
      json verts = json::array();
      for (std::size_t v = 0; v < g2.vertices.size(); ++v)
        verts.push_back({{"label", g2.label(v)}, {"in_2T2", static_cast<bool>(g2.red[v])}});
      report["vertices"] = verts;
      report["edges"] = g2.edges;
      report["starts"] = g2.starts;
      s << "Gamma2: " << g2.vertices.size() << " vertices; bounded by 2, dominated edges, 2T2 absorbing "
        << (ok ? "hold" : "fail");
    }
    report["pass"] = ok;
    say(g, s.str());
    emit_json(g, report);
    emit_dot(g, dot);
    rc = ok ? kPass : kVerificationFailure;
  });
}

}  // namespace mpl::cli
