#include "acceptance.hpp"
#include "commands.hpp"

#include <iostream>
#include <sstream>

namespace mpl::cli {

void add_verify_all(CLI::App& app, Globals& g, int& rc) {
  auto* cmd = app.add_subcommand("verify_all", "run every acceptance criterion");
  auto only = std::make_shared<std::vector<int>>();
  cmd->add_option("--only", *only, "restrict to these criterion ids")->check(CLI::Range(1, kCriteria));
  cmd->callback([&g, &rc, only] {
    AcceptanceConfig cfg;
    cfg.profile = g.profile;
    cfg.seed = g.seed;
    cfg.kmax = g.kmax;
    cfg.depth = g.depth;
    auto params = resolve_params(cfg);
    std::vector<CriterionResult> results;
    std::size_t passed = 0;
    for (int id : only->empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10} : *only) {
      results.push_back(run_criterion(id, params));
      passed += results.back().pass;
      say(g, format_line(results.back()));
    }
    std::ostringstream s;
    s << "summary: " << passed << "/" << results.size() << " criteria pass (profile " << params.profile << ")";
    say(g, s.str());
    json report = acceptance_json(params, results);
    report["manifest"] = manifest("verify_all", g, {{"profile", params.profile}, {"only", *only}});
    emit_json(g, report);
    rc = passed == results.size() ? kPass : kVerificationFailure;
  });
}

void add_global_flags(CLI::App& app, Globals& g) {
  app.add_option("--json", g.json_path, "write the JSON report to this path ('-' for stdout)");
  app.add_option("--csv", g.csv_path, "write the CSV table to this path ('-' for stdout)");
  app.add_option("--dot", g.dot_path, "write the DOT graph to this path ('-' for stdout)");
  app.add_option("--seed", g.seed, "seed for randomized sweeps (default 2024)");
  app.add_option("--kmax", g.kmax, "largest W-family parameter k");
  app.add_option("--depth", g.depth, "word depth");
  app.add_option("--profile", g.profile, "verify_all profile")->check(CLI::IsMember({"quick", "full"}));
}

void build_app(CLI::App& app, Globals& g, int& rc) {
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  add_global_flags(app, g);
  add_classify(app, g, rc);
  add_projdist(app, g, rc);
  add_condc(app, g, rc);
  add_measure(app, g, rc);
  add_kamae(app, g, rc);
  add_beta(app, g, rc);
  add_langw(app, g, rc);
  add_examples(app, g, rc);
  add_graphs(app, g, rc);
  add_verify_all(app, g, rc);
}

int dispatch(int argc, char** argv) {
  CLI::App app{"matprodlab: exact analysis of nonnegative matrix products", "matprodlab"};
  Globals g;
  int rc = kPass;
  build_app(app, g, rc);
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return rc;
}

}  // namespace mpl::cli
