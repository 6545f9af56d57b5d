#include "acceptance.hpp"
#include "output.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using namespace mpl::cli;
  CLI::App app{"acceptance criteria, one line per criterion"};
  AcceptanceConfig cfg;
  std::vector<int> only;
  std::string json_path;
  bool timing = false;
  app.add_option("--profile", cfg.profile, "quick or full (default full)")->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--seed", cfg.seed, "seed for randomized criteria (default 2024)");
  app.add_option("--kmax", cfg.kmax, "override kmax");
  app.add_option("--depth", cfg.depth, "override depth");
  app.add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, kCriteria));
  app.add_option("--json", json_path, "write the JSON report to this path");
  app.add_flag("--timing", timing, "print the runtime of each criterion");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    auto params = resolve_params(cfg);
    if (only.empty())
      for (int i = 1; i <= kCriteria; ++i) only.push_back(i);
    std::vector<CriterionResult> results;
    std::size_t passed = 0;
    for (int id : only) {
      results.push_back(run_criterion(id, params));
      passed += results.back().pass;
      std::cout << format_line(results.back());
      if (timing) std::cout << " [" << fmt_short(results.back().seconds) << " s]";
      std::cout << std::endl;
    }
    std::cout << "summary: " << passed << "/" << results.size() << " criteria pass (profile " << params.profile << ")"
              << std::endl;
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      out << acceptance_json(params, results).dump(2) << "\n";
    }
    return passed == results.size() ? kPass : kVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
