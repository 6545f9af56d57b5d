#pragma once

#include <matprodlab/json_io.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mpl::cli {

struct AcceptanceConfig {
  std::string profile = "full";  // quick | full
  std::uint64_t seed = 2024;
  std::optional<std::size_t> kmax;
  std::optional<std::size_t> depth;
};

// Parameters after applying the profile caps.
struct AcceptanceParams {
  std::size_t kmax = 64;
  std::size_t depth = 10;
  std::size_t run_cap = 16;
  std::size_t gibbs_n = 14;
  std::size_t gibbs_depth = 10;
  std::size_t additivity_depth = 8;
  std::size_t concat_samples = 1000;
  std::size_t property_samples = 10000;
  std::size_t regular_words = 20;
  std::size_t example_n = 60;
  std::uint64_t seed = 2024;
  std::string profile = "full";
};

AcceptanceParams resolve_params(const AcceptanceConfig& cfg);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  json data = json::object();
};

inline constexpr int kCriteria = 10;

CriterionResult run_criterion(int id, const AcceptanceParams& p);
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg, const std::vector<int>& only = {});
std::string format_line(const CriterionResult& r);
json acceptance_json(const AcceptanceParams& p, const std::vector<CriterionResult>& results);

}  // namespace mpl::cli
