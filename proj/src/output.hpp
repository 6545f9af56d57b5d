#pragma once

#include <matprodlab/json_io.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace mpl::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsage = 2 };

// Bad input files or parameters; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string json_path;  // "-" writes to stdout
  std::string csv_path;
  std::string dot_path;
  std::uint64_t seed = 2024;
  std::optional<std::size_t> kmax;
  std::optional<std::size_t> depth;
  std::string profile = "quick";

  std::size_t kmax_or(std::size_t fallback) const { return kmax.value_or(fallback); }
  std::size_t depth_or(std::size_t fallback) const { return depth.value_or(fallback); }
};

// Doubles with 17 significant digits.
std::string fmt17(double x);
// Doubles with 4 significant digits for one-line summaries.
std::string fmt_short(double x);

// Record of the subcommand and its parameters, embedded in every JSON report.
json manifest(const std::string& subcommand, const Globals& g, const json& parameters);

// Writes the report to --json when given; "-" means stdout.
void emit_json(const Globals& g, const json& report);
void emit_csv(const Globals& g, const std::string& text);
void emit_dot(const Globals& g, const std::string& text);

// Prints to stdout unless the JSON report goes there.
void say(const Globals& g, const std::string& line);

ExactMatrix load_matrix(const std::string& path);
ExactMatrix load_vector(const std::string& path);
json load_json(const std::string& path);

}  // namespace mpl::cli
