#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace mpl::cli {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

json manifest(const std::string& subcommand, const Globals& g, const json& parameters) {
  return {{"tool", "matprodlab"},
          {"version", kVersion},
          {"subcommand", subcommand},
          {"parameters", parameters},
          {"seed", g.seed},
          {"kmax", g.kmax ? json(*g.kmax) : json(nullptr)},
          {"depth", g.depth ? json(*g.depth) : json(nullptr)},
          {"outputs", {{"json", g.json_path}, {"csv", g.csv_path}, {"dot", g.dot_path}}}};
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

}  // namespace

void emit_json(const Globals& g, const json& report) { write_text(g.json_path, report.dump(2) + "\n"); }

void emit_csv(const Globals& g, const std::string& text) { write_text(g.csv_path, text); }

void emit_dot(const Globals& g, const std::string& text) { write_text(g.dot_path, text); }

void say(const Globals& g, const std::string& line) {
  if (g.json_path == "-" || g.csv_path == "-" || g.dot_path == "-") {
    std::cerr << line << "\n";
    return;
  }
  std::cout << line << "\n";
}

json load_json(const std::string& path) {
  try {
    return load_json_file(path);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

ExactMatrix load_matrix(const std::string& path) {
  json j = load_json(path);
  try {
    return matrix_from_json(j);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

ExactMatrix load_vector(const std::string& path) {
  json j = load_json(path);
  try {
    return vector_from_json(j);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

}  // namespace mpl::cli
