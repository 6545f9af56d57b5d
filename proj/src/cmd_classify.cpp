#include "commands.hpp"

#include <matprodlab/hclass.hpp>
#include <matprodlab/projective.hpp>

#include <sstream>

namespace mpl::cli {

namespace {

json log_value_json(const ExtendedLogValue& v) {
  if (!v.finite) return {{"finite", false}};
  return {{"finite", true}, {"exp", to_json(v.ratio)}, {"value", v.value()}};
}

std::string log_value_text(const ExtendedLogValue& v) {
  if (!v.finite) return "inf";
  return "log(" + to_string(v.ratio) + ") = " + fmt17(v.value());
}

}  // namespace

void add_classify(CLI::App& app, Globals& g, int& rc) {
  auto* cmd = app.add_subcommand("classify", "H1/H2/H3 profile and contraction data of a nonnegative matrix");
  auto matrix = std::make_shared<std::string>();
  auto Lambda = std::make_shared<std::string>();
  auto lambda = std::make_shared<std::string>();
  auto need_h1 = std::make_shared<bool>(false);
  cmd->add_option("--matrix", *matrix, "matrix JSON file")->required();
  cmd->add_option("--Lambda", *Lambda, "require membership in H2(Lambda)");
  cmd->add_option("--lambda", *lambda, "require membership in H3(lambda)");
  cmd->add_flag("--require-h1", *need_h1, "require membership in H1");
  cmd->callback([&g, &rc, matrix, Lambda, lambda, need_h1] {
    ExactMatrix a = load_matrix(*matrix);
    if (a.is_zero_matrix()) throw UsageError("the zero matrix has no class profile");
    LambdaWitness wit;
    HClassProfile prof{in_H1(a), min_lambda(a, &wit), min_Lambda(a), col_pattern_count(a)};
    auto h = hypothesis_H(a);
    auto delta = delta_coeff(a);
    bool ok = true;
    json checks = json::object();
    if (*need_h1) {
      checks["H1"] = prof.in_H1;
      ok = ok && prof.in_H1;
    }
    try {
      if (!Lambda->empty()) {
        bool in = in_H2(a, parse_rational(*Lambda));
        checks["H2"] = in;
        ok = ok && in;
      }
      if (!lambda->empty()) {
        bool in = in_H3(a, parse_rational(*lambda));
        checks["H3"] = in;
        ok = ok && in;
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("bad bound: ") + e.what());
    }
    json cols = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(column_support(a, j).str());
    json report = {{"manifest", manifest("classify", g, {{"matrix", *matrix}})},
                   {"rows", a.rows()},
                   {"cols", a.cols()},
                   {"in_H1", prof.in_H1},
                   {"lambda_min", to_json(prof.lambda_min)},
                   {"Lambda_min", to_json(prof.Lambda_min)},
                   {"col_patterns", prof.col_patterns},
                   {"column_supports", cols},
                   {"hypothesis_H", h.has_value()},
                   {"delta", log_value_json(delta)},
                   {"tau", tau(a)},
                   {"checks", checks},
                   {"pass", ok}};
    std::ostringstream s;
    s << "H1 " << (prof.in_H1 ? "yes" : "no") << "; min Lambda " << prof.Lambda_min << "; min lambda "
      << prof.lambda_min << "; column patterns " << prof.col_patterns << "; (H) " << (h ? "holds" : "fails")
      << "; delta " << log_value_text(delta) << "; tau " << fmt17(tau(a));
    say(g, s.str());
    emit_json(g, report);
    rc = ok ? kPass : kVerificationFailure;
  });
}

void add_projdist(CLI::App& app, Globals& g, int& rc) {
  auto* cmd = app.add_subcommand("projdist", "Hilbert projective distance between two nonnegative vectors");
  auto x = std::make_shared<std::string>();
  auto y = std::make_shared<std::string>();
  cmd->add_option("--x", *x, "first vector JSON file")->required();
  cmd->add_option("--y", *y, "second vector JSON file")->required();
  cmd->callback([&g, &rc, x, y] {
    ExactMatrix u = load_vector(*x), v = load_vector(*y);
    if (u.rows() != v.rows()) throw UsageError("vectors have different lengths");
    if (u.is_zero_matrix() || v.is_zero_matrix()) throw UsageError("vectors must be nonzero");
    auto d = proj_distance(u, v);
    json report = {{"manifest", manifest("projdist", g, {{"x", *x}, {"y", *y}})},
                   {"distance", log_value_json(d)},
                   {"same_support", support_pattern(u) == support_pattern(v)}};
    say(g, "delta " + log_value_text(d));
    emit_json(g, report);
    rc = kPass;
  });
}

}  // namespace mpl::cli
