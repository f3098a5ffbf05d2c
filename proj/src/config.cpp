#include "waveid/config.hpp"

#include <fstream>
#include <set>

#include "waveid/errors.hpp"

namespace waveid {

using nlohmann::json;

namespace {

double number_at(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

int integer_at(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return j.at(key).get<int>();
}

void reject_unknown(const json& j, const std::set<std::string>& known, const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError(std::string(what) + ": unknown key '" + it.key() + "'");
}

}  // namespace

GaussianParams gaussian_params_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("field config must be a JSON object");
  reject_unknown(j, {"type", "amplitude", "alpha", "beta", "t_center", "x_center"}, "field config");
  if (!j.contains("type") || j.at("type") != "gaussian")
    throw ConfigError("field config: only type \"gaussian\" is supported");
  if (!j.contains("x_center") || !j.at("x_center").is_array())
    throw ConfigError("field config: 'x_center' array is required");
  GaussianParams p;
  p.amplitude = number_at(j, "amplitude", p.amplitude);
  p.alpha = number_at(j, "alpha", p.alpha);
  p.beta = number_at(j, "beta", p.beta);
  p.t_center = number_at(j, "t_center", p.t_center);
  for (const json& c : j.at("x_center")) {
    if (!c.is_number()) throw ConfigError("field config: 'x_center' entries must be numbers");
    p.x_center.push_back(c.get<double>());
  }
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) throw ConfigError("field config: alpha and beta must be positive");
  return p;
}

json to_json(const GaussianParams& p) {
  return {{"type", "gaussian"}, {"amplitude", p.amplitude}, {"alpha", p.alpha},
          {"beta", p.beta},     {"t_center", p.t_center},   {"x_center", p.x_center}};
}

QuadratureSpec quadrature_spec_from_json(const json& j, QuadratureSpec s) {
  if (!j.is_object()) throw ConfigError("quadrature config must be a JSON object");
  reject_unknown(j,
                 {"radial_panels", "radial_order", "angular_order", "split_radius", "tail_cutoff",
                  "rel_tol", "graded_levels", "execution"},
                 "quadrature config");
  s.radial_panels = integer_at(j, "radial_panels", s.radial_panels);
  s.radial_order = integer_at(j, "radial_order", s.radial_order);
  s.angular_order = integer_at(j, "angular_order", s.angular_order);
  s.graded_levels = integer_at(j, "graded_levels", s.graded_levels);
  s.split_radius = number_at(j, "split_radius", s.split_radius);
  s.tail_cutoff = number_at(j, "tail_cutoff", s.tail_cutoff);
  s.rel_tol = number_at(j, "rel_tol", s.rel_tol);
  if (j.contains("execution")) {
    const std::string e = j.at("execution").get<std::string>();
    if (e == "serial") s.execution = Execution::serial;
    else if (e == "parallel") s.execution = Execution::parallel;
    else throw ConfigError("quadrature config: execution must be serial|parallel");
  }
  return s;
}

json to_json(const QuadratureSpec& s, int n) {
  return {{"radial_panels", s.radial_panels},
          {"radial_order", s.radial_order},
          {"angular_order", s.resolved_angular_order(n)},
          {"split_radius", s.split_radius},
          {"tail_cutoff", s.tail_cutoff},
          {"rel_tol", s.rel_tol},
          {"graded_levels", s.graded_levels}};
}

json to_json(const SidfReport& r) {
  json j;
  j["form"] = r.kind == SidfKind::ball ? "ball" : "space";
  j["dimension"] = r.dimension;
  j["lambda"] = r.lambda;
  j["t0"] = r.t0;
  j["x_star"] = r.x_star;
  if (r.kind == SidfKind::ball) j["r2"] = r.r2;
  j["lhs_value"] = r.lhs_value;
  for (const auto& [a, v] : r.omega) j["omega_" + std::to_string(a)] = v;
  j["surface_terms"] = json::object();
  for (const auto& [k, v] : r.surface_terms) j["surface_terms"][k] = v;
  j["residual"] = r.residual;
  j["refinement_delta"] = r.refinement_delta;
  j["wall_time_seconds"] = r.wall_time_seconds;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace waveid
