// waveid: command-line front end.
//
// Exit codes: 0 ok, 1 residual above tolerance, 2 invalid configuration, 3 numerical failure.
// Every nonzero exit writes a one-line JSON diagnostic to stderr.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "waveid/config.hpp"
#include "waveid/errors.hpp"
#include "waveid/fields.hpp"
#include "waveid/green.hpp"
#include "waveid/kernels.hpp"
#include "waveid/ndgeom.hpp"
#include "waveid/quadrature.hpp"
#include "waveid/sidf.hpp"

using nlohmann::json;
using namespace waveid;

namespace {

enum class Format { json, csv };

struct RunConfig {
  std::string command;
  std::string target;  // verify suite or green action
  int dim = 3;
  std::string bias = "retarded";
  std::optional<double> tol;
  std::string field = "default";
  std::string quad;
  std::string out;
  std::string format;
  std::optional<double> r, r1, r2, h, tau;
  std::string kind;
  double t_start = 0.0, t_stop = 0.0, t_step = 0.05;
  bool t_range_given = false;
};

// Exit status and payload of a finished command.
struct Result {
  int code = 0;
  json report;
  std::string csv;  // used when the format is csv
  json violation;   // first violating case, for exit 1
};

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

std::string number(double v) {
  // Shortest round-trip text, same as the JSON writer.
  return json(v).dump();
}

// --- shared setup --------------------------------------------------------------------------

struct Problem {
  Dimension n;
  Bias bias;
  QuadratureSpec spec;
  GaussianParams params;
  SidfContext ctx;
};

Bias signed_bias(const RunConfig& c) {
  const Bias b = parse_bias(c.bias);
  if (b == Bias::unbiased) throw ConfigError("--bias unbiased is not allowed for this command");
  return b;
}

QuadratureSpec load_spec(const RunConfig& c, int n) {
  QuadratureSpec s;
  if (!c.quad.empty()) s = quadrature_spec_from_json(read_json_file(c.quad));
  s.validate(n);
  return s;
}

Problem load_problem(const RunConfig& c) {
  Problem p{Dimension(c.dim), signed_bias(c), load_spec(c, c.dim), {}, {}};
  p.ctx = SidfContext{0.0, p.bias, std::vector<double>(c.dim, 0.0)};
  if (c.field == "default") {
    p.params = default_gaussian_params(c.dim, p.ctx.t0, p.ctx.x_star);
  } else {
    p.params = gaussian_params_from_json(read_json_file(c.field));
    if (static_cast<int>(p.params.x_center.size()) != c.dim)
      throw ConfigError("field x_center has " + std::to_string(p.params.x_center.size()) +
                        " components, --dim is " + std::to_string(c.dim));
  }
  p.ctx.validate(c.dim);
  return p;
}

json header(const RunConfig& c, const Problem& p) {
  return {{"command", c.command + (c.target.empty() ? "" : " " + c.target)},
          {"dimension", c.dim},
          {"lambda", lambda_of(p.bias)},
          {"field", to_json(p.params)},
          {"quadrature", to_json(p.spec, c.dim)}};
}

// --- verify --------------------------------------------------------------------------------

struct Case {
  json description;
  double residual;
  double tolerance;
};

Result finish_verify(json report, const std::vector<Case>& cases) {
  Result res;
  json arr = json::array();
  std::ostringstream csv;
  csv << "case,residual,tolerance,pass\n";
  std::size_t i = 0;
  for (const auto& k : cases) {
    const bool ok = std::isfinite(k.residual) && k.residual <= k.tolerance;
    json e = k.description;
    e["residual"] = k.residual;
    e["tolerance"] = k.tolerance;
    e["pass"] = ok;
    if (!ok && res.code == 0) {
      res.code = 1;
      res.violation = e;
    }
    arr.push_back(e);
    csv << i++ << ',' << number(k.residual) << ',' << number(k.tolerance) << ',' << (ok ? 1 : 0) << '\n';
  }
  report["cases"] = arr;
  report["pass"] = res.code == 0;
  if (res.code) report["first_violation"] = res.violation;
  res.report = std::move(report);
  res.csv = csv.str();
  return res;
}

Result verify_harmonicity(const RunConfig& c) {
  const Dimension n(c.dim);
  const double tol = c.tol.value_or(1e-4);
  const double h = c.h.value_or(1e-4);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(0.5, 3.0);
  auto f = [n](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return eta(n, std::sqrt(s));
  };
  std::vector<Case> cases;
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x(c.dim);
    double s = 0.0;
    for (double& v : x) {
      v = nd(rng);
      s += v * v;
    }
    const double r = ur(rng);
    for (double& v : x) v *= r / std::sqrt(s);
    cases.push_back({{{"x", x}}, std::fabs(fd_laplacian(f, x, h)), tol});
  }
  return finish_verify({{"command", "verify harmonicity"}, {"dimension", c.dim}, {"h", h}}, cases);
}

Result verify_flux(const RunConfig& c) {
  const QuadratureSpec spec = load_spec(c, c.dim);
  const double r = c.r.value_or(1.0);
  const double v = flux_normalization(Dimension(c.dim), r, spec);
  json rep = {{"command", "verify flux"}, {"dimension", c.dim}, {"quadrature", to_json(spec, c.dim)},
              {"value", v}};
  return finish_verify(rep, {{{{"r", r}}, std::fabs(v + 1.0), c.tol.value_or(1e-8)}});
}

Result verify_tautology(const RunConfig& c, bool symmetric) {
  const Problem p = load_problem(c);
  const GaussianField field(p.params);
  const double r1 = c.r1.value_or(0.5), r2 = c.r2.value_or(2.5);
  const auto t = symmetric ? symmetric_tautology(field, p.ctx, p.n, r1, r2, p.spec)
                           : layer_tautology(field, p.ctx, p.n, r1, r2, p.spec);
  json rep = header(c, p);
  rep["omega"] = t.omega;
  rep["omega3_psi_eta"] = t.omega3_psi_eta;
  rep["scale"] = t.scale;
  // tolerance is relative to the sum of term magnitudes
  return finish_verify(rep, {{{{"r1", r1}, {"r2", r2}}, t.residual, c.tol.value_or(1e-6) * t.scale}});
}

Result verify_ball(const RunConfig& c) {
  const Problem p = load_problem(c);
  const GaussianField field(p.params);
  const double r2 = c.r2.value_or(3.0);
  const SidfReport s = ball_sidf_report(field, p.ctx, p.n, r2, p.spec, true);
  json rep = header(c, p);
  rep["report"] = to_json(s);
  const double tol = c.tol.value_or(1e-5) * std::fabs(s.lhs_value) + 1e-8;
  return finish_verify(rep, {{{{"r2", r2}}, std::fabs(s.residual), tol}});
}

Result verify_sidf(const RunConfig& c) {
  const Problem p = load_problem(c);
  const GaussianField field(p.params);
  const SidfReport s = boundary_free_sidf(field, p.ctx, p.n, p.spec, true);
  json rep = header(c, p);
  rep["report"] = to_json(s);
  return finish_verify(rep, {{json::object(), std::fabs(s.residual), c.tol.value_or(1e-4)}});
}

Result verify_aposteriori(const RunConfig& c) {
  const Problem p = load_problem(c);
  const GaussianField field(p.params);
  const std::string kname = !c.kind.empty() ? c.kind : (c.dim == 3 ? "recover_f_3d" : "full_c26_1d");
  const AposterioriKind kind = parse_aposteriori_kind(kname);
  const double h = c.h.value_or(kind == AposterioriKind::recover_f_3d ? 1e-2 : 1e-3);
  const double res = aposteriori_residual(kind, field, p.ctx, h, p.spec);
  // recover_f_3d is judged relative to |f(t0, x*)|
  double tol;
  if (kind == AposterioriKind::recover_f_3d)
    tol = c.tol.value_or(0.05) * std::fabs(field.source(p.ctx.t0, p.ctx.x_star));
  else
    tol = c.tol.value_or(1e-3);
  json rep = header(c, p);
  rep["kind"] = aposteriori_kind_name(kind);
  rep["h"] = h;
  return finish_verify(rep, {{{{"kind", aposteriori_kind_name(kind)}}, res, tol}});
}

// --- other commands ------------------------------------------------------------------------

Result geom(const RunConfig& c) {
  const Dimension n(c.dim);
  Result r;
  r.report = {{"n", c.dim}, {"V", unit_ball_volume(n)}, {"S", unit_sphere_area(n)}, {"a", kernel_constant(n)}};
  r.csv = "n,V,S,a\n" + std::to_string(c.dim) + ',' + number(unit_ball_volume(n)) + ',' +
          number(unit_sphere_area(n)) + ',' + number(kernel_constant(n)) + '\n';
  return r;
}

Result green_eval(const RunConfig& c) {
  if (c.target != "eval") throw ConfigError("green: unknown action '" + c.target + "'");
  if (!c.tau || !c.r) throw ConfigError("green eval needs --tau and --r");
  const Bias b = signed_bias(c);
  const double v = green_closed_form(Dimension(c.dim), b, *c.tau, *c.r);
  Result res;
  res.report = {{"command", "green eval"}, {"dimension", c.dim}, {"lambda", lambda_of(b)},
                {"tau", *c.tau}, {"d", *c.r}, {"value", v}};
  res.csv = "tau,d,value\n" + number(*c.tau) + ',' + number(*c.r) + ',' + number(v) + '\n';
  return res;
}

Result dispersion(const RunConfig& c) {
  if (signed_bias(c) != Bias::retarded) throw ConfigError("dispersion: only --bias retarded is supported");
  if (c.dim < 1 || c.dim > 3) throw ConfigError("dispersion: --dim must be 1, 2 or 3");
  const QuadratureSpec spec = load_spec(c, c.dim);
  const double d = c.r.value_or(5.0);
  if (!(d > 0.0)) throw ConfigError("dispersion: --r must be positive");
  PulseSource pulse;
  pulse.emit_center.assign(c.dim, 0.0);
  std::vector<double> xs(c.dim, 0.0);
  xs[0] = d;
  const double t0 = c.t_range_given ? c.t_start : d - 2.0;
  const double t1 = c.t_range_given ? c.t_stop : d + 6.0;
  if (!(c.t_step > 0.0) || !(t1 >= t0)) throw ConfigError("dispersion: need t-stop >= t-start and t-step > 0");
  const auto count = static_cast<long>(std::floor((t1 - t0) / c.t_step + 1e-9)) + 1;
  if (count > 100000) throw ConfigError("dispersion: too many samples");
  std::vector<double> times;
  for (long i = 0; i < count; ++i) times.push_back(t0 + static_cast<double>(i) * c.t_step);

  const auto prof = dispersion_profile(Dimension(c.dim), pulse, xs, times, spec);
  Result res;
  std::ostringstream csv;
  csv << "t,value,reference\n";
  json rows = json::array();
  for (const auto& s : prof) {
    csv << number(s.t) << ',' << number(s.value) << ',' << (std::isnan(s.reference) ? "" : number(s.reference))
        << '\n';
    rows.push_back({{"t", s.t}, {"value", s.value},
                    {"reference", std::isnan(s.reference) ? json(nullptr) : json(s.reference)}});
  }
  res.csv = csv.str();
  res.report = {{"command", "dispersion"},
                {"dimension", c.dim},
                {"distance", d},
                {"pulse", {{"amplitude", pulse.amplitude}, {"sigma_t", pulse.sigma_t}, {"sigma_x", pulse.sigma_x}}},
                {"quadrature", to_json(spec, c.dim)},
                {"samples", rows}};
  if (c.dim == 1) res.report["reference_plateau"] = 0.5 * pulse.total_integral();
  return res;
}

Result sidf(const RunConfig& c) {
  const Problem p = load_problem(c);
  const GaussianField field(p.params);
  const SidfReport s = c.r2 ? ball_sidf_report(field, p.ctx, p.n, *c.r2, p.spec, true)
                            : boundary_free_sidf(field, p.ctx, p.n, p.spec, true);
  Result res;
  res.report = header(c, p);
  res.report["report"] = to_json(s);
  res.csv = "residual,refinement_delta\n" + number(s.residual) + ',' + number(s.refinement_delta) + '\n';
  return res;
}

Result dispatch(const RunConfig& c) {
  if (c.command == "geom") return geom(c);
  if (c.command == "green") return green_eval(c);
  if (c.command == "dispersion") return dispersion(c);
  if (c.command == "sidf") return sidf(c);
  if (c.target == "harmonicity") return verify_harmonicity(c);
  if (c.target == "flux") return verify_flux(c);
  if (c.target == "layer") return verify_tautology(c, false);
  if (c.target == "symmetric") return verify_tautology(c, true);
  if (c.target == "ball") return verify_ball(c);
  if (c.target == "sidf") return verify_sidf(c);
  if (c.target == "aposteriori") return verify_aposteriori(c);
  throw ConfigError("verify: unknown suite '" + c.target + "'");
}

void emit(const RunConfig& c, const Result& r) {
  const Format fmt = c.format.empty() ? (c.command == "dispersion" ? Format::csv : Format::json)
                                      : (c.format == "csv" ? Format::csv : Format::json);
  const std::string text = fmt == Format::csv ? r.csv : r.report.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(c.out, std::ios::binary);
  if (!os) throw ConfigError("cannot open output file '" + c.out + "'");
  os << text;
}

int fail(const Failure& f) {
  std::cerr << json{{"exit_code", f.code}, {"error", f.kind}, {"message", f.message}}.dump() << '\n';
  return f.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of integral solutions of the n-dimensional wave equation"};
  app.set_help_flag("--help", "print help");  // -h would shadow --h
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&c](CLI::App* s, bool field_opts) {
    s->set_help_flag("--help", "print help");
    s->add_option("--dim", c.dim, "spatial dimension")->capture_default_str();
    s->add_option("--out", c.out, "write the report here instead of stdout");
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    if (!field_opts) return;
    s->add_option("--bias", c.bias, "retarded or advanced")->capture_default_str();
    s->add_option("--tol", c.tol, "tolerance");
    s->add_option("--field", c.field, "field JSON path, or 'default'")->capture_default_str();
    s->add_option("--quad", c.quad, "quadrature JSON path");
    s->add_option("--r", c.r, "radius or distance");
    s->add_option("--r1", c.r1, "inner radius");
    s->add_option("--r2", c.r2, "outer radius");
    s->add_option("--h", c.h, "finite-difference step");
  };

  auto* g = app.add_subcommand("geom", "unit ball volume, sphere area and kernel constant");
  common(g, false);

  auto* v = app.add_subcommand("verify", "run a residual suite");
  v->add_option("suite", c.target, "harmonicity|flux|layer|symmetric|ball|sidf|aposteriori")->required();
  v->add_option("--kind", c.kind, "a-posteriori check: recover_f_3d|omega1_box_1d|full_c26_1d");
  common(v, true);

  auto* gr = app.add_subcommand("green", "pointwise Green function values");
  gr->add_option("action", c.target, "eval")->required();
  gr->add_option("--tau", c.tau, "observation time minus source time");
  common(gr, true);

  auto* d = app.add_subcommand("dispersion", "response profile to a short pulse (CSV)");
  common(d, true);
  auto* ts = d->add_option("--t-start", c.t_start, "first sample time");
  auto* te = d->add_option("--t-stop", c.t_stop, "last sample time");
  ts->needs(te);
  te->needs(ts);
  d->add_option("--t-step", c.t_step, "sample spacing")->capture_default_str();

  auto* s = app.add_subcommand("sidf", "full SIDF report; --r2 selects the ball form");
  common(s, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail({2, "config", e.what()});
  }
  c.command = app.get_subcommands().front()->get_name();
  c.t_range_given = ts->count() > 0;

  try {
    const Result r = dispatch(c);
    emit(c, r);
    if (r.code == 1)
      return fail({1, "tolerance", "residual above tolerance: " + r.violation.dump()});
    return 0;
  } catch (const IntegrationError& e) {
    return fail({3, "numerical", e.what()});
  } catch (const BudgetError& e) {
    return fail({3, "numerical", e.what()});
  } catch (const std::invalid_argument& e) {
    return fail({2, "config", e.what()});
  } catch (const std::domain_error& e) {
    return fail({2, "config", e.what()});
  } catch (const std::exception& e) {
    return fail({3, "numerical", e.what()});
  }
}
