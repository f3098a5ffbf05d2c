#include "waveid/sidf.hpp"

#include <array>
#include <chrono>
#include <cmath>

#include "waveid/errors.hpp"
#include "waveid/kernels.hpp"

namespace waveid {

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

void require_sidf_dim(int n) {
  if (n < 1 || n > 3) throw DomainError("integral identities are implemented for n in {1,2,3}");
}

void check_args(const ScalarField& field, const SidfContext& ctx, int n) {
  require_sidf_dim(n);
  if (field.dimension() != n) throw DomainError("field dimension differs from n");
  ctx.validate(n);
}

Integrand volume_integrand(int alpha, const ScalarField& field, const SidfContext& ctx, int n) {
  return [alpha, &field, &ctx, n](std::span<const double> x) {
    return k_integrand(alpha, field, ctx, Dimension(n), x);
  };
}

double timed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void SidfContext::validate(int n) const {
  if (bias == Bias::unbiased) throw DomainError("integral identities require lambda = -1 or +1");
  if (static_cast<int>(x_star.size()) != n) throw DomainError("x_star has wrong dimension");
  if (!std::isfinite(t0)) throw DomainError("t0 must be finite");
}

double recombine(const SidfReport& rep) {
  const double o0 = rep.omega.at(0), o1 = rep.omega.at(1);
  if (rep.kind == SidfKind::space) return rep.lhs_value + o0 + o1;
  const double mean = rep.surface_terms.at("psi_eta_mean_r2");
  return (rep.lhs_value - mean) + ((o0 + o1) + rep.omega.at(3));
}

double k_integrand(int alpha, const ScalarField& field, const SidfContext& ctx, Dimension n,
                   std::span<const double> x) {
  if (static_cast<int>(x.size()) != n || static_cast<int>(ctx.x_star.size()) != n)
    throw DomainError("k_integrand: dimension mismatch");
  const double r = distance(x, ctx.x_star);
  if (r == 0.0) throw SingularityError("k_integrand evaluated at x_star");
  const int lam = ctx.lambda();
  const double tb = ctx.t0 + lam * r;
  switch (alpha) {
    case 0: return -eta(n, r) * field.source(tb, x);
    case 1:
      if (n == 3) return 0.0;
      return lam * (n - 3) * zeta(n, r) * field.evaluate(DerivativeSelector::dt(), tb, x);
    case 2: {
      std::array<double, 3> xr{}, ge{}, gp{};
      for (int i = 0; i < n; ++i) xr[i] = x[i] - ctx.x_star[i];
      eta_gradient_into(n, std::span<const double>(xr.data(), n), std::span<double>(ge.data(), n));
      double value = 0.0, dt = 0.0;
      field.first_partials(tb, x, value, dt, std::span<double>(gp.data(), n));
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += ge[i] * (gp[i] + lam * xr[i] / r * dt);
      return s;
    }
    default: throw DomainError("k_integrand: alpha must be 0, 1 or 2");
  }
}

double surface_term_psi_eta(const ScalarField& field, const SidfContext& ctx, Dimension n,
                            double r, const QuadratureSpec& spec) {
  check_args(field, ctx, n);
  const double tb = ctx.t0 + ctx.lambda() * r;
  // Averaging deviations from one sample keeps the mean of a constant exact.
  std::vector<double> p0 = ctx.x_star;
  p0[0] += r;
  const double ref = field.evaluate(DerivativeSelector::value(), tb, p0);
  auto g = [&field, tb, ref](std::span<const double> x) {
    return field.evaluate(DerivativeSelector::value(), tb, x) - ref;
  };
  const double total = integrate_sphere_surface(n, g, r, ctx.x_star, spec);
  return ref + total / (unit_sphere_area(n) * std::pow(r, n - 1));
}

double surface_term_eta_psi(const ScalarField& field, const SidfContext& ctx, Dimension n,
                            double r, const QuadratureSpec& spec) {
  check_args(field, ctx, n);
  const int lam = ctx.lambda();
  const double tb = ctx.t0 + lam * r;
  const int dim = n;
  auto big_lambda = [&field, &ctx, tb, lam, r, dim](std::span<const double> x) {
    std::array<double, 3> gp{};
    double value = 0.0, dt = 0.0;
    field.first_partials(tb, x, value, dt, std::span<double>(gp.data(), dim));
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += (x[i] - ctx.x_star[i]) / r * gp[i];
    return s - lam * dt;
  };
  return eta(n, r) * integrate_sphere_surface(n, big_lambda, r, ctx.x_star, spec);
}

double space_radius(const ScalarField& field, const SidfContext& ctx, const QuadratureSpec& spec) {
  const auto env = field.envelope();
  if (!env) throw DomainError("whole-space integrals need a field with a Gaussian envelope");
  const double r = gaussian_cutoff_radius(distance(env->center, ctx.x_star), env->beta,
                                          spec.tail_cutoff);
  return std::max(r, 2.0 * spec.split_radius);
}

double omega(int alpha, const ScalarField& field, const SidfContext& ctx, Dimension n,
             const ShellDomain& dom, const QuadratureSpec& spec) {
  check_args(field, ctx, n);
  dom.validate(n);
  if (distance(dom.center, ctx.x_star) != 0.0)
    throw DomainError("omega: the domain must be centred at x_star");
  if (alpha == 3) {
    if (dom.is_unbounded()) return 0.0;
    const double outer = surface_term_eta_psi(field, ctx, n, dom.r2, spec);
    if (dom.is_ball()) return -outer;
    return surface_term_eta_psi(field, ctx, n, dom.r1, spec) - outer;
  }
  if (alpha < 0 || alpha > 3) throw DomainError("omega: alpha must lie in {0,1,2,3}");
  if (alpha == 1 && n == 3) return 0.0;
  const Integrand g = volume_integrand(alpha, field, ctx, n);
  if (dom.is_unbounded()) {
    if (!dom.is_ball()) throw DomainError("omega: exterior domains are not supported");
    return integrate_space(n, g, ctx.x_star, space_radius(field, ctx, spec), spec);
  }
  return integrate_shell(n, g, dom, spec);
}

double omega3_psi_eta(const ScalarField& field, const SidfContext& ctx, Dimension n, double r1,
                      double r2, const QuadratureSpec& spec) {
  return surface_term_psi_eta(field, ctx, n, r2, spec) -
         surface_term_psi_eta(field, ctx, n, r1, spec);
}

TautologyResult layer_tautology(const ScalarField& field, const SidfContext& ctx, Dimension n,
                                double r1, double r2, const QuadratureSpec& spec) {
  if (!(r1 > 0.0) || !(r2 > r1) || !std::isfinite(r2))
    throw DomainError("layer requires 0 < r1 < r2 < inf");
  const ShellDomain dom{r1, r2, ctx.x_star};
  TautologyResult res;
  double sum = 0.0;
  for (int a = 0; a < 4; ++a) {
    res.omega[a] = omega(a, field, ctx, n, dom, spec);
    sum += res.omega[a];
    res.scale += std::fabs(res.omega[a]);
  }
  res.residual = std::fabs(sum);
  return res;
}

TautologyResult symmetric_tautology(const ScalarField& field, const SidfContext& ctx, Dimension n,
                                    double r1, double r2, const QuadratureSpec& spec) {
  if (!(r1 > 0.0) || !(r2 > r1) || !std::isfinite(r2))
    throw DomainError("layer requires 0 < r1 < r2 < inf");
  const ShellDomain dom{r1, r2, ctx.x_star};
  TautologyResult res;
  for (int a : {0, 1, 3}) res.omega[a] = omega(a, field, ctx, n, dom, spec);
  res.omega3_psi_eta = omega3_psi_eta(field, ctx, n, r1, r2, spec);
  const double rhs = res.omega[0] + res.omega[1] + res.omega[3];
  res.residual = std::fabs(res.omega3_psi_eta - rhs);
  res.scale = std::fabs(res.omega3_psi_eta) + std::fabs(res.omega[0]) + std::fabs(res.omega[1]) +
              std::fabs(res.omega[3]);
  return res;
}

double layer_tautology_residual(const ScalarField& field, const SidfContext& ctx, Dimension n,
                                double r1, double r2, const QuadratureSpec& spec) {
  return layer_tautology(field, ctx, n, r1, r2, spec).residual;
}

double symmetric_tautology_residual(const ScalarField& field, const SidfContext& ctx,
                                    Dimension n, double r1, double r2, const QuadratureSpec& spec) {
  return symmetric_tautology(field, ctx, n, r1, r2, spec).residual;
}

namespace {

SidfReport ball_terms(const ScalarField& field, const SidfContext& ctx, Dimension n, double r2,
                      const QuadratureSpec& spec) {
  SidfReport rep;
  rep.kind = SidfKind::ball;
  rep.dimension = n;
  rep.lambda = ctx.lambda();
  rep.t0 = ctx.t0;
  rep.x_star = ctx.x_star;
  rep.r2 = r2;
  rep.lhs_value = field.evaluate(DerivativeSelector::value(), ctx.t0, ctx.x_star);
  const ShellDomain ball{0.0, r2, ctx.x_star};
  for (int a : {0, 1, 3}) rep.omega[a] = omega(a, field, ctx, n, ball, spec);
  rep.surface_terms["psi_eta_mean_r2"] = surface_term_psi_eta(field, ctx, n, r2, spec);
  rep.surface_terms["eta_psi_r2"] = -rep.omega[3];
  rep.residual = recombine(rep);
  return rep;
}

SidfReport space_terms(const ScalarField& field, const SidfContext& ctx, Dimension n,
                       const QuadratureSpec& spec) {
  SidfReport rep;
  rep.kind = SidfKind::space;
  rep.dimension = n;
  rep.lambda = ctx.lambda();
  rep.t0 = ctx.t0;
  rep.x_star = ctx.x_star;
  rep.lhs_value = field.evaluate(DerivativeSelector::value(), ctx.t0, ctx.x_star);
  const ShellDomain space{0.0, std::numeric_limits<double>::infinity(), ctx.x_star};
  rep.omega[0] = omega(0, field, ctx, n, space, spec);
  rep.omega[1] = omega(1, field, ctx, n, space, spec);
  rep.residual = recombine(rep);
  return rep;
}

}  // namespace

SidfReport ball_sidf_report(const ScalarField& field, const SidfContext& ctx, Dimension n,
                            double r2, const QuadratureSpec& spec, bool with_refinement) {
  check_args(field, ctx, n);
  if (!(r2 > 0.0) || !std::isfinite(r2)) throw DomainError("ball radius must be positive");
  const auto start = std::chrono::steady_clock::now();
  SidfReport rep = ball_terms(field, ctx, n, r2, spec);
  if (with_refinement)
    rep.refinement_delta =
        std::fabs(ball_terms(field, ctx, n, r2, spec.refined(n)).residual - rep.residual);
  rep.wall_time_seconds = timed_seconds(start);
  return rep;
}

SidfReport boundary_free_sidf(const ScalarField& field, const SidfContext& ctx, Dimension n,
                              const QuadratureSpec& spec, bool with_refinement) {
  check_args(field, ctx, n);
  if (!field.envelope()) throw DomainError("boundary-free form needs a field with a Gaussian envelope");
  const auto start = std::chrono::steady_clock::now();
  SidfReport rep = space_terms(field, ctx, n, spec);
  if (with_refinement)
    rep.refinement_delta =
        std::fabs(space_terms(field, ctx, n, spec.refined(n)).residual - rep.residual);
  rep.wall_time_seconds = timed_seconds(start);
  return rep;
}

AposterioriKind parse_aposteriori_kind(const std::string& name) {
  if (name == "recover_f_3d") return AposterioriKind::recover_f_3d;
  if (name == "omega1_box_1d") return AposterioriKind::omega1_box_1d;
  if (name == "full_c26_1d") return AposterioriKind::full_c26_1d;
  throw ConfigError("unknown a-posteriori kind '" + name + "'");
}

std::string aposteriori_kind_name(AposterioriKind kind) {
  switch (kind) {
    case AposterioriKind::recover_f_3d: return "recover_f_3d";
    case AposterioriKind::omega1_box_1d: return "omega1_box_1d";
    case AposterioriKind::full_c26_1d: return "full_c26_1d";
  }
  return "";
}

namespace {

int kind_dimension(AposterioriKind kind) { return kind == AposterioriKind::recover_f_3d ? 3 : 1; }

// Five-point second derivative.
double d2(double m2, double m1, double c, double p1, double p2, double h) {
  return (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
}

}  // namespace

double aposteriori_box(AposterioriKind kind, const ScalarField& field, const SidfContext& ctx,
                       double h, const QuadratureSpec& spec, const AposterioriOptions& opts) {
  const int n = kind_dimension(kind);
  check_args(field, ctx, n);
  if (!(h > 0.0)) throw DomainError("a-posteriori step h must be positive");
  QuadratureSpec tight = spec;
  tight.rel_tol = std::min(spec.rel_tol, 1e-9);
  tight.validate(n);

  const int stencil_points = 1 + 4 * (n + 1);
  const double work = static_cast<double>(stencil_points) *
                      static_cast<double>(product_node_count(
                          n, space_radius(field, ctx, tight) + 4.0 * h, tight));
  if (work > opts.max_evaluations)
    throw BudgetError("a-posteriori stencil needs " + std::to_string(work) +
                      " integrand evaluations, budget is " + std::to_string(opts.max_evaluations));

  const int alpha = kind == AposterioriKind::omega1_box_1d ? 1 : 0;
  const double sign = kind == AposterioriKind::recover_f_3d ? -1.0 : 1.0;
  const ShellDomain space_tmpl{0.0, std::numeric_limits<double>::infinity(), {}};
  auto F = [&](double dt, int axis, double dx) {
    SidfContext c = ctx;
    c.t0 += dt;
    if (axis >= 0) c.x_star[axis] += dx;
    ShellDomain dom = space_tmpl;
    dom.center = c.x_star;
    return sign * omega(alpha, field, c, Dimension(n), dom, tight);
  };

  const double center = F(0.0, -1, 0.0);
  double box = -d2(F(-2 * h, -1, 0), F(-h, -1, 0), center, F(h, -1, 0), F(2 * h, -1, 0), h);
  for (int i = 0; i < n; ++i)
    box += d2(F(0, i, -2 * h), F(0, i, -h), center, F(0, i, h), F(0, i, 2 * h), h);
  return box;
}

double aposteriori_residual(AposterioriKind kind, const ScalarField& field,
                            const SidfContext& ctx, double h, const QuadratureSpec& spec,
                            const AposterioriOptions& opts) {
  const double box = aposteriori_box(kind, field, ctx, h, spec, opts);
  const int n = kind_dimension(kind);
  switch (kind) {
    case AposterioriKind::recover_f_3d:
      return std::fabs(box + field.source(ctx.t0, ctx.x_star));
    case AposterioriKind::omega1_box_1d:
      return std::fabs(box);
    case AposterioriKind::full_c26_1d: {
      const int lam = ctx.lambda();
      auto g = [&field, &ctx, lam, n](std::span<const double> x) {
        const double r = distance(x, ctx.x_star);
        return lam * (n - 3) * zeta(Dimension(n), r) * field.source_dt(ctx.t0 + lam * r, x);
      };
      QuadratureSpec tight = spec;
      tight.rel_tol = std::min(spec.rel_tol, 1e-9);
      const double dispersive =
          integrate_space(Dimension(n), g, ctx.x_star, space_radius(field, ctx, tight), tight);
      return std::fabs(box - field.source(ctx.t0, ctx.x_star) - dispersive);
    }
  }
  return 0.0;
}

}  // namespace waveid
