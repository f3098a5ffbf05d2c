#include "waveid/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

#include "waveid/compensated.hpp"
#include "waveid/errors.hpp"
#include "waveid/gauss_legendre.hpp"

namespace waveid {

namespace {

constexpr std::size_t kBlock = 2048;
constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

void require_volume_dim(int n) {
  if (n < 1 || n > 3) throw DomainError("volume quadrature supports n in {1,2,3} only");
}

void append_panel(RadialRule& rule, double a, double b, const GaussLegendre& gl) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
    rule.r.push_back(mid + half * gl.nodes[k]);
    rule.w.push_back(half * gl.weights[k]);
  }
}

void append_rule(RadialRule& into, const RadialRule& from) {
  const std::size_t base = into.r.size();
  into.r.insert(into.r.end(), from.r.begin(), from.r.end());
  into.w.insert(into.w.end(), from.w.begin(), from.w.end());
  into.outer_panel_begin = base + from.outer_panel_begin;
}

struct BlockResult {
  double sum = 0.0;
  std::size_t bad = kNoIndex;
};

// Shared by the serial and the OpenMP paths so both produce identical bits.
[[gnu::noinline]] BlockResult evaluate_block(std::size_t b, int n, const Integrand& g,
                                             const RadialRule& radial, const AngularRule& angular,
                                             std::span<const double> center,
                                             std::vector<double>& vals) {
  const std::size_t na = angular.size();
  const std::size_t total = radial.r.size() * na;
  const std::size_t lo = b * kBlock, hi = std::min(total, lo + kBlock);
  std::array<double, 3> x{};
  BlockResult out;
  NeumaierSum acc;
  for (std::size_t i = lo; i < hi; ++i) {
    const std::size_t ir = i / na, ia = i % na;
    const double r = radial.r[ir];
    for (int d = 0; d < n; ++d) x[d] = center[d] + r * angular.dirs[ia * n + d];
    double jac = radial.w[ir] * angular.w[ia];
    for (int d = 1; d < n; ++d) jac *= r;
    const double gv = g(std::span<const double>(x.data(), n));
    if (!std::isfinite(gv) && out.bad == kNoIndex) out.bad = i;
    vals[i] = jac * gv;
    acc.add(vals[i]);
  }
  out.sum = acc.value();
  return out;
}

[[noreturn]] void report_bad_node(std::size_t i, int n, const RadialRule& radial,
                                  const AngularRule& angular, std::span<const double> center) {
  const std::size_t na = angular.size();
  const double r = radial.r[i / na];
  std::ostringstream os;
  os.precision(17);
  os << "non-finite integrand at x = (";
  for (int d = 0; d < n; ++d)
    os << (d ? ", " : "") << center[d] + r * angular.dirs[(i % na) * n + d];
  os << "), r = " << r;
  throw IntegrationError(os.str());
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void check_panels(const ProductIntegral& p, double rel_tol, bool inner, bool outer) {
  if (inner && std::fabs(p.inner_panel) > rel_tol * p.l1) {
    throw IntegrationError("graded inner panels not converging toward the centre (inner panel " +
                           sci(p.inner_panel) + ", L1 " + sci(p.l1) + ")");
  }
  if (outer && std::fabs(p.outer_panel) > rel_tol * p.l1) {
    throw IntegrationError("tail estimate not decaying at the truncation radius (outer panel " +
                           sci(p.outer_panel) + ", L1 " + sci(p.l1) + ")");
  }
}

}  // namespace

void QuadratureSpec::validate(int n) const {
  if (radial_panels < 1 || radial_order < 1) throw DomainError("radial panels/order must be >= 1");
  if (graded_levels < 0 || graded_levels > 1000) throw DomainError("graded_levels out of range");
  if (!(split_radius > 0.0) || !std::isfinite(split_radius))
    throw DomainError("split_radius must be positive");
  if (!(tail_cutoff > 0.0) || !(tail_cutoff < 1.0)) throw DomainError("tail_cutoff must lie in (0,1)");
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (angular_order < 0) throw DomainError("angular_order must be non-negative");
  const int a = resolved_angular_order(n);
  if (n == 2 && a < 16) throw DomainError("angular_order must be >= 16 for n = 2");
  if (n == 3 && a < 8) throw DomainError("angular_order must be >= 8 for n = 3");
}

int QuadratureSpec::resolved_angular_order(int n) const {
  if (angular_order > 0) return angular_order;
  return n == 2 ? 64 : n == 3 ? 24 : 2;
}

QuadratureSpec QuadratureSpec::refined(int n) const {
  QuadratureSpec s = *this;
  s.radial_order = 2 * radial_order;
  s.angular_order = 2 * resolved_angular_order(n);
  return s;
}

void ShellDomain::validate(int n) const {
  if (static_cast<int>(center.size()) != n) throw DomainError("shell centre has wrong dimension");
  if (!(r1 >= 0.0) || !(r2 > r1)) throw DomainError("shell requires 0 <= r1 < r2");
}

RadialRule uniform_radial_rule(double a, double b, int panels, int order) {
  if (!(b > a) || panels < 1) throw DomainError("uniform_radial_rule: empty interval");
  const GaussLegendre gl = gauss_legendre(order);
  RadialRule rule;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, hi = (p + 1 == panels) ? b : a + (p + 1) * h;
    if (p + 1 == panels) rule.outer_panel_begin = rule.r.size();
    append_panel(rule, lo, hi, gl);
  }
  rule.inner_panel_end = static_cast<std::size_t>(order);
  return rule;
}

RadialRule graded_radial_rule(double top, int levels, int order) {
  const GaussLegendre gl = gauss_legendre(order);
  RadialRule rule;
  const double bottom = std::ldexp(top, -levels);
  append_panel(rule, 0.0, bottom, gl);
  rule.inner_panel_end = rule.r.size();
  for (int k = levels - 1; k >= 0; --k) {
    rule.outer_panel_begin = rule.r.size();
    append_panel(rule, std::ldexp(top, -(k + 1)), std::ldexp(top, -k), gl);
  }
  return rule;
}

RadialRule ball_radial_rule(double r2, const QuadratureSpec& spec) {
  if (r2 <= spec.split_radius) return graded_radial_rule(r2, spec.graded_levels, spec.radial_order);
  RadialRule rule = graded_radial_rule(spec.split_radius, spec.graded_levels, spec.radial_order);
  append_rule(rule, uniform_radial_rule(spec.split_radius, r2, spec.radial_panels, spec.radial_order));
  return rule;
}

AngularRule angular_rule(int n, const QuadratureSpec& spec) {
  require_volume_dim(n);
  AngularRule rule;
  rule.n = n;
  if (n == 1) {
    rule.dirs = {-1.0, 1.0};
    rule.w = {1.0, 1.0};
    return rule;
  }
  const int m = spec.resolved_angular_order(n);
  if (n == 2) {
    for (int k = 0; k < m; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / m;
      rule.dirs.push_back(std::cos(phi));
      rule.dirs.push_back(std::sin(phi));
      rule.w.push_back(2.0 * std::numbers::pi / m);
    }
    return rule;
  }
  const GaussLegendre gl = gauss_legendre(m);
  const int nphi = 2 * m;
  for (int i = 0; i < m; ++i) {
    const double ct = gl.nodes[i], st = std::sqrt(1.0 - ct * ct);
    for (int k = 0; k < nphi; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / nphi;
      rule.dirs.push_back(st * std::cos(phi));
      rule.dirs.push_back(st * std::sin(phi));
      rule.dirs.push_back(ct);
      rule.w.push_back(gl.weights[i] * 2.0 * std::numbers::pi / nphi);
    }
  }
  return rule;
}

ProductIntegral integrate_product(int n, const Integrand& g, const RadialRule& radial,
                                  const AngularRule& angular, std::span<const double> center,
                                  Execution exec) {
  require_volume_dim(n);
  if (static_cast<int>(center.size()) != n) throw DomainError("centre has wrong dimension");
  const std::size_t na = angular.size();
  const std::size_t total = radial.r.size() * na;
  const std::size_t nblocks = (total + kBlock - 1) / kBlock;
  std::vector<double> vals(total);
  std::vector<BlockResult> blocks(nblocks);

  if (exec == Execution::parallel) {
#if defined(WAVEID_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b)
      blocks[b] = evaluate_block(static_cast<std::size_t>(b), n, g, radial, angular, center, vals);
  } else {
    for (std::size_t b = 0; b < nblocks; ++b)
      blocks[b] = evaluate_block(b, n, g, radial, angular, center, vals);
  }

  NeumaierSum total_sum, l1, inner, outer;
  for (const BlockResult& b : blocks) {
    if (b.bad != kNoIndex) report_bad_node(b.bad, n, radial, angular, center);
    total_sum.add(b.sum);
  }
  for (double v : vals) l1.add(std::fabs(v));
  for (std::size_t i = 0; i < radial.inner_panel_end * na; ++i) inner.add(vals[i]);
  for (std::size_t i = radial.outer_panel_begin * na; i < total; ++i) outer.add(vals[i]);

  ProductIntegral p;
  p.value = total_sum.value();
  p.l1 = l1.value();
  p.inner_panel = inner.value();
  p.outer_panel = outer.value();
  p.nodes = total;
  return p;
}

double integrate_shell(Dimension n, const Integrand& g, const ShellDomain& dom,
                       const QuadratureSpec& spec) {
  require_volume_dim(n);
  spec.validate(n);
  dom.validate(n);
  if (dom.is_ball()) return integrate_ball(n, g, dom.r2, dom.center, spec);
  if (dom.is_unbounded()) throw DomainError("integrate_shell: r2 must be finite");
  const RadialRule radial =
      uniform_radial_rule(dom.r1, dom.r2, spec.radial_panels, spec.radial_order);
  return integrate_product(n, g, radial, angular_rule(n, spec), dom.center, spec.execution).value;
}

double integrate_sphere_surface(Dimension n, const Integrand& g, double r,
                                std::span<const double> center, const QuadratureSpec& spec) {
  require_volume_dim(n);
  spec.validate(n);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("sphere radius must be positive");
  RadialRule radial;
  radial.r = {r};
  radial.w = {1.0};
  return integrate_product(n, g, radial, angular_rule(n, spec), center, spec.execution).value;
}

double integrate_ball(Dimension n, const Integrand& g, double r2, std::span<const double> center,
                      const QuadratureSpec& spec) {
  require_volume_dim(n);
  spec.validate(n);
  if (!(r2 > 0.0) || !std::isfinite(r2)) throw DomainError("ball radius must be positive");
  const ProductIntegral p = integrate_product(n, g, ball_radial_rule(r2, spec),
                                              angular_rule(n, spec), center, spec.execution);
  check_panels(p, spec.rel_tol, true, false);
  return p.value;
}

double integrate_space(Dimension n, const Integrand& g, std::span<const double> center,
                       double r_max, const QuadratureSpec& spec) {
  require_volume_dim(n);
  spec.validate(n);
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw IntegrationError("integrate_space: no envelope radius supplied");
  const ProductIntegral p = integrate_product(n, g, ball_radial_rule(r_max, spec),
                                              angular_rule(n, spec), center, spec.execution);
  check_panels(p, spec.rel_tol, true, true);
  return p.value;
}

double gaussian_cutoff_radius(double center_offset, double beta, double tail_cutoff) {
  if (!(beta > 0.0)) throw DomainError("gaussian_cutoff_radius: beta must be positive");
  return center_offset + std::sqrt(std::log(1.0 / tail_cutoff) / beta) + 2.0;
}

double integrate_interval(const std::function<double(double)>& f, double a, double b, int panels,
                          int order) {
  if (!(b > a)) return 0.0;
  const GaussLegendre gl = gauss_legendre(order);
  const double h = (b - a) / panels;
  NeumaierSum acc;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, hi = (p + 1 == panels) ? b : a + (p + 1) * h;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k)
      acc.add(half * gl.weights[k] * f(mid + half * gl.nodes[k]));
  }
  return acc.value();
}

std::size_t product_node_count(int n, double r_outer, const QuadratureSpec& spec) {
  return ball_radial_rule(r_outer, spec).r.size() * angular_rule(n, spec).size();
}

}  // namespace waveid
