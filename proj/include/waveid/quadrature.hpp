#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "waveid/ndgeom.hpp"

namespace waveid {

using Integrand = std::function<double(std::span<const double>)>;

enum class Execution { serial, parallel };

struct QuadratureSpec {
  int radial_panels = 32;     // uniform panels on [split_radius, r_outer]
  int radial_order = 12;      // Gauss-Legendre nodes per radial panel
  int angular_order = 0;      // 0: 64 azimuthal nodes for n=2, 24 x 48 for n=3
  double split_radius = 0.5;  // start of the geometric grading toward r = 0
  double tail_cutoff = 1e-16;
  double rel_tol = 1e-6;
  int graded_levels = 40;     // panels [s 2^-(k+1), s 2^-k], k < graded_levels
  Execution execution = Execution::parallel;

  // Throws DomainError when these settings are unusable for dimension n.
  void validate(int n) const;
  int resolved_angular_order(int n) const;
  // Doubled radial and angular orders.
  QuadratureSpec refined(int n) const;
};

// Closed region r1 <= |x - center| <= r2. r1 == 0 is a ball, r2 == inf all space.
struct ShellDomain {
  double r1 = 0.0;
  double r2 = std::numeric_limits<double>::infinity();
  std::vector<double> center;

  bool is_ball() const { return r1 == 0.0; }
  bool is_unbounded() const { return r2 == std::numeric_limits<double>::infinity(); }
  void validate(int n) const;
};

// One-dimensional radial rule in ascending r.
struct RadialRule {
  std::vector<double> r;
  std::vector<double> w;
  std::size_t inner_panel_end = 0;    // nodes [0, inner_panel_end) form the innermost panel
  std::size_t outer_panel_begin = 0;  // nodes [outer_panel_begin, size) form the outermost panel
};

RadialRule uniform_radial_rule(double a, double b, int panels, int order);
RadialRule graded_radial_rule(double top, int levels, int order);
RadialRule ball_radial_rule(double r2, const QuadratureSpec& spec);

// Unit directions and weights; weights sum to S_n(1).
struct AngularRule {
  int n = 0;
  std::vector<double> dirs;  // n entries per direction
  std::vector<double> w;
  std::size_t size() const { return w.size(); }
};

AngularRule angular_rule(int n, const QuadratureSpec& spec);

// Sum of w_r r^(n-1) w_u g(center + r u) over the product rule.
// Checks that the innermost/outermost panels are below rel_tol of the L1 mass
// when the corresponding flag is set.
struct ProductIntegral {
  double value = 0.0;
  double l1 = 0.0;
  double inner_panel = 0.0;
  double outer_panel = 0.0;
  std::size_t nodes = 0;
};

ProductIntegral integrate_product(int n, const Integrand& g, const RadialRule& radial,
                                  const AngularRule& angular, std::span<const double> center,
                                  Execution exec);

double integrate_shell(Dimension n, const Integrand& g, const ShellDomain& dom,
                       const QuadratureSpec& spec);
double integrate_sphere_surface(Dimension n, const Integrand& g, double r,
                                std::span<const double> center, const QuadratureSpec& spec);
double integrate_ball(Dimension n, const Integrand& g, double r2, std::span<const double> center,
                      const QuadratureSpec& spec);
// r_max comes from the integrand's envelope; see gaussian_cutoff_radius.
double integrate_space(Dimension n, const Integrand& g, std::span<const double> center,
                       double r_max, const QuadratureSpec& spec);

// Radius around `center` beyond which exp(-beta |x - c|^2) < tail_cutoff, plus a margin of 2.
double gaussian_cutoff_radius(double center_offset, double beta, double tail_cutoff);

// Serial composite Gauss-Legendre on [a, b]; used for nested one-dimensional integrals.
double integrate_interval(const std::function<double(double)>& f, double a, double b, int panels,
                          int order);

// Number of product nodes a space/ball integral of dimension n would use.
std::size_t product_node_count(int n, double r_outer, const QuadratureSpec& spec);

}  // namespace waveid
