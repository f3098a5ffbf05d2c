#include "waveid/kernels.hpp"

#include <cmath>
#include <numeric>

#include "waveid/errors.hpp"

namespace waveid {

namespace {

void require_radius(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radial distance must be finite and >= 0");
  if (r == 0.0) throw SingularityError("kernel evaluated at its pole r = 0");
}

}  // namespace

double eta(Dimension n, double r) {
  require_radius(r);
  const double a = kernel_constant(n);
  if (n == 2) return -a * std::log(r);
  if (n == 1) return a * r;
  return a * std::pow(r, 2 - n);
}

double zeta(Dimension n, double r) {
  const double a = kernel_constant(n);
  if (n == 1) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radial distance must be finite and >= 0");
    return a;
  }
  require_radius(r);
  if (n == 2) return -a * (std::log(r) + 2.0) / r;
  return a * std::pow(r, 1 - n);
}

void eta_gradient_into(Dimension n, std::span<const double> x_rel, std::span<double> out) {
  if (static_cast<int>(x_rel.size()) != n || static_cast<int>(out.size()) != n)
    throw DomainError("eta_gradient: vector has wrong dimension");
  const double r2 = std::inner_product(x_rel.begin(), x_rel.end(), x_rel.begin(), 0.0);
  const double r = std::sqrt(r2);
  require_radius(r);
  const double a = kernel_constant(n);
  const double c = (n == 2) ? -a / r2 : (2 - n) * a / std::pow(r, n);
  for (int i = 0; i < n; ++i) out[i] = c * x_rel[i];
}

std::vector<double> eta_gradient(Dimension n, std::span<const double> x_rel) {
  std::vector<double> g(n);
  eta_gradient_into(n, x_rel, g);
  return g;
}

double flux_normalization(Dimension n, double r, const QuadratureSpec& spec) {
  require_radius(r);
  if (n > 3) return (2 - n) * kernel_constant(n) * std::pow(r, 1 - n) * unit_sphere_area(n) *
                    std::pow(r, n - 1);
  const std::vector<double> center(n, 0.0);
  const int dim = n;
  auto normal_flux = [dim, r](std::span<const double> x) {
    double g[3];
    eta_gradient_into(Dimension(dim), x, std::span<double>(g, dim));
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += g[i] * x[i] / r;
    return s;
  };
  return integrate_sphere_surface(n, normal_flux, r, center, spec);
}

double fd_laplacian(const ScalarFunction& f, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw DomainError("fd_laplacian: h must be positive");
  std::vector<double> p(x.begin(), x.end());
  const double f0 = f(p);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double xi = p[i];
    p[i] = xi + h;
    const double fp = f(p);
    p[i] = xi - h;
    const double fm = f(p);
    p[i] = xi;
    s += (fp - 2.0 * f0 + fm) / (h * h);
  }
  return s;
}

}  // namespace waveid
