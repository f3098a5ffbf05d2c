#include "waveid/ndgeom.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "waveid/errors.hpp"

namespace waveid {

Dimension::Dimension(int n) : n_(n) {
  if (n < 1 || n > kMaxDimension) {
    throw DomainError("dimension must lie in [1, " + std::to_string(kMaxDimension) +
                      "], got " + std::to_string(n));
  }
}

double gamma_half_integer(int two_k) {
  if (two_k <= 0) throw DomainError("gamma_half_integer: argument must be positive");
  // Beyond this the result overflows a double anyway.
  if (two_k > 342) throw DomainError("gamma_half_integer: argument too large");
  double g = (two_k % 2 == 1) ? std::sqrt(std::numbers::pi) : 1.0;
  for (int m = (two_k % 2 == 1) ? 1 : 2; m < two_k; m += 2) g *= 0.5 * m;
  return g;
}

double unit_ball_volume(Dimension n) {
  return std::pow(std::numbers::pi, 0.5 * n) / gamma_half_integer(n + 2);
}

double unit_sphere_area(Dimension n) {
  if (n == 1) return 2.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / gamma_half_integer(n);
}

double kernel_constant(Dimension n) {
  if (n == 1) return -0.5;
  if (n == 2) return 0.5 / std::numbers::pi;
  return 1.0 / ((n - 2) * unit_sphere_area(n));
}

}  // namespace waveid
