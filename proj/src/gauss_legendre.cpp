#include "waveid/gauss_legendre.hpp"

#include <cmath>
#include <numbers>

#include "waveid/errors.hpp"

namespace waveid {

GaussLegendre gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be positive");
  GaussLegendre gl;
  gl.nodes.resize(order);
  gl.weights.resize(order);
  const int m = order;
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    {
      // one more derivative evaluation at the converged node
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[m - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) gl.nodes[m / 2] = 0.0;
  return gl;
}

}  // namespace waveid
