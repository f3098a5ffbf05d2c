#pragma once

#include <functional>
#include <span>
#include <vector>

#include "waveid/ndgeom.hpp"
#include "waveid/quadrature.hpp"

namespace waveid {

// Harmonic kernel: a_n r^(2-n) for n != 2, -a_2 ln r for n = 2.
double eta(Dimension n, double r);
// Weight of the first time derivative: a_n r^(1-n) for n != 2, -a_2 (ln r + 2)/r for n = 2.
double zeta(Dimension n, double r);
std::vector<double> eta_gradient(Dimension n, std::span<const double> x_rel);
// Writes the gradient into `out` (size n) without allocating.
void eta_gradient_into(Dimension n, std::span<const double> x_rel, std::span<double> out);

// Outward flux of grad(eta) through the r-sphere. Quadrature for n <= 3, closed form above.
double flux_normalization(Dimension n, double r, const QuadratureSpec& spec = {});

using ScalarFunction = std::function<double(std::span<const double>)>;

// Second-order central Laplacian on the 2n+1 point stencil.
double fd_laplacian(const ScalarFunction& f, std::span<const double> x, double h);

}  // namespace waveid
