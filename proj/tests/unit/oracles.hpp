#pragma once

// Reference routines that share no code with the library.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 50) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Simpson over a list of breakpoints, avoiding endpoint singularities via an open start.
inline double piecewise_simpson(const std::function<double(double)>& f, std::vector<double> edges,
                                double tol = 1e-12) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) s += adaptive_simpson(f, edges[i], edges[i + 1], tol);
  return s;
}

inline double central_first(const std::function<double(double)>& g, double x, double h) {
  return (g(x - 2 * h) - 8 * g(x - h) + 8 * g(x + h) - g(x + 2 * h)) / (12 * h);
}

inline double central_second(const std::function<double(double)>& g, double x, double h) {
  return (-g(x - 2 * h) + 16 * g(x - h) - 30 * g(x) + 16 * g(x + h) - g(x + 2 * h)) / (12 * h * h);
}

inline std::vector<double> random_direction(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  std::vector<double> u(n);
  double s = 0.0;
  do {
    s = 0.0;
    for (double& c : u) {
      c = nd(rng);
      s += c * c;
    }
  } while (s < 1e-12);
  for (double& c : u) c /= std::sqrt(s);
  return u;
}

inline double rel_err(double a, double b) {
  return std::fabs(a - b) / std::max(std::fabs(b), 1e-300);
}

}  // namespace oracle
