#pragma once

namespace waveid {

inline constexpr int kMaxDimension = 32;

// Spatial dimension n, 1 <= n <= kMaxDimension.
class Dimension {
 public:
  explicit Dimension(int n);
  int value() const noexcept { return n_; }
  operator int() const noexcept { return n_; }

 private:
  int n_;
};

// Gamma(two_k / 2) by the upward recurrence from Gamma(1/2) and Gamma(1).
double gamma_half_integer(int two_k);

double unit_ball_volume(Dimension n);
// S_1 is the two-point "sphere" {-1, +1} and counts 2.
double unit_sphere_area(Dimension n);
// Normalisation of the harmonic kernel so that its outward flux is -1.
double kernel_constant(Dimension n);

}  // namespace waveid
