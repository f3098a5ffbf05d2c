#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace waveid {

// Neumaier's variant of Kahan summation. Order-dependent but deterministic.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double neumaier_sum(std::span<const double> xs) noexcept {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

}  // namespace waveid
