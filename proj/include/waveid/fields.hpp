#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "waveid/ndgeom.hpp"

namespace waveid {

enum class Bias : int { retarded = -1, unbiased = 0, advanced = 1 };

inline int lambda_of(Bias b) { return static_cast<int>(b); }
Bias bias_from_int(int lambda);
// "retarded" | "advanced" | "unbiased"
Bias parse_bias(const std::string& name);
std::string bias_name(Bias b);

struct SpaceTimePoint {
  double t = 0.0;
  std::vector<double> x;
};

struct DerivativeSelector {
  enum class Tag { value, d_t, d_tt, d_i, d_ii, laplacian, dalembertian };
  Tag tag = Tag::value;
  int index = 0;  // 1-based spatial index for d_i and d_ii

  static DerivativeSelector value() { return {Tag::value, 0}; }
  static DerivativeSelector dt() { return {Tag::d_t, 0}; }
  static DerivativeSelector dtt() { return {Tag::d_tt, 0}; }
  static DerivativeSelector di(int i) { return {Tag::d_i, i}; }
  static DerivativeSelector dii(int i) { return {Tag::d_ii, i}; }
  static DerivativeSelector laplacian() { return {Tag::laplacian, 0}; }
  static DerivativeSelector dalembertian() { return {Tag::dalembertian, 0}; }
};

// Spatial Gaussian envelope exp(-beta |x - center|^2) bounding the field and its partials
// up to polynomial factors.
struct GaussianEnvelope {
  std::vector<double> center;
  double beta = 1.0;
  double t_center = 0.0;
  double alpha = 1.0;
};

class ScalarField {
 public:
  virtual ~ScalarField() = default;

  virtual int dimension() const = 0;
  virtual double evaluate(const DerivativeSelector& sel, double t,
                          std::span<const double> x) const = 0;
  virtual std::optional<GaussianEnvelope> envelope() const { return std::nullopt; }

  // Value, time derivative and spatial gradient at one point.
  virtual void first_partials(double t, std::span<const double> x, double& value, double& d_t,
                              std::span<double> grad) const;
  // Time derivative of the source; the default differentiates source() numerically.
  virtual double source_dt(double t, std::span<const double> x) const;

  double evaluate(const DerivativeSelector& sel, const SpaceTimePoint& p) const {
    return evaluate(sel, p.t, p.x);
  }
  // f = -(laplacian - d_tt)
  double source(double t, std::span<const double> x) const {
    return -evaluate(DerivativeSelector::dalembertian(), t, x);
  }

 protected:
  void check_point(const DerivativeSelector& sel, std::span<const double> x) const;
};

struct GaussianParams {
  double amplitude = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  double t_center = 0.0;
  std::vector<double> x_center;
};

// psi = A exp(-alpha (t - t_c)^2) exp(-beta |x - c|^2)
class GaussianField final : public ScalarField {
 public:
  explicit GaussianField(GaussianParams p);

  int dimension() const override { return static_cast<int>(p_.x_center.size()); }
  double evaluate(const DerivativeSelector& sel, double t,
                  std::span<const double> x) const override;
  std::optional<GaussianEnvelope> envelope() const override;
  void first_partials(double t, std::span<const double> x, double& value, double& d_t,
                      std::span<double> grad) const override;
  double source_dt(double t, std::span<const double> x) const override;

  const GaussianParams& params() const { return p_; }

 private:
  GaussianParams p_;
};

class ConstantField final : public ScalarField {
 public:
  ConstantField(int n, double c);
  int dimension() const override { return n_; }
  double evaluate(const DerivativeSelector& sel, double t,
                  std::span<const double> x) const override;
  double source_dt(double, std::span<const double>) const override { return 0.0; }

 private:
  int n_;
  double c_;
};

// A = alpha = beta = 1, centred at (t0, x_star + 0.3 per component).
GaussianParams default_gaussian_params(int n, double t0, std::span<const double> x_star);

double biased_time(double t0, Bias bias, std::span<const double> x, std::span<const double> x_star);

// The partial is taken first, then evaluated at t0 + lambda |x - x_star|.
double biased_evaluate(const ScalarField& field, const DerivativeSelector& sel, double t0,
                       Bias bias, std::span<const double> x, std::span<const double> x_star);

// |biased d'Alembertian - (div V + lambda (n-1)/r psi_t)| with
// V_i = psi_i - lambda (x'_i / r) psi_t, all at the biased time and div V by central differences.
double biased_box_identity_residual(const ScalarField& field, Dimension n, Bias bias, double t0,
                                    std::span<const double> x_star, std::span<const double> x,
                                    double h);

}  // namespace waveid
