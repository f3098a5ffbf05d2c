#include "waveid/fields.hpp"

#include <cmath>
#include <string>

#include "waveid/errors.hpp"

namespace waveid {

Bias bias_from_int(int lambda) {
  if (lambda < -1 || lambda > 1) throw DomainError("bias must be -1, 0 or +1");
  return static_cast<Bias>(lambda);
}

Bias parse_bias(const std::string& name) {
  if (name == "retarded" || name == "-1") return Bias::retarded;
  if (name == "advanced" || name == "1" || name == "+1") return Bias::advanced;
  if (name == "unbiased" || name == "0") return Bias::unbiased;
  throw ConfigError("unknown bias '" + name + "' (expected retarded|advanced|unbiased)");
}

std::string bias_name(Bias b) {
  switch (b) {
    case Bias::retarded: return "retarded";
    case Bias::advanced: return "advanced";
    case Bias::unbiased: return "unbiased";
  }
  return "unbiased";
}

void ScalarField::check_point(const DerivativeSelector& sel, std::span<const double> x) const {
  const int n = dimension();
  if (static_cast<int>(x.size()) != n) throw DomainError("point has wrong dimension");
  if ((sel.tag == DerivativeSelector::Tag::d_i || sel.tag == DerivativeSelector::Tag::d_ii) &&
      (sel.index < 1 || sel.index > n))
    throw DomainError("spatial derivative index out of range");
}

void ScalarField::first_partials(double t, std::span<const double> x, double& value, double& d_t,
                                 std::span<double> grad) const {
  value = evaluate(DerivativeSelector::value(), t, x);
  d_t = evaluate(DerivativeSelector::dt(), t, x);
  for (int i = 0; i < dimension(); ++i) grad[i] = evaluate(DerivativeSelector::di(i + 1), t, x);
}

double ScalarField::source_dt(double t, std::span<const double> x) const {
  const double h = 1e-3;
  return (source(t - 2 * h, x) - 8.0 * source(t - h, x) + 8.0 * source(t + h, x) -
          source(t + 2 * h, x)) /
         (12.0 * h);
}

GaussianField::GaussianField(GaussianParams p) : p_(std::move(p)) {
  const int n = static_cast<int>(p_.x_center.size());
  if (n < 1 || n > kMaxDimension) throw DomainError("gaussian field: bad x_center dimension");
  if (!(p_.alpha > 0.0) || !(p_.beta > 0.0))
    throw DomainError("gaussian field: alpha and beta must be positive");
  if (!std::isfinite(p_.amplitude) || !std::isfinite(p_.t_center))
    throw DomainError("gaussian field: non-finite parameter");
}

double GaussianField::evaluate(const DerivativeSelector& sel, double t,
                               std::span<const double> x) const {
  check_point(sel, x);
  const int n = dimension();
  const double tau = t - p_.t_center;
  double rho2 = 0.0;
  for (int i = 0; i < n; ++i) rho2 += (x[i] - p_.x_center[i]) * (x[i] - p_.x_center[i]);
  const double e = p_.amplitude * std::exp(-p_.alpha * tau * tau - p_.beta * rho2);
  const double a = p_.alpha, b = p_.beta;
  using T = DerivativeSelector::Tag;
  switch (sel.tag) {
    case T::value: return e;
    case T::d_t: return -2.0 * a * tau * e;
    case T::d_tt: return (4.0 * a * a * tau * tau - 2.0 * a) * e;
    case T::d_i: return -2.0 * b * (x[sel.index - 1] - p_.x_center[sel.index - 1]) * e;
    case T::d_ii: {
      const double y = x[sel.index - 1] - p_.x_center[sel.index - 1];
      return (4.0 * b * b * y * y - 2.0 * b) * e;
    }
    case T::laplacian: return (4.0 * b * b * rho2 - 2.0 * n * b) * e;
    case T::dalembertian:
      return ((4.0 * b * b * rho2 - 2.0 * n * b) - (4.0 * a * a * tau * tau - 2.0 * a)) * e;
  }
  return 0.0;
}

std::optional<GaussianEnvelope> GaussianField::envelope() const {
  return GaussianEnvelope{p_.x_center, p_.beta, p_.t_center, p_.alpha};
}

void GaussianField::first_partials(double t, std::span<const double> x, double& value,
                                   double& d_t, std::span<double> grad) const {
  const int n = dimension();
  const double tau = t - p_.t_center;
  double rho2 = 0.0;
  for (int i = 0; i < n; ++i) rho2 += (x[i] - p_.x_center[i]) * (x[i] - p_.x_center[i]);
  const double e = p_.amplitude * std::exp(-p_.alpha * tau * tau - p_.beta * rho2);
  value = e;
  d_t = -2.0 * p_.alpha * tau * e;
  for (int i = 0; i < n; ++i) grad[i] = -2.0 * p_.beta * (x[i] - p_.x_center[i]) * e;
}

double GaussianField::source_dt(double t, std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension()) throw DomainError("point has wrong dimension");
  const int n = dimension();
  const double tau = t - p_.t_center;
  double rho2 = 0.0;
  for (int i = 0; i < n; ++i) rho2 += (x[i] - p_.x_center[i]) * (x[i] - p_.x_center[i]);
  const double a = p_.alpha, b = p_.beta;
  const double e = p_.amplitude * std::exp(-a * tau * tau - b * rho2);
  const double time_part = 4.0 * a * a * tau * tau - 2.0 * a;
  const double space_part = 4.0 * b * b * rho2 - 2.0 * n * b;
  return (8.0 * a * a * tau - 2.0 * a * tau * (time_part - space_part)) * e;
}

ConstantField::ConstantField(int n, double c) : n_(n), c_(c) {
  if (n < 1 || n > kMaxDimension) throw DomainError("constant field: bad dimension");
}

double ConstantField::evaluate(const DerivativeSelector& sel, double,
                               std::span<const double> x) const {
  check_point(sel, x);
  return sel.tag == DerivativeSelector::Tag::value ? c_ : 0.0;
}

GaussianParams default_gaussian_params(int n, double t0, std::span<const double> x_star) {
  if (static_cast<int>(x_star.size()) != n) throw DomainError("x_star has wrong dimension");
  GaussianParams p;
  p.t_center = t0;
  p.x_center.assign(x_star.begin(), x_star.end());
  for (double& c : p.x_center) c += 0.3;
  return p;
}

double biased_time(double t0, Bias bias, std::span<const double> x,
                   std::span<const double> x_star) {
  if (x.size() != x_star.size()) throw DomainError("x and x_star differ in dimension");
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r2 += (x[i] - x_star[i]) * (x[i] - x_star[i]);
  return t0 + lambda_of(bias) * std::sqrt(r2);
}

double biased_evaluate(const ScalarField& field, const DerivativeSelector& sel, double t0,
                       Bias bias, std::span<const double> x, std::span<const double> x_star) {
  return field.evaluate(sel, biased_time(t0, bias, x, x_star), x);
}

double biased_box_identity_residual(const ScalarField& field, Dimension n, Bias bias, double t0,
                                    std::span<const double> x_star, std::span<const double> x,
                                    double h) {
  if (bias == Bias::unbiased) throw DomainError("identity check requires lambda = -1 or +1");
  if (!(h > 0.0)) throw DomainError("h must be positive");
  if (static_cast<int>(x.size()) != n || static_cast<int>(x_star.size()) != n ||
      field.dimension() != n)
    throw DomainError("dimension mismatch");
  double r2 = 0.0;
  for (int i = 0; i < n; ++i) r2 += (x[i] - x_star[i]) * (x[i] - x_star[i]);
  const double r = std::sqrt(r2);
  if (r < 10.0 * h) throw DomainError("point within 10h of x_star");
  const int lam = lambda_of(bias);

  std::vector<double> p(x.begin(), x.end()), grad(n);
  auto v_component = [&](int i) {
    double rr = 0.0;
    for (int k = 0; k < n; ++k) rr += (p[k] - x_star[k]) * (p[k] - x_star[k]);
    rr = std::sqrt(rr);
    double value = 0.0, dt = 0.0;
    field.first_partials(t0 + lam * rr, p, value, dt, grad);
    return grad[i] - lam * (p[i] - x_star[i]) / rr * dt;
  };
  double div = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = p[i];
    p[i] = xi + h;
    const double vp = v_component(i);
    p[i] = xi - h;
    const double vm = v_component(i);
    p[i] = xi;
    div += (vp - vm) / (2.0 * h);
  }
  const double tb = t0 + lam * r;
  const double lhs = field.evaluate(DerivativeSelector::dalembertian(), tb, x);
  const double rhs = div + lam * (n - 1) / r * field.evaluate(DerivativeSelector::dt(), tb, x);
  return std::fabs(lhs - rhs);
}

}  // namespace waveid
