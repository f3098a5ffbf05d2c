#include "waveid/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "waveid/errors.hpp"

namespace waveid {

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

int checked_lambda(Bias bias) {
  if (bias == Bias::unbiased) throw DomainError("Green functions need lambda = -1 or +1");
  return lambda_of(bias);
}

// Integral over u >= 0 of f(t0 + lam (d + u), x) restricted to the source's time window.
double cone_interior_1d(const SourceFunction& f, const SourceSupport& s, int lam, double t0,
                        double d, std::span<const double> x, const GreenOptions& opts) {
  const double lo = s.t_center - s.t_halfwidth, hi = s.t_center + s.t_halfwidth;
  double ua, ub;
  if (lam < 0) {
    ua = t0 - d - hi;
    ub = t0 - d - lo;
  } else {
    ua = lo - t0 - d;
    ub = hi - t0 - d;
  }
  ua = std::max(ua, 0.0);
  if (!(ub > ua)) return 0.0;
  return integrate_interval([&](double u) { return f(t0 + lam * (d + u), x); }, ua, ub,
                            opts.time_panels, opts.time_order);
}

// (1/2pi) integral over s >= 0 of f(t0 + lam d cosh s, x); tau = d cosh s removes the
// inverse square root at the cone edge.
double cone_interior_2d(const SourceFunction& f, const SourceSupport& s, int lam, double t0,
                        double d, std::span<const double> x, const GreenOptions& opts) {
  const double lo = s.t_center - s.t_halfwidth - t0, hi = s.t_center + s.t_halfwidth - t0;
  // lam d cosh s must land in [lo, hi]
  double ca, cb;
  if (lam > 0) {
    ca = lo / d;
    cb = hi / d;
  } else {
    ca = -hi / d;
    cb = -lo / d;
  }
  if (!(cb > 1.0)) return 0.0;
  const double sa = ca > 1.0 ? std::acosh(ca) : 0.0;
  const double sb = std::acosh(cb);
  if (!(sb > sa)) return 0.0;
  const double inner = integrate_interval(
      [&](double sv) { return f(t0 + lam * d * std::cosh(sv), x); }, sa, sb, opts.time_panels,
      opts.time_order);
  return inner / (2.0 * std::numbers::pi);
}

}  // namespace

double green_closed_form(Dimension n, Bias bias, double tau, double d) {
  const int lam = checked_lambda(bias);
  if (!(d >= 0.0) || !std::isfinite(tau)) throw DomainError("green_closed_form: need d >= 0");
  const double arg = -lam * tau - d;
  if (n == 1) return arg > 0.0 ? 0.5 : 0.0;
  if (n == 2) {
    if (std::fabs(tau) == d) throw SingularityError("green_closed_form: point on the light cone");
    if (!(arg > 0.0)) return 0.0;
    return 1.0 / (2.0 * std::numbers::pi * std::sqrt(tau * tau - d * d));
  }
  throw DomainError("green_closed_form: pointwise form exists for n = 1, 2 only");
}

SourceSupport support_of(const GaussianEnvelope& env, double tail_cutoff) {
  SourceSupport s;
  s.center = env.center;
  s.radius = gaussian_cutoff_radius(0.0, env.beta, tail_cutoff);
  s.t_center = env.t_center;
  s.t_halfwidth = gaussian_cutoff_radius(0.0, env.alpha, tail_cutoff);
  return s;
}

double retarded_potential(Dimension n, Bias bias, const SourceFunction& f,
                          const SourceSupport& support, double t0,
                          std::span<const double> x_star, const QuadratureSpec& spec,
                          const GreenOptions& opts) {
  const int lam = checked_lambda(bias);
  if (n < 1 || n > 3) throw DomainError("retarded_potential: n must lie in {1,2,3}");
  if (static_cast<int>(x_star.size()) != n || static_cast<int>(support.center.size()) != n)
    throw DomainError("retarded_potential: dimension mismatch");
  if (!(support.radius > 0.0) || !(support.t_halfwidth > 0.0))
    throw DomainError("retarded_potential: empty source support");

  // Observers inside the support integrate around themselves, where the kernel is singular;
  // distant observers integrate around the source.
  const double offset = distance(x_star, support.center);
  std::vector<double> center;
  double r_max;
  if (offset <= support.radius) {
    center.assign(x_star.begin(), x_star.end());
    r_max = std::max(offset + support.radius, 2.0 * spec.split_radius);
  } else {
    center = support.center;
    r_max = support.radius;
  }

  const std::vector<double> xs(x_star.begin(), x_star.end());
  Integrand g;
  if (n == 3) {
    g = [&f, &xs, lam, t0](std::span<const double> x) {
      const double d = distance(x, xs);
      return f(t0 + lam * d, x) / (4.0 * std::numbers::pi * d);
    };
  } else if (n == 2) {
    g = [&f, &xs, &support, &opts, lam, t0](std::span<const double> x) {
      return cone_interior_2d(f, support, lam, t0, distance(x, xs), x, opts);
    };
  } else {
    g = [&f, &xs, &support, &opts, lam, t0](std::span<const double> x) {
      return 0.5 * cone_interior_1d(f, support, lam, t0, distance(x, xs), x, opts);
    };
  }
  return integrate_space(n, g, center, r_max, spec);
}

std::complex<double> freq_green(Dimension n, Bias bias, double omega, double d, double gamma) {
  const int lam = checked_lambda(bias);
  using namespace std::complex_literals;
  if (n == 3) {
    if (!(d > 0.0)) throw SingularityError("freq_green: n = 3 needs d > 0");
    return std::exp(1i * (lam * omega * d)) / (4.0 * std::numbers::pi * d);
  }
  if (n == 1) {
    if (!(gamma > 0.0)) throw DomainError("freq_green: n = 1 needs gamma > 0");
    if (!(d >= 0.0)) throw DomainError("freq_green: d must be >= 0");
    const std::complex<double> il(0.0, static_cast<double>(lam));
    return 0.5 * il * std::exp(1i * (lam * omega * d)) / (omega + il * gamma);
  }
  throw DomainError("freq_green: implemented for n = 1 and n = 3");
}

void PulseSource::validate() const {
  if (!(sigma_t > 0.0) || !(sigma_x > 0.0)) throw DomainError("pulse widths must be positive");
  if (emit_center.empty() || emit_center.size() > 3) throw DomainError("pulse centre must have 1..3 components");
}

double PulseSource::operator()(double t, std::span<const double> x) const {
  const double dt = t - emit_time;
  double r2 = 0.0;
  for (std::size_t i = 0; i < emit_center.size(); ++i)
    r2 += (x[i] - emit_center[i]) * (x[i] - emit_center[i]);
  return amplitude * std::exp(-dt * dt / (2.0 * sigma_t * sigma_t) - r2 / (2.0 * sigma_x * sigma_x));
}

SourceSupport PulseSource::support(double tail_cutoff) const {
  return support_of(GaussianEnvelope{emit_center, 0.5 / (sigma_x * sigma_x), emit_time,
                                     0.5 / (sigma_t * sigma_t)},
                    tail_cutoff);
}

double PulseSource::total_integral() const {
  const double s = std::sqrt(2.0 * std::numbers::pi);
  return amplitude * s * sigma_t * std::pow(s * sigma_x, static_cast<double>(emit_center.size()));
}

double pulse_response_3d(const PulseSource& pulse, double d, double t) {
  if (!(d > 0.0)) throw SingularityError("pulse_response_3d: observer at the pulse centre");
  const double s1 = pulse.sigma_t, s2 = pulse.sigma_x, a = t - pulse.emit_time;
  auto half_line = [&](double m2) {
    const double p = 1.0 / (s1 * s1) + 1.0 / (s2 * s2);
    const double m = (a / (s1 * s1) + m2 / (s2 * s2)) / p;
    const double scale = std::exp(-(a - m2) * (a - m2) / (2.0 * (s1 * s1 + s2 * s2)));
    return scale * std::sqrt(std::numbers::pi / (2.0 * p)) * std::erfc(-m * std::sqrt(p / 2.0));
  };
  return pulse.amplitude * s2 * s2 / (2.0 * d) * (half_line(d) - half_line(-d));
}

std::vector<ProfileSample> dispersion_profile(Dimension n, const PulseSource& pulse,
                                              std::span<const double> x_star,
                                              std::span<const double> times,
                                              const QuadratureSpec& spec,
                                              const GreenOptions& opts) {
  pulse.validate();
  if (static_cast<int>(pulse.emit_center.size()) != n || static_cast<int>(x_star.size()) != n)
    throw DomainError("dispersion_profile: dimension mismatch");
  const SourceSupport support = pulse.support(spec.tail_cutoff);
  const SourceFunction f = [&pulse](double t, std::span<const double> x) { return pulse(t, x); };
  const double d = distance(x_star, pulse.emit_center);
  std::vector<ProfileSample> out;
  out.reserve(times.size());
  for (double t : times) {
    ProfileSample s;
    s.t = t;
    s.value = retarded_potential(n, Bias::retarded, f, support, t, x_star, spec, opts);
    if (n == 3 && d > 0.0)
      s.reference = pulse_response_3d(pulse, d, t);
    else if (n == 1)
      s.reference = 0.5 * pulse.total_integral();
    else
      s.reference = std::numeric_limits<double>::quiet_NaN();
    out.push_back(s);
  }
  return out;
}

double full_width_half_max(std::span<const double> t, std::span<const double> v) {
  if (t.size() != v.size() || t.size() < 3) throw DomainError("fwhm: need matching samples");
  const std::size_t ip = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  const double half = 0.5 * v[ip];
  double left = std::numeric_limits<double>::quiet_NaN();
  double right = left;
  for (std::size_t i = ip; i > 0; --i) {
    if (v[i - 1] <= half) {
      left = t[i - 1] + (half - v[i - 1]) * (t[i] - t[i - 1]) / (v[i] - v[i - 1]);
      break;
    }
  }
  for (std::size_t i = ip; i + 1 < v.size(); ++i) {
    if (v[i + 1] <= half) {
      right = t[i] + (v[i] - half) * (t[i + 1] - t[i]) / (v[i] - v[i + 1]);
      break;
    }
  }
  return right - left;
}

}  // namespace waveid
