#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "waveid/fields.hpp"
#include "waveid/ndgeom.hpp"
#include "waveid/quadrature.hpp"

namespace waveid {

struct GreenSample {
  double tau = 0.0;  // observation time minus source time
  double d = 0.0;    // observation-source distance
  double value = 0.0;
};

// n = 1: H(-lambda tau - d) / 2.  n = 2: H(-lambda tau - d) / (2 pi sqrt(tau^2 - d^2)).
double green_closed_form(Dimension n, Bias bias, double tau, double d);

using SourceFunction = std::function<double(double t, std::span<const double> x)>;

// Where the source lives: beyond `radius` from `center` and outside
// [t_center - t_halfwidth, t_center + t_halfwidth] it is below rounding.
struct SourceSupport {
  std::vector<double> center;
  double radius = 0.0;
  double t_center = 0.0;
  double t_halfwidth = 0.0;
};

SourceSupport support_of(const GaussianEnvelope& env, double tail_cutoff);

struct GreenOptions {
  int time_panels = 24;  // composite Gauss-Legendre for the inner time integral (n = 1, 2)
  int time_order = 12;
};

// Forced solution psi(t0, x_star) of psi_tt - laplacian psi = f by the Green function of
// dimension n. n = 3 collapses the time integral onto the light cone; n = 1, 2 integrate
// over the interior of the cone.
double retarded_potential(Dimension n, Bias bias, const SourceFunction& f,
                          const SourceSupport& support, double t0,
                          std::span<const double> x_star, const QuadratureSpec& spec,
                          const GreenOptions& opts = {});

// n = 3: exp(i lambda omega d) / (4 pi d).  n = 1: (i lambda / 2) exp(i lambda omega d) / (omega + i lambda gamma).
std::complex<double> freq_green(Dimension n, Bias bias, double omega, double d, double gamma);

struct PulseSource {
  double amplitude = 1.0;
  double sigma_t = 0.5;
  double sigma_x = 0.1;
  double emit_time = 0.0;
  std::vector<double> emit_center;

  void validate() const;
  double operator()(double t, std::span<const double> x) const;
  SourceSupport support(double tail_cutoff) const;
  // Integral of the pulse over time and space.
  double total_integral() const;
};

struct ProfileSample {
  double t = 0.0;
  double value = 0.0;
  double reference = 0.0;  // NaN when no reference exists
};

// Retarded response at x_star for each t in `times`.
// Reference column: exact spherical-average convolution (n = 3), the plateau total/2 (n = 1).
std::vector<ProfileSample> dispersion_profile(Dimension n, const PulseSource& pulse,
                                              std::span<const double> x_star,
                                              std::span<const double> times,
                                              const QuadratureSpec& spec,
                                              const GreenOptions& opts = {});

// Closed form of the n = 3 response to a Gaussian pulse observed at distance d.
double pulse_response_3d(const PulseSource& pulse, double d, double t);

// Full width at half maximum of sampled data, by linear interpolation of the crossings.
double full_width_half_max(std::span<const double> t, std::span<const double> v);

}  // namespace waveid
