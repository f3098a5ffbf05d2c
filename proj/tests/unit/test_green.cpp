#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "waveid/errors.hpp"
#include "waveid/green.hpp"
#include "waveid/sidf.hpp"

using namespace waveid;
constexpr double pi = std::numbers::pi;

namespace {

const QuadratureSpec kSpec;

struct Setup {
  std::vector<double> xs;
  GaussianField field;
  SourceSupport support;
  SourceFunction f;
};

Setup make(int n) {
  std::vector<double> xs(n, 0.0);
  GaussianField g(default_gaussian_params(n, 0.0, xs));
  Setup s{xs, g, support_of(*g.envelope(), kSpec.tail_cutoff), {}};
  return s;
}

SourceFunction source_of(const GaussianField& g) {
  return [&g](double t, std::span<const double> x) { return g.source(t, x); };
}

}  // namespace

TEST_CASE("closed-form Green functions") {
  CHECK(green_closed_form(Dimension(1), Bias::retarded, 2.0, 1.0) == 0.5);
  CHECK(green_closed_form(Dimension(1), Bias::retarded, 0.5, 1.0) == 0.0);
  CHECK(green_closed_form(Dimension(2), Bias::retarded, 2.0, 1.0) ==
        doctest::Approx(1.0 / (2 * pi * std::sqrt(3.0))).epsilon(1e-14));
  CHECK_THROWS_AS(green_closed_form(Dimension(2), Bias::retarded, 1.0, 1.0), SingularityError);
  CHECK_THROWS_AS(green_closed_form(Dimension(3), Bias::retarded, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(green_closed_form(Dimension(1), Bias::unbiased, 2.0, 1.0), DomainError);
}

TEST_CASE("Green function supports are causal") {
  for (int n : {1, 2}) {
    for (double d : {0.0, 0.5, 2.0}) {
      for (double tau = -5.0; tau <= 5.0; tau += 0.37) {
        if (std::fabs(std::fabs(tau) - d) < 1e-9) continue;
        if (tau < d) CHECK(green_closed_form(Dimension(n), Bias::retarded, tau, d) == 0.0);
        if (tau > -d) CHECK(green_closed_form(Dimension(n), Bias::advanced, tau, d) == 0.0);
      }
    }
  }
}

TEST_CASE("frequency-domain kernels") {
  const auto g0 = freq_green(Dimension(3), Bias::retarded, 0.0, 1.0, 0.1);
  CHECK(g0.real() == doctest::Approx(1 / (4 * pi)).epsilon(1e-15));
  CHECK(g0.imag() == 0.0);
  for (double w : {0.0, 1.0, 10.0})
    CHECK(std::abs(freq_green(Dimension(3), Bias::advanced, w, 2.5, 0.1)) ==
          doctest::Approx(1 / (4 * pi * 2.5)).epsilon(1e-14));
  CHECK_THROWS_AS(freq_green(Dimension(3), Bias::retarded, 1.0, 0.0, 0.1), SingularityError);
  CHECK_THROWS_AS(freq_green(Dimension(1), Bias::retarded, 1.0, 0.0, 0.0), DomainError);

  // 1/2 int_d^inf exp(i lambda omega xi - gamma (xi - d)) dxi, summed numerically
  for (Bias b : {Bias::retarded, Bias::advanced}) {
    for (double d : {0.0, 0.7}) {
      const double lam = lambda_of(b), w = 1.0, gam = 0.1;
      auto re = [&](double xi) { return 0.5 * std::cos(lam * w * xi) * std::exp(-gam * (xi - d)); };
      auto im = [&](double xi) { return 0.5 * std::sin(lam * w * xi) * std::exp(-gam * (xi - d)); };
      std::vector<double> edges;
      for (double e = d; e <= d + 420.0; e += 1.0) edges.push_back(e);
      const std::complex<double> ref(oracle::piecewise_simpson(re, edges, 1e-13),
                                     oracle::piecewise_simpson(im, edges, 1e-13));
      const auto got = freq_green(Dimension(1), b, w, d, gam);
      CHECK(std::abs(got - ref) <= 1e-9);
    }
  }
  const auto ex = freq_green(Dimension(1), Bias::retarded, 1.0, 0.0, 0.1);
  CHECK(ex.real() == doctest::Approx(0.0495049504950495).epsilon(1e-12));
  CHECK(ex.imag() == doctest::Approx(-0.495049504950495).epsilon(1e-12));
}

TEST_CASE("three-dimensional retarded potential reproduces psi") {
  auto s = make(3);
  const auto f = source_of(s.field);
  const double psi = s.field.evaluate(DerivativeSelector::value(), 0.0, s.xs);
  for (Bias b : {Bias::retarded, Bias::advanced}) {
    const double v = retarded_potential(Dimension(3), b, f, s.support, 0.0, s.xs, kSpec);
    CHECK(oracle::rel_err(v, psi) <= 1e-4);
    SidfContext ctx{0.0, b, s.xs};
    const ShellDomain space{0.0, std::numeric_limits<double>::infinity(), s.xs};
    const double minus_omega0 = -omega(0, s.field, ctx, Dimension(3), space, kSpec);
    CHECK(oracle::rel_err(v, minus_omega0) <= 1e-10);
  }
  const SourceFunction zero = [](double, std::span<const double>) { return 0.0; };
  CHECK(retarded_potential(Dimension(3), Bias::retarded, zero, s.support, 0.0, s.xs, kSpec) == 0.0);
}

TEST_CASE("one-dimensional cone integral reproduces psi and the SIDF") {
  auto s = make(1);
  const auto f = source_of(s.field);
  const double psi = s.field.evaluate(DerivativeSelector::value(), 0.0, s.xs);
  for (Bias b : {Bias::retarded, Bias::advanced}) {
    const double v = retarded_potential(Dimension(1), b, f, s.support, 0.0, s.xs, kSpec);
    CHECK(oracle::rel_err(v, psi) <= 1e-3);
    SidfContext ctx{0.0, b, s.xs};
    const auto rep = boundary_free_sidf(s.field, ctx, Dimension(1), kSpec, false);
    const double reconstructed = -(rep.omega.at(0) + rep.omega.at(1));
    CHECK(oracle::rel_err(v, reconstructed) <= 1e-3);
  }
}

TEST_CASE("two-dimensional cone integral reproduces psi") {
  auto s = make(2);
  const auto f = source_of(s.field);
  const double psi = s.field.evaluate(DerivativeSelector::value(), 0.0, s.xs);
  const double v = retarded_potential(Dimension(2), Bias::retarded, f, s.support, 0.0, s.xs, kSpec);
  CHECK(oracle::rel_err(v, psi) <= 1e-2);
}

TEST_CASE("three-dimensional pulse response") {
  PulseSource p;
  p.emit_center = {0.0, 0.0, 0.0};
  const double d = 5.0;
  // Independent reduction: A sx^2/(2d) int_0^inf e^{-(t-r)^2/2st^2}[e^{-(r-d)^2/2sx^2} - e^{-(r+d)^2/2sx^2}] dr
  auto oracle_value = [&](double t) {
    auto g = [&](double r) {
      return std::exp(-std::pow(t - p.emit_time - r, 2) / (2 * p.sigma_t * p.sigma_t)) *
             (std::exp(-std::pow(r - d, 2) / (2 * p.sigma_x * p.sigma_x)) -
              std::exp(-std::pow(r + d, 2) / (2 * p.sigma_x * p.sigma_x)));
    };
    return p.amplitude * p.sigma_x * p.sigma_x / (2 * d) *
           oracle::piecewise_simpson(g, {0.0, d - 1.5, d - 0.5, d, d + 0.5, d + 1.5, d + 10.0}, 1e-16);
  };
  for (double t : {4.0, 4.8, 5.0, 5.3, 6.1}) {
    CHECK(oracle::rel_err(pulse_response_3d(p, d, t), oracle_value(t)) <= 1e-9);
  }
  const std::vector<double> xs = {d, 0.0, 0.0};
  const std::vector<double> times = {4.5, 5.0, 5.5, 5.0 + 6 * p.sigma_t};
  const auto prof = dispersion_profile(Dimension(3), p, xs, times, kSpec);
  for (const auto& smp : prof) {
    const double ref = oracle_value(smp.t);
    CHECK(std::fabs(smp.value - ref) <= 1e-6 * oracle_value(5.0));
    CHECK(smp.reference == doctest::Approx(ref).epsilon(1e-8));
  }
  CHECK(prof.back().value < 1e-6 * prof[1].value);
}

TEST_CASE("zero pulse gives a zero profile") {
  PulseSource p;
  p.amplitude = 0.0;
  p.emit_center = {0.0};
  const std::vector<double> xs = {3.0};
  const std::vector<double> times = {0.0, 3.0, 9.0};
  for (const auto& smp : dispersion_profile(Dimension(1), p, xs, times, kSpec)) CHECK(smp.value == 0.0);
}

TEST_CASE("full width at half maximum of a sampled Gaussian") {
  std::vector<double> t, v;
  for (double x = -4.0; x <= 4.0; x += 0.01) {
    t.push_back(x);
    v.push_back(std::exp(-x * x / (2 * 0.5 * 0.5)));
  }
  CHECK(full_width_half_max(t, v) == doctest::Approx(2 * std::sqrt(2 * std::log(2.0)) * 0.5).epsilon(1e-4));
}
