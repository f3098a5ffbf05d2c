// Acceptance gate: one PASS/FAIL line per criterion.
//
//   waveid_acceptance [--expect-fail ID]... [--only ID]...
//
// Exit status is 0 when the failing set equals the expected-failure set exactly.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "waveid/green.hpp"
#include "waveid/kernels.hpp"
#include "waveid/ndgeom.hpp"
#include "waveid/quadrature.hpp"
#include "waveid/sidf.hpp"

using namespace waveid;

namespace {

constexpr double pi = std::numbers::pi;

// Pinned tolerances.
constexpr double kGeomRelTol = 1e-14;
constexpr double kHarmonicTol = 1e-4;
constexpr double kHarmonicStep = 1e-4;
constexpr double kFluxTol = 1e-8;
constexpr double kTautologyRelTol = 1e-6;
constexpr double kBallRelTol = 1e-5;
constexpr double kBallAbsTol = 1e-8;
constexpr double kSpaceRelTol = 1e-3;
constexpr double kGreen3Tol = 1e-4;
constexpr double kGreen1Tol = 1e-3;
constexpr double kGreen2Tol = 1e-2;
constexpr double kFwhmTol = 0.05;
constexpr double kLateRatio = 1e-6;
constexpr double kPlateauFraction = 0.45;
constexpr double kTailFloor = 1e-3;
constexpr double kRecoverTol = 0.05;
constexpr double kOmega1BoxTol = 1e-3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Setup {
  SidfContext ctx;
  GaussianField field;
};

Setup default_setup(int n, Bias b) {
  SidfContext ctx{0.0, b, std::vector<double>(n, 0.0)};
  return {ctx, GaussianField(default_gaussian_params(n, ctx.t0, ctx.x_star))};
}

const QuadratureSpec kSpec;
constexpr Bias kBiases[] = {Bias::retarded, Bias::advanced};

Outcome geometry() {
  const double V[] = {2, pi, 4 * pi / 3, pi * pi / 2, 8 * pi * pi / 15};
  const double S[] = {2, 2 * pi, 4 * pi, 2 * pi * pi, 8 * pi * pi / 3};
  const double A[] = {-0.5, 1 / (2 * pi), 1 / (4 * pi), 1 / (4 * pi * pi), 1 / (8 * pi * pi)};
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    const Dimension d(n);
    worst = std::max(worst, std::fabs(unit_ball_volume(d) - V[n - 1]) / std::fabs(V[n - 1]));
    worst = std::max(worst, std::fabs(unit_sphere_area(d) - S[n - 1]) / std::fabs(S[n - 1]));
    worst = std::max(worst, std::fabs(kernel_constant(d) - A[n - 1]) / std::fabs(A[n - 1]));
  }
  return {worst <= kGeomRelTol, "max rel err " + fmt("%.2e", worst)};
}

Outcome harmonicity() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(0.5, 3.0);
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    auto f = [n](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += v * v;
      return eta(Dimension(n), std::sqrt(s));
    };
    for (int k = 0; k < 100; ++k) {
      std::vector<double> x(n);
      double s = 0.0;
      for (double& c : x) {
        c = nd(rng);
        s += c * c;
      }
      const double r = ur(rng);
      for (double& c : x) c *= r / std::sqrt(s);
      worst = std::max(worst, std::fabs(fd_laplacian(f, x, kHarmonicStep)));
    }
  }
  return {worst <= kHarmonicTol, "max |lap eta| " + fmt("%.2e", worst) + " over 600 points"};
}

Outcome flux() {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n)
    for (double r : {0.25, 1.0, 4.0})
      worst = std::max(worst, std::fabs(flux_normalization(Dimension(n), r, kSpec) + 1.0));
  return {worst <= kFluxTol, "max |flux + 1| " + fmt("%.2e", worst)};
}

Outcome tautologies(const QuadratureSpec& spec) {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (Bias b : kBiases) {
      const auto s = default_setup(n, b);
      const auto layer = layer_tautology(s.field, s.ctx, Dimension(n), 0.5, 2.5, spec);
      const auto sym = symmetric_tautology(s.field, s.ctx, Dimension(n), 0.5, 2.5, spec);
      worst = std::max(worst, layer.residual / layer.scale);
      worst = std::max(worst, sym.residual / sym.scale);
    }
  }
  return {worst <= kTautologyRelTol, "max residual/scale " + fmt("%.2e", worst)};
}

Outcome ball_forms() {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n)
    for (Bias b : kBiases)
      for (double r2 : {2.0, 3.0, 4.0}) {
        const auto s = default_setup(n, b);
        const auto rep = ball_sidf_report(s.field, s.ctx, Dimension(n), r2, kSpec, false);
        const double tol = kBallRelTol * std::fabs(rep.lhs_value) + kBallAbsTol;
        worst = std::max(worst, std::fabs(rep.residual) / tol);
      }
  return {worst <= 1.0, "max |residual|/tolerance " + fmt("%.2e", worst)};
}

Outcome space_forms() {
  double worst = 0.0;
  bool omega1_zero = true;
  for (int n = 1; n <= 3; ++n)
    for (Bias b : kBiases) {
      const auto s = default_setup(n, b);
      const auto rep = boundary_free_sidf(s.field, s.ctx, Dimension(n), kSpec, false);
      worst = std::max(worst, std::fabs(rep.residual) / std::fabs(rep.lhs_value));
      if (n == 3 && rep.omega.at(1) != 0.0) omega1_zero = false;
    }
  return {worst <= kSpaceRelTol && omega1_zero,
          "max rel residual " + fmt("%.2e", worst) +
              (omega1_zero ? ", omega_1 == 0 at n=3" : ", omega_1 != 0 at n=3")};
}

Outcome green_oracles() {
  const double tol[] = {kGreen1Tol, kGreen2Tol, kGreen3Tol};
  std::string detail;
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    const auto s = default_setup(n, Bias::retarded);
    const SourceSupport sup = support_of(*s.field.envelope(), kSpec.tail_cutoff);
    const SourceFunction f = [&s](double t, std::span<const double> x) { return s.field.source(t, x); };
    const double psi = s.field.evaluate(DerivativeSelector::value(), s.ctx.t0, s.ctx.x_star);
    double worst = 0.0;
    for (Bias b : kBiases) {
      const double v = retarded_potential(Dimension(n), b, f, sup, s.ctx.t0, s.ctx.x_star, kSpec);
      worst = std::max(worst, std::fabs(v - psi) / std::fabs(psi));
    }
    ok = ok && worst <= tol[n - 1];
    detail += (n > 1 ? ", " : "") + std::string("n=") + std::to_string(n) + " " + fmt("%.2e", worst);
  }
  return {ok, "rel err " + detail};
}

Outcome dispersion() {
  PulseSource pulse;  // A = 1, sigma_t = 0.5, sigma_x = 0.1, emitted at t = 0 from the origin
  const double d = 5.0;
  const QuadratureSpec& spec = kSpec;
  std::string detail;
  bool ok = true;

  {  // n = 3: sharp, undistorted arrival
    pulse.emit_center = {0.0, 0.0, 0.0};
    const std::vector<double> xs = {d, 0.0, 0.0};
    std::vector<double> times, vals;
    for (double t = d - 3.0; t <= d + 3.0 + 1e-9; t += 0.05) times.push_back(t);
    for (const auto& smp : dispersion_profile(Dimension(3), pulse, xs, times, spec)) vals.push_back(smp.value);
    const double fwhm = full_width_half_max(times, vals);
    const double pulse_fwhm = 2.0 * std::sqrt(2.0 * std::log(2.0)) * pulse.sigma_t;
    const double peak = *std::max_element(vals.begin(), vals.end());
    const double late_t = pulse.emit_time + d + 6.0 * pulse.sigma_t;
    const double late = dispersion_profile(Dimension(3), pulse, xs, std::vector<double>{late_t}, spec)[0].value;
    const double dev = std::fabs(fwhm - pulse_fwhm) / pulse_fwhm;
    ok = ok && dev < kFwhmTol && std::fabs(late) < kLateRatio * peak;
    detail += "n=3 fwhm dev " + fmt("%.3f", dev) + " late/peak " + fmt("%.1e", std::fabs(late) / peak);
  }
  double plateau = 0.0;
  {  // n = 1: persistent tail
    pulse.emit_center = {0.0};
    const std::vector<double> xs = {d};
    plateau = 0.5 * pulse.total_integral();
    const double t = pulse.emit_time + d + 10.0 * pulse.sigma_t;
    const double v = dispersion_profile(Dimension(1), pulse, xs, std::vector<double>{t}, spec)[0].value;
    ok = ok && v >= kPlateauFraction * plateau;
    detail += "; n=1 late/plateau " + fmt("%.4f", v / plateau);
  }
  {  // n = 2: decaying algebraic tail
    pulse.emit_center = {0.0, 0.0};
    const std::vector<double> xs = {d, 0.0};
    std::vector<double> times;
    for (double t = d - 1.0; t <= d + 2.0 + 1e-9; t += 0.1) times.push_back(t);
    const double tail_t = pulse.emit_time + d + 10.0 * pulse.sigma_t;
    times.push_back(tail_t);
    const auto prof = dispersion_profile(Dimension(2), pulse, xs, times, spec);
    double peak = 0.0;
    for (std::size_t i = 0; i + 1 < prof.size(); ++i) peak = std::max(peak, prof[i].value);
    const double tail = prof.back().value;
    ok = ok && tail >= kTailFloor * peak && tail <= plateau;
    detail += "; n=2 tail/peak " + fmt("%.2e", tail / peak) + " tail/plateau(n=1) " + fmt("%.3f", tail / plateau);
  }
  return {ok, detail};
}

Outcome recover_f() {
  const auto s = default_setup(3, Bias::retarded);
  const double res = aposteriori_residual(AposterioriKind::recover_f_3d, s.field, s.ctx, 1e-2, kSpec);
  const double f = std::fabs(s.field.source(s.ctx.t0, s.ctx.x_star));
  return {res <= kRecoverTol * f, "|box psi_rec + f| / |f| = " + fmt("%.2e", res / f)};
}

Outcome omega1_box() {
  const auto s = default_setup(1, Bias::retarded);
  const double box = aposteriori_box(AposterioriKind::omega1_box_1d, s.field, s.ctx, 1e-3, kSpec);
  const double psi_tt = s.field.evaluate(DerivativeSelector::dtt(), s.ctx.t0, s.ctx.x_star);
  return {std::fabs(box) <= kOmega1BoxTol,
          "|box omega_1| = " + fmt("%.6f", std::fabs(box)) + ", 2 psi_tt(t0,x*) = " + fmt("%.6f", 2 * psi_tt)};
}

Outcome refinement() {
  // Same quantities as criteria 4-6 at base and doubled orders.
  double worst = 0.0;  // |change| / tolerance
  for (int n = 1; n <= 3; ++n) {
    const QuadratureSpec fine = kSpec.refined(n);
    for (Bias b : kBiases) {
      const auto s = default_setup(n, b);
      for (int which = 0; which < 2; ++which) {
        auto run = [&](const QuadratureSpec& q) {
          return which == 0 ? layer_tautology(s.field, s.ctx, Dimension(n), 0.5, 2.5, q)
                            : symmetric_tautology(s.field, s.ctx, Dimension(n), 0.5, 2.5, q);
        };
        const auto a = run(kSpec), c = run(fine);
        worst = std::max(worst, std::fabs(a.residual - c.residual) / (kTautologyRelTol * a.scale));
      }
      for (double r2 : {2.0, 3.0, 4.0}) {
        const auto rep = ball_sidf_report(s.field, s.ctx, Dimension(n), r2, kSpec, true);
        worst = std::max(worst, rep.refinement_delta / (kBallRelTol * std::fabs(rep.lhs_value) + kBallAbsTol));
      }
      const auto rep = boundary_free_sidf(s.field, s.ctx, Dimension(n), kSpec, true);
      worst = std::max(worst, rep.refinement_delta / (kSpaceRelTol * std::fabs(rep.lhs_value)));
    }
  }
  return {worst <= 1.0, "max |delta residual|/tolerance " + fmt("%.2e", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> expect_fail, only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if ((a == "--expect-fail" || a == "--only") && i + 1 < argc) {
      (a == "--only" ? only : expect_fail).insert(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail ID]... [--only ID]...\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {"1", "geometry table", 1.0, geometry},
      {"2", "harmonicity of eta", 1.0, harmonicity},
      {"3", "flux normalization", 5.0, flux},
      {"4", "layer tautologies", 60.0, [] { return tautologies(kSpec); }},
      {"5", "ball SIDF", 120.0, ball_forms},
      {"6", "boundary-free SIDF", 120.0, space_forms},
      {"7", "Green-function oracles", 180.0, green_oracles},
      {"8", "dispersion dichotomy", 120.0, dispersion},
      {"9a", "a-posteriori: recovered source (n=3)", 600.0, recover_f},
      {"9b", "a-posteriori: box of omega_1 (n=1)", 600.0, omega1_box},
      {"10", "refinement convergence", 600.0, refinement},
  };

  std::set<std::string> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) failed.insert(c.id);
    std::string tag = pass ? "PASS" : "FAIL";
    if (!pass && expect_fail.count(c.id)) tag = "FAIL (expected)";
    if (pass && expect_fail.count(c.id)) tag = "PASS (unexpected)";
    std::printf("%-17s %-3s %-40s %s; %.2f s (budget %.0f s)%s\n", tag.c_str(), c.id.c_str(),
                c.name.c_str(), o.detail.c_str(), secs, c.budget_seconds,
                in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }

  std::set<std::string> expected_run;
  for (const auto& id : expect_fail)
    if (only.empty() || only.count(id)) expected_run.insert(id);
  const bool match = failed == expected_run;
  std::printf("%zu criteria failed%s\n", failed.size(),
              match ? (failed.empty() ? "" : " (all documented)") : " (differs from expectation)");
  return match ? 0 : 1;
}
