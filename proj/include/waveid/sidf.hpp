#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "waveid/fields.hpp"
#include "waveid/ndgeom.hpp"
#include "waveid/quadrature.hpp"

namespace waveid {

struct SidfContext {
  double t0 = 0.0;
  Bias bias = Bias::retarded;
  std::vector<double> x_star;

  int lambda() const { return lambda_of(bias); }
  void validate(int n) const;
};

enum class SidfKind { ball, space };

struct SidfReport {
  SidfKind kind = SidfKind::space;
  int dimension = 0;
  int lambda = 0;
  double t0 = 0.0;
  std::vector<double> x_star;
  double r2 = 0.0;  // ball radius; unused for the boundary-free form
  double lhs_value = 0.0;
  std::map<int, double> omega;
  std::map<std::string, double> surface_terms;
  double residual = 0.0;
  double refinement_delta = 0.0;
  double wall_time_seconds = 0.0;
};

// Residual rebuilt from the stored terms, in the same operation order the builders use.
double recombine(const SidfReport& report);

// alpha = 0: -eta f, 1: lambda (n-3) zeta psi_t, 2: grad(eta) . grad[psi(t0 + lambda r, x)].
// Every field quantity is taken at the biased time t0 + lambda |x - x_star|.
double k_integrand(int alpha, const ScalarField& field, const SidfContext& ctx, Dimension n,
                   std::span<const double> x);

// Spherical mean of psi(t0 + lambda r, .) over the r-sphere (two-point mean for n = 1).
double surface_term_psi_eta(const ScalarField& field, const SidfContext& ctx, Dimension n,
                            double r, const QuadratureSpec& spec);
// eta(r) times the surface integral of
// Lambda = sum_i (x'_i / r) psi_i - lambda psi_t, both at the biased time.
double surface_term_eta_psi(const ScalarField& field, const SidfContext& ctx, Dimension n,
                            double r, const QuadratureSpec& spec);

// Truncation radius for whole-space integrals, from the field's Gaussian envelope.
double space_radius(const ScalarField& field, const SidfContext& ctx, const QuadratureSpec& spec);

// Volume terms for alpha in {0,1,2}; alpha = 3 is the boundary term of the (eta, psi) ordering.
// The domain must be centred at ctx.x_star; r1 = 0 is the ball, r2 = inf all of space.
double omega(int alpha, const ScalarField& field, const SidfContext& ctx, Dimension n,
             const ShellDomain& dom, const QuadratureSpec& spec);

// Boundary term of the (psi, eta) ordering on a layer: mean(r2) - mean(r1).
double omega3_psi_eta(const ScalarField& field, const SidfContext& ctx, Dimension n, double r1,
                      double r2, const QuadratureSpec& spec);

struct TautologyResult {
  double residual = 0.0;
  double scale = 0.0;               // sum of the magnitudes of the combined terms
  std::array<double, 4> omega{};    // (eta, psi) ordering, alpha = 0..3
  double omega3_psi_eta = 0.0;
};

TautologyResult layer_tautology(const ScalarField& field, const SidfContext& ctx, Dimension n,
                                double r1, double r2, const QuadratureSpec& spec);
TautologyResult symmetric_tautology(const ScalarField& field, const SidfContext& ctx, Dimension n,
                                    double r1, double r2, const QuadratureSpec& spec);
double layer_tautology_residual(const ScalarField& field, const SidfContext& ctx, Dimension n,
                                double r1, double r2, const QuadratureSpec& spec);
double symmetric_tautology_residual(const ScalarField& field, const SidfContext& ctx,
                                    Dimension n, double r1, double r2, const QuadratureSpec& spec);

// residual = psi(t0, x*) - mean(r2) + omega_0 + omega_1 + omega_3 over the ball of radius r2.
SidfReport ball_sidf_report(const ScalarField& field, const SidfContext& ctx, Dimension n,
                            double r2, const QuadratureSpec& spec, bool with_refinement = true);
// residual = psi(t0, x*) + omega_0 + omega_1 over all of space.
SidfReport boundary_free_sidf(const ScalarField& field, const SidfContext& ctx, Dimension n,
                              const QuadratureSpec& spec, bool with_refinement = true);

enum class AposterioriKind { recover_f_3d, omega1_box_1d, full_c26_1d };

AposterioriKind parse_aposteriori_kind(const std::string& name);
std::string aposteriori_kind_name(AposterioriKind kind);

struct AposterioriOptions {
  // Upper bound on integrand evaluations over the whole stencil.
  double max_evaluations = 2.0e9;
};

// Five-point central differences in (t0, x_star) of whole-space omega terms, field held fixed.
//   recover_f_3d:  |box(-omega_0) + f(t0, x*)|                          (n = 3)
//   omega1_box_1d: |box(omega_1)|                                       (n = 1)
//   full_c26_1d:   |box(omega_0) - f(t0, x*) - lambda (n-3) int zeta f_t| (n = 1)
double aposteriori_residual(AposterioriKind kind, const ScalarField& field,
                            const SidfContext& ctx, double h, const QuadratureSpec& spec,
                            const AposterioriOptions& opts = {});

// The stencil value box(F) itself, exposed for diagnostics and tests.
double aposteriori_box(AposterioriKind kind, const ScalarField& field, const SidfContext& ctx,
                       double h, const QuadratureSpec& spec, const AposterioriOptions& opts = {});

}  // namespace waveid
