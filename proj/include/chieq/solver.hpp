#pragma once

// Matrix-free Krylov solvers for one linear time step.
//
// Every scheme reduces to the coupled system
//
//   time_coeff * phi - rhs_f = div(M grad mu)
//   mu = -visc_coeff * Lap(phi) + h_coeff * H^2 * phi + g
//
// Splitting phi into its part in the kernel of v -> div(M grad v) (fixed by
// the mass equation) and the remainder psi, and applying the inverse
// quasi-Laplacian, gives the symmetric positive definite problem
//
//   A psi = -time_coeff * invL(psi) + P(psi)   (projected off the kernel)
//
// which is solved by an outer PCG whose operator applications each run an
// inner PCG for invL. All vectors live in Fourier space.

#include <functional>

#include "chieq/field.hpp"
#include "chieq/spectral.hpp"

namespace chieq {

struct SolverCfg {
  double outer_rel_tol = 1e-9;
  double inner_rel_tol = 1e-11;
  int outer_max_iter = 500;
  int inner_max_iter = 1000;

  // Throws ConfigError unless tolerances lie in (0, 1) with inner <= outer.
  void validate() const;
};

struct StepOperatorCtx {
  ScalarField m_field;      // mobility at the scheme's lagged/extrapolated state
  ScalarField h_field;      // H at the same state
  double time_coeff = 1.0;  // 1/dt (LS1, CN) or 3/(2 dt) (BDF2)
  double visc_coeff = 0.0;  // eps^2 (LS1, BDF2) or eps^2/2 (CN)
  double h_coeff = 0.5;     // 1/2 (LS1, BDF2) or 1/4 (CN)

  void validate() const;
};

struct SolveStats {
  int outer_iters = 0;
  int total_inner_iters = 0;
  double final_residual = 0.0;
};

struct StepSolution {
  ScalarField phi;
  ScalarField mu;
  SolveStats stats;
};

class LinearSolver {
 public:
  explicit LinearSolver(const GridSpec& grid, SolverCfg cfg = {});

  Spectral& spectral() { return spectral_; }
  const SolverCfg& cfg() const { return cfg_; }

  // P(phi) = -visc_coeff * Lap(phi) + h_coeff * h^2 * phi.
  ScalarField apply_p(const StepOperatorCtx& ctx, const ScalarField& phi);

  // v with div(m grad v) = u and mean(v) = 0. u must be mean-zero; its
  // grid-scale checkerboard components lie outside the operator's range and
  // are discarded.
  ScalarField invert_variable_laplacian(const ScalarField& u, const ScalarField& m,
                                        int* iters = nullptr);

  ScalarField apply_step_operator(const StepOperatorCtx& ctx, const ScalarField& psi);

  // Solves the coupled system above. mean(phi) is pinned to mass_target; the
  // checkerboard components of phi are rhs_f's divided by time_coeff. guess,
  // when given, seeds the outer iteration.
  StepSolution solve_time_step(const StepOperatorCtx& ctx, const ScalarField& rhs_f,
                               const ScalarField& rhs_g, double mass_target,
                               const ScalarField* guess = nullptr);

 private:
  Spectrum inverse_flux_hat(const Spectrum& u_hat, const ScalarField& m, double m_mean,
                            int& iters);
  Spectrum apply_p_hat(const StepOperatorCtx& ctx, const ScalarField& h2, const Spectrum& x);
  Spectrum apply_a_hat(const StepOperatorCtx& ctx, const ScalarField& h2, double m_mean,
                       const Spectrum& x, int& inner_iters);

  Spectral spectral_;
  SolverCfg cfg_;
};

// PCG on physical-space fields with the discrete L2 inner product. Throws
// NoConvergence when max_iter is exhausted.
struct PcgResult {
  ScalarField x;
  SolveStats stats;
};
PcgResult pcg(const std::function<ScalarField(const ScalarField&)>& apply, const ScalarField& rhs,
              const std::function<ScalarField(const ScalarField&)>& precond, double rel_tol,
              int max_iter);

}  // namespace chieq
