#pragma once

// Linear IEQ time steppers: first-order backward Euler (LS1), second-order
// BDF2 (LS2-BDF) and second-order Crank-Nicolson (LS2-CN). Each step builds the
// lagged coefficient fields, solves one SPD system and updates U affinely.

#include <optional>
#include <string>
#include <string_view>

#include "chieq/field.hpp"
#include "chieq/physics.hpp"
#include "chieq/solver.hpp"

namespace chieq {

enum class SchemeId { LS1, LS2_BDF, LS2_CN };

std::string_view scheme_name(SchemeId id);
// Accepts "LS1", "LS2-BDF"/"LS2_BDF", "LS2-CN"/"LS2_CN" (case-insensitive).
SchemeId parse_scheme(std::string_view name);

struct SimState {
  ScalarField phi;
  ScalarField u;
  std::optional<ScalarField> phi_prev;
  std::optional<ScalarField> u_prev;
  long step = 0;
  double time = 0.0;
};

struct StepOptions {
  // Evaluate M and H on the 2/3-truncated extrapolated field.
  bool dealias = false;
};

// Everything a step produces besides the new state.
struct StepOutput {
  SimState state;
  ScalarField mu;        // chemical potential (mu^{n+1/2} for CN)
  ScalarField mobility;  // the lagged mobility field used in the step
  double dissipation = 0.0;
  SolveStats stats;
};

// U = sqrt(F(phi0) + B) pointwise.
SimState init_state(const ScalarField& phi0, const PhysParams& p);

class Stepper {
 public:
  Stepper(const GridSpec& grid, const PhysParams& params, SolverCfg cfg = {},
          StepOptions opts = {});

  LinearSolver& solver() { return solver_; }
  const PhysParams& params() const { return params_; }

  StepOutput step_ls1(const SimState& s, double dt);
  StepOutput step_bdf2(const SimState& s, double dt);
  StepOutput step_cn(const SimState& s, double dt);

  // Dispatches on scheme; the two-level schemes need history.
  StepOutput step(SchemeId scheme, const SimState& s, double dt);

  // One LS1 step for the two-level schemes, identity for LS1.
  SimState bootstrap(const SimState& s0, SchemeId scheme, double dt);

  // Builds the operator context at the given lagged state.
  StepOperatorCtx make_ctx(const ScalarField& lagged, double time_coeff, double visc_coeff,
                           double h_coeff);

 private:
  StepOutput finish(const SimState& s, double dt, StepSolution sol, ScalarField u_next,
                    const StepOperatorCtx& ctx);

  LinearSolver solver_;
  PhysParams params_;
  StepOptions opts_;
};

// U updates, pointwise.
// LS1 / CN: U + h/2 (phi_new - phi_old).
ScalarField update_u_one_level(const ScalarField& u_old, const ScalarField& h,
                               const ScalarField& phi_new, const ScalarField& phi_old);
// BDF2: (4U^n - U^{n-1})/3 + h/2 (phi_new - (4 phi^n - phi^{n-1})/3).
ScalarField update_u_bdf2(const ScalarField& u_n, const ScalarField& u_nm1, const ScalarField& h,
                          const ScalarField& phi_new, const ScalarField& phi_n,
                          const ScalarField& phi_nm1);

}  // namespace chieq
