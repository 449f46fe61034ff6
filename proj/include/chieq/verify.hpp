#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chieq/field.hpp"
#include "chieq/physics.hpp"
#include "chieq/solver.hpp"

namespace chieq {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double observed = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  PhysParams params;
  GridSpec grid{2, 64};
  SolverCfg solver;
  unsigned long long seed = 20170518ULL;
};

// Runs the invariant suite: closure identities, operator symmetry, SPD
// certification, the constant-coefficient oracle, energy stability at large
// steps, mass conservation, the Crank-Nicolson energy identity and the
// uniform fixed point. Failures are report entries, never exceptions.
VerifyReport verify(const VerifyOptions& opts);

void print_report(std::ostream& out, const VerifyReport& report);

// Closed-form solution of the step system when m and h are constants, computed
// mode by mode in Fourier space.
ScalarField constant_coefficient_solve(const GridSpec& grid, double m, double h,
                                       double time_coeff, double visc_coeff, double h_coeff,
                                       const ScalarField& rhs_f, const ScalarField& rhs_g,
                                       double mass_target);

}  // namespace chieq
