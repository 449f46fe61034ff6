#pragma once

// Discrete energies, mass, dissipation and U-drift.
//
// ||grad phi||^2 is evaluated as -<Lap phi, phi> with the same Laplacian the
// steppers use, and the dissipation with the same flux gradient as the
// mobility operator, so the discrete energy identities hold to solver
// tolerance rather than to quadrature error.

#include <vector>

#include "chieq/field.hpp"
#include "chieq/physics.hpp"
#include "chieq/schemes.hpp"
#include "chieq/spectral.hpp"

namespace chieq {

struct EnergyRecord {
  long step = 0;
  double time = 0.0;
  double e_original = 0.0;
  double e_modified = 0.0;
  double mass = 0.0;
  double dissipation = 0.0;
  double u_drift = 0.0;
  double u_drift_l2 = 0.0;
  int outer_iters = 0;
  int inner_iters = 0;
};

// int (eps^2/2 |grad phi|^2 + F(phi)) dx, rectangle rule.
double energy_original(Spectral& sp, const ScalarField& phi, const PhysParams& p);

// eps^2/2 ||grad phi||^2 + ||U||^2 - B |Omega|.
double energy_ieq(Spectral& sp, const ScalarField& phi, const ScalarField& u, const PhysParams& p);

// energy_ieq(new) - energy_ieq(old) in factored form,
// eps^2/2 <grad(dphi), grad(phi_new + phi_old)> + <dU, U_new + U_old>, which
// avoids the cancellation between ||U||^2 and B |Omega| when the change over a
// step is tiny.
double energy_ieq_change(Spectral& sp, const ScalarField& phi_old, const ScalarField& u_old,
                         const ScalarField& phi_new, const ScalarField& u_new,
                         const PhysParams& p);

// Two-level BDF2 Lyapunov functional built from (phi, U) and the previous level.
double energy_bdf2(Spectral& sp, const ScalarField& phi, const ScalarField& phi_prev,
                   const ScalarField& u, const ScalarField& u_prev, const PhysParams& p);

// Scheme-specific modified energy of a state. LS2-BDF needs history and
// throws MissingHistory without it.
double energy_modified(Spectral& sp, const SimState& s, SchemeId scheme, const PhysParams& p);

// ||sqrt(m) grad mu||^2.
double dissipation_rate(Spectral& sp, const ScalarField& mu, const ScalarField& m);

double mass(const ScalarField& phi);

// max |U - sqrt(F(phi) + B)|.
double u_drift(const SimState& s, const PhysParams& p);
double u_drift_l2(const SimState& s, const PhysParams& p);

struct MonotonicityAudit {
  bool ok = true;
  double worst_violation = 0.0;  // max over steps of (E^{k+1} - E^k) / |E^k|
  long worst_step = -1;          // index k + 1 of the worst increase
};

// Checks that energies never increase by more than rel_tol * |E|.
MonotonicityAudit audit_monotone(const std::vector<double>& energies, double rel_tol);

struct IdentityAudit {
  bool ok = true;
  double worst_ratio = 0.0;  // max |dE/dt + D| / D
  long worst_step = -1;
};

// Checks |(E^{k+1} - E^k)/dt + D^{k+1}| <= rel_tol * D^{k+1} for k in
// [first, energies.size() - 1). dissipation[k] belongs to the step ending at k.
IdentityAudit audit_energy_identity(const std::vector<double>& energies,
                                    const std::vector<double>& dissipation, double dt,
                                    double rel_tol, std::size_t first = 0);

// Same check with precomputed increments: increments[k] and dissipation[k]
// belong to the same step; worst_step is the index k.
IdentityAudit audit_energy_identity_increments(const std::vector<double>& increments,
                                               const std::vector<double>& dissipation, double dt,
                                               double rel_tol);

}  // namespace chieq
