#include "chieq/diagnostics.hpp"

#include <cmath>

#include "chieq/errors.hpp"

namespace chieq {

double energy_original(Spectral& sp, const ScalarField& phi, const PhysParams& p) {
  double bulk = 0.0;
  for (double v : phi.values()) bulk += free_energy(v, p);
  const double eps2 = p.epsilon * p.epsilon;
  return 0.5 * eps2 * sp.gradient_norm_sq(phi) + bulk * phi.grid().cell_volume();
}

double energy_ieq(Spectral& sp, const ScalarField& phi, const ScalarField& u, const PhysParams& p) {
  const double eps2 = p.epsilon * p.epsilon;
  return 0.5 * eps2 * sp.gradient_norm_sq(phi) + inner(u, u) -
         p.bshift * phi.grid().domain_volume();
}

double energy_ieq_change(Spectral& sp, const ScalarField& phi_old, const ScalarField& u_old,
                         const ScalarField& phi_new, const ScalarField& u_new,
                         const PhysParams& p) {
  const double eps2 = p.epsilon * p.epsilon;
  const ScalarField dphi = phi_new - phi_old;
  const ScalarField du = u_new - u_old;
  return -0.5 * eps2 * inner(sp.laplacian(dphi), phi_new + phi_old) + inner(du, u_new + u_old);
}

double energy_bdf2(Spectral& sp, const ScalarField& phi, const ScalarField& phi_prev,
                   const ScalarField& u, const ScalarField& u_prev, const PhysParams& p) {
  ScalarField phi2 = 2.0 * phi;
  phi2 -= phi_prev;
  ScalarField u2 = 2.0 * u;
  u2 -= u_prev;
  const double eps2 = p.epsilon * p.epsilon;
  const double grad = 0.5 * (sp.gradient_norm_sq(phi) + sp.gradient_norm_sq(phi2));
  const double bulk = 0.5 * (inner(u, u) + inner(u2, u2));
  return 0.5 * eps2 * grad + bulk - p.bshift * phi.grid().domain_volume();
}

double energy_modified(Spectral& sp, const SimState& s, SchemeId scheme, const PhysParams& p) {
  if (scheme == SchemeId::LS2_BDF) {
    if (!s.phi_prev || !s.u_prev) {
      throw MissingHistory("the BDF2 energy needs the previous time level");
    }
    return energy_bdf2(sp, s.phi, *s.phi_prev, s.u, *s.u_prev, p);
  }
  return energy_ieq(sp, s.phi, s.u, p);
}

double dissipation_rate(Spectral& sp, const ScalarField& mu, const ScalarField& m) {
  return sp.flux_energy(mu, m);
}

double mass(const ScalarField& phi) {
  double s = 0.0;
  for (double v : phi.values()) s += v;
  return s * phi.grid().cell_volume();
}

double u_drift(const SimState& s, const PhysParams& p) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.phi.size(); ++i) {
    worst = std::max(worst, std::abs(s.u[i] - ieq_variable(s.phi[i], p)));
  }
  return worst;
}

double u_drift_l2(const SimState& s, const PhysParams& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.phi.size(); ++i) {
    const double d = s.u[i] - ieq_variable(s.phi[i], p);
    acc += d * d;
  }
  return std::sqrt(acc * s.phi.grid().cell_volume());
}

IdentityAudit audit_energy_identity_increments(const std::vector<double>& increments,
                                               const std::vector<double>& dissipation, double dt,
                                               double rel_tol) {
  IdentityAudit out;
  for (std::size_t k = 0; k < increments.size() && k < dissipation.size(); ++k) {
    const double d = dissipation[k];
    const double defect = std::abs(increments[k] / dt + d);
    const double ratio = d > 0.0 ? defect / d : (defect == 0.0 ? 0.0 : INFINITY);
    if (out.worst_step < 0 || ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_step = static_cast<long>(k);
    }
  }
  out.ok = out.worst_ratio <= rel_tol;
  return out;
}

MonotonicityAudit audit_monotone(const std::vector<double>& energies, double rel_tol) {
  MonotonicityAudit out;
  for (std::size_t k = 0; k + 1 < energies.size(); ++k) {
    if (!std::isfinite(energies[k + 1])) {
      out.ok = false;
      out.worst_violation = INFINITY;
      out.worst_step = static_cast<long>(k + 1);
      return out;
    }
    const double scale = std::max(std::abs(energies[k]), 1e-300);
    const double rise = (energies[k + 1] - energies[k]) / scale;
    if (out.worst_step < 0 || rise > out.worst_violation) {
      out.worst_violation = rise;
      out.worst_step = static_cast<long>(k + 1);
    }
  }
  out.ok = out.worst_violation <= rel_tol;
  return out;
}

IdentityAudit audit_energy_identity(const std::vector<double>& energies,
                                    const std::vector<double>& dissipation, double dt,
                                    double rel_tol, std::size_t first) {
  IdentityAudit out;
  for (std::size_t k = first; k + 1 < energies.size() && k + 1 < dissipation.size(); ++k) {
    const double d = dissipation[k + 1];
    const double defect = std::abs((energies[k + 1] - energies[k]) / dt + d);
    const double ratio = d > 0.0 ? defect / d : (defect == 0.0 ? 0.0 : INFINITY);
    if (out.worst_step < 0 || ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_step = static_cast<long>(k + 1);
    }
  }
  out.ok = out.worst_ratio <= rel_tol;
  return out;
}

}  // namespace chieq
