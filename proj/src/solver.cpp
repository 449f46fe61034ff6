#include "chieq/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "chieq/errors.hpp"
#include "chieq/pcg.hpp"

namespace chieq {

void SolverCfg::validate() const {
  auto in_unit = [](double t) { return t > 0.0 && t < 1.0; };
  if (!in_unit(outer_rel_tol) || !in_unit(inner_rel_tol)) {
    throw ConfigError("solver tolerances must lie in (0, 1)");
  }
  if (inner_rel_tol > outer_rel_tol) {
    throw ConfigError("inner tolerance must not exceed outer tolerance");
  }
  if (outer_max_iter < 1 || inner_max_iter < 1) {
    throw ConfigError("iteration caps must be positive");
  }
}

void StepOperatorCtx::validate() const {
  require_same_grid(m_field, h_field);
  for (double v : m_field.values()) {
    if (!(v > 0.0)) throw DomainError("mobility field must be strictly positive");
  }
  if (!(time_coeff > 0.0) || !(visc_coeff > 0.0) || !(h_coeff > 0.0)) {
    throw DomainError("step operator coefficients must be positive");
  }
}

LinearSolver::LinearSolver(const GridSpec& grid, SolverCfg cfg)
    : spectral_(grid), cfg_(cfg) {
  cfg_.validate();
}

Spectrum LinearSolver::inverse_flux_hat(const Spectrum& u_hat, const ScalarField& m,
                                        double m_mean, int& iters) {
  const std::size_t nm = spectral_.num_modes();
  const auto k2 = spectral_.flux_symbol();

  // Solve (-L) v = -u on the range of L.
  Spectrum rhs(nm);
  for (std::size_t i = 0; i < nm; ++i) rhs[i] = k2[i] == 0.0 ? Complex(0.0) : -u_hat[i];

  auto apply = [&](const Spectrum& x) {
    Spectrum y = spectral_.variable_laplacian_hat(x, m);
    for (auto& c : y) c = -c;
    return y;
  };
  auto precond = [&](const Spectrum& r) {
    Spectrum z(nm);
    for (std::size_t i = 0; i < nm; ++i) {
      z[i] = k2[i] == 0.0 ? Complex(0.0) : r[i] / (m_mean * k2[i]);
    }
    return z;
  };
  auto dot = [&](const Spectrum& a, const Spectrum& b) { return spectral_.inner(a, b); };

  Spectrum x(nm, Complex(0.0));
  const PcgOutcome res =
      pcg_solve(apply, rhs, precond, dot, x, cfg_.inner_rel_tol, cfg_.inner_max_iter);
  iters += res.iters;
  if (!res.converged) {
    throw NoConvergence("inverse quasi-Laplacian", res.iters, res.residual);
  }
  return x;
}

Spectrum LinearSolver::apply_p_hat(const StepOperatorCtx& ctx, const ScalarField& h2,
                                   const Spectrum& x) {
  Spectrum y = spectral_.multiply_hat(x, h2);
  const auto k2 = spectral_.laplacian_symbol();
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = ctx.h_coeff * y[i] + ctx.visc_coeff * k2[i] * x[i];
  }
  return y;
}

Spectrum LinearSolver::apply_a_hat(const StepOperatorCtx& ctx, const ScalarField& h2,
                                   double m_mean, const Spectrum& x, int& inner_iters) {
  const Spectrum v = inverse_flux_hat(x, ctx.m_field, m_mean, inner_iters);
  Spectrum y = apply_p_hat(ctx, h2, x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= ctx.time_coeff * v[i];
  spectral_.project_range(y);
  return y;
}

ScalarField LinearSolver::apply_p(const StepOperatorCtx& ctx, const ScalarField& phi) {
  require_same_grid(phi, ctx.h_field);
  const ScalarField h2 = hadamard(ctx.h_field, ctx.h_field);
  return spectral_.inverse(apply_p_hat(ctx, h2, spectral_.forward(phi)));
}

ScalarField LinearSolver::invert_variable_laplacian(const ScalarField& u, const ScalarField& m,
                                                    int* iters) {
  require_same_grid(u, m);
  const double scale = std::max(1.0, max_abs(u));
  if (std::abs(mean(u)) > 1e-12 * scale) {
    throw MeanNotZero("inverse quasi-Laplacian needs a mean-zero right-hand side, mean = " +
                      std::to_string(mean(u)));
  }
  int count = 0;
  const Spectrum v = inverse_flux_hat(spectral_.forward(u), m, mean(m), count);
  if (iters) *iters = count;
  return spectral_.inverse(v);
}

ScalarField LinearSolver::apply_step_operator(const StepOperatorCtx& ctx,
                                              const ScalarField& psi) {
  ctx.validate();
  require_same_grid(psi, ctx.m_field);
  const ScalarField h2 = hadamard(ctx.h_field, ctx.h_field);
  Spectrum x = spectral_.forward(psi);
  spectral_.project_range(x);
  int inner = 0;
  return spectral_.inverse(apply_a_hat(ctx, h2, mean(ctx.m_field), x, inner));
}

StepSolution LinearSolver::solve_time_step(const StepOperatorCtx& ctx, const ScalarField& rhs_f,
                                           const ScalarField& rhs_g, double mass_target,
                                           const ScalarField* guess) {
  ctx.validate();
  require_same_grid(rhs_f, ctx.m_field);
  require_same_grid(rhs_g, ctx.m_field);

  const std::size_t nm = spectral_.num_modes();
  const auto k2f = spectral_.flux_symbol();
  const auto k2l = spectral_.laplacian_symbol();
  const ScalarField h2 = hadamard(ctx.h_field, ctx.h_field);
  const double m_mean = mean(ctx.m_field);
  const double h2_mean = mean(h2);
  SolveStats stats;

  // Solve for the increment w = phi - base with base = rhs_f / time_coeff, so
  // the Krylov tolerance is relative to the change over the step rather than
  // to phi itself. Kernel modes of phi are fixed by the mass equation and
  // carried entirely by base.
  // phi is assembled as base + w in physical space so the mass carried by
  // base is not disturbed by a transform round trip.
  const ScalarField base_phys = map_field(rhs_f, [&](double v) { return v / ctx.time_coeff; });
  Spectrum base = spectral_.forward(base_phys);
  // A target that differs from the mean of base only by summation-order
  // rounding is taken as already met; shifting by that amount would make the
  // mass random-walk at round-off level over long runs.
  double mass_fix = mass_target - base[0].real();
  if (std::abs(mass_fix) <= 64.0 * std::numeric_limits<double>::epsilon() *
                                std::max(1.0, max_abs(base_phys))) {
    mass_fix = 0.0;
  }
  base[0] = Complex(mass_target, 0.0);

  // g' = g + P(base); the increment then solves A w = -g' (projected).
  Spectrum g_hat = spectral_.forward(rhs_g);
  const Spectrum p_base = apply_p_hat(ctx, h2, base);
  for (std::size_t i = 0; i < nm; ++i) g_hat[i] += p_base[i];
  Spectrum b(nm);
  for (std::size_t i = 0; i < nm; ++i) b[i] = -g_hat[i];
  spectral_.project_range(b);

  Spectrum w(nm, Complex(0.0));
  if (guess) {
    require_same_grid(*guess, rhs_f);
    w = spectral_.forward(*guess);
    for (std::size_t i = 0; i < nm; ++i) w[i] -= base[i];
    spectral_.project_range(w);
  }

  auto apply = [&](const Spectrum& x) {
    return apply_a_hat(ctx, h2, m_mean, x, stats.total_inner_iters);
  };
  auto precond = [&](const Spectrum& r) {
    Spectrum z(nm);
    for (std::size_t i = 0; i < nm; ++i) {
      if (k2f[i] == 0.0) {
        z[i] = 0.0;
      } else {
        const double diag = ctx.time_coeff / (m_mean * k2f[i]) + ctx.visc_coeff * k2l[i] +
                            ctx.h_coeff * h2_mean;
        z[i] = r[i] / diag;
      }
    }
    return z;
  };
  auto dot = [&](const Spectrum& a, const Spectrum& c) { return spectral_.inner(a, c); };

  const PcgOutcome res =
      pcg_solve(apply, b, precond, dot, w, cfg_.outer_rel_tol, cfg_.outer_max_iter);
  stats.outer_iters = res.iters;
  stats.final_residual = res.residual;
  if (!res.converged) {
    throw NoConvergence("step operator", res.iters, res.residual);
  }

  Spectrum increment = w;
  increment[0] += mass_fix;

  StepSolution out;
  out.phi = base_phys + spectral_.inverse(increment);
  Spectrum mu_hat = apply_p_hat(ctx, h2, w);
  for (std::size_t i = 0; i < nm; ++i) mu_hat[i] += g_hat[i];
  out.mu = spectral_.inverse(mu_hat);
  out.stats = stats;

  const double drift = std::abs(mean(out.phi) - mass_target);
  if (drift > 1e-10 * std::max(1.0, std::abs(mass_target))) {
    throw MassDrift("solved field mean drifted by " + std::to_string(drift));
  }
  return out;
}

PcgResult pcg(const std::function<ScalarField(const ScalarField&)>& apply, const ScalarField& rhs,
              const std::function<ScalarField(const ScalarField&)>& precond, double rel_tol,
              int max_iter) {
  PcgResult out{ScalarField(rhs.grid()), {}};
  const PcgOutcome res = pcg_solve(apply, rhs, precond, inner, out.x, rel_tol, max_iter);
  out.stats.outer_iters = res.iters;
  out.stats.final_residual = res.residual;
  if (!res.converged) throw NoConvergence("pcg", res.iters, res.residual);
  return out;
}

}  // namespace chieq
