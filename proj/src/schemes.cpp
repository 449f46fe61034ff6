#include "chieq/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "chieq/errors.hpp"

namespace chieq {

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::LS1:
      return "LS1";
    case SchemeId::LS2_BDF:
      return "LS2-BDF";
    case SchemeId::LS2_CN:
      return "LS2-CN";
  }
  return "?";
}

SchemeId parse_scheme(std::string_view name) {
  std::string s(name);
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "LS1") return SchemeId::LS1;
  if (s == "LS2-BDF" || s == "BDF2") return SchemeId::LS2_BDF;
  if (s == "LS2-CN" || s == "CN") return SchemeId::LS2_CN;
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

SimState init_state(const ScalarField& phi0, const PhysParams& p) {
  SimState s;
  s.phi = phi0;
  s.u = map_field(phi0, [&](double x) { return ieq_variable(x, p); });
  return s;
}

ScalarField update_u_one_level(const ScalarField& u_old, const ScalarField& h,
                               const ScalarField& phi_new, const ScalarField& phi_old) {
  ScalarField out(u_old.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = u_old[i] + 0.5 * h[i] * (phi_new[i] - phi_old[i]);
  }
  return out;
}

ScalarField update_u_bdf2(const ScalarField& u_n, const ScalarField& u_nm1, const ScalarField& h,
                          const ScalarField& phi_new, const ScalarField& phi_n,
                          const ScalarField& phi_nm1) {
  ScalarField out(u_n.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double u_hist = (4.0 * u_n[i] - u_nm1[i]) / 3.0;
    const double phi_hist = (4.0 * phi_n[i] - phi_nm1[i]) / 3.0;
    out[i] = u_hist + 0.5 * h[i] * (phi_new[i] - phi_hist);
  }
  return out;
}

Stepper::Stepper(const GridSpec& grid, const PhysParams& params, SolverCfg cfg, StepOptions opts)
    : solver_(grid, cfg), params_(params), opts_(opts) {
  params_.check_ranges();
  require_valid_shift(params_);
}

StepOperatorCtx Stepper::make_ctx(const ScalarField& lagged, double time_coeff,
                                  double visc_coeff, double h_coeff) {
  const ScalarField base = opts_.dealias ? solver_.spectral().truncate_two_thirds(lagged) : lagged;
  StepOperatorCtx ctx;
  ctx.m_field = map_field(base, [&](double x) { return mobility(x, params_.sigma); });
  ctx.h_field = map_field(base, [&](double x) { return h_factor(x, params_); });
  ctx.time_coeff = time_coeff;
  ctx.visc_coeff = visc_coeff;
  ctx.h_coeff = h_coeff;
  return ctx;
}

namespace {

// Outer-solve seed: linear extrapolation in time when history exists.
ScalarField extrapolated_guess(const SimState& s) {
  if (!s.phi_prev) return s.phi;
  ScalarField g = 2.0 * s.phi;
  g -= *s.phi_prev;
  return g;
}

void require_history(const SimState& s, std::string_view scheme) {
  if (!s.phi_prev || !s.u_prev) {
    throw MissingHistory(std::string(scheme) + " needs the previous time level; bootstrap first");
  }
}

}  // namespace

StepOutput Stepper::finish(const SimState& s, double dt, StepSolution sol, ScalarField u_next,
                           const StepOperatorCtx& ctx) {
  StepOutput out;
  out.dissipation = solver_.spectral().flux_energy(sol.mu, ctx.m_field);
  out.state.phi = std::move(sol.phi);
  out.state.u = std::move(u_next);
  out.state.phi_prev = s.phi;
  out.state.u_prev = s.u;
  out.state.step = s.step + 1;
  out.state.time = static_cast<double>(out.state.step) * dt;
  out.mu = std::move(sol.mu);
  out.mobility = ctx.m_field;
  out.stats = sol.stats;
  return out;
}

StepOutput Stepper::step_ls1(const SimState& s, double dt) {
  const double eps2 = params_.epsilon * params_.epsilon;
  const StepOperatorCtx ctx = make_ctx(s.phi, 1.0 / dt, eps2, 0.5);
  const ScalarField& h = ctx.h_field;

  ScalarField rhs_f = (1.0 / dt) * s.phi;
  ScalarField g(s.phi.grid());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = h[i] * s.u[i] - 0.5 * h[i] * h[i] * s.phi[i];
  }
  const ScalarField guess = extrapolated_guess(s);
  StepSolution sol = solver_.solve_time_step(ctx, rhs_f, g, mean(s.phi), &guess);
  ScalarField u_next = update_u_one_level(s.u, h, sol.phi, s.phi);
  return finish(s, dt, std::move(sol), std::move(u_next), ctx);
}

StepOutput Stepper::step_bdf2(const SimState& s, double dt) {
  require_history(s, "LS2-BDF");
  const ScalarField& phi_n = s.phi;
  const ScalarField& phi_nm1 = *s.phi_prev;
  const ScalarField& u_n = s.u;
  const ScalarField& u_nm1 = *s.u_prev;

  ScalarField star = 2.0 * phi_n;
  star -= phi_nm1;
  const double eps2 = params_.epsilon * params_.epsilon;
  const StepOperatorCtx ctx = make_ctx(star, 1.5 / dt, eps2, 0.5);
  const ScalarField& h = ctx.h_field;

  ScalarField rhs_f(phi_n.grid());
  ScalarField g(phi_n.grid());
  for (std::size_t i = 0; i < g.size(); ++i) {
    rhs_f[i] = (4.0 * phi_n[i] - phi_nm1[i]) / (2.0 * dt);
    const double u_hist = (4.0 * u_n[i] - u_nm1[i]) / 3.0;
    const double phi_hist = (4.0 * phi_n[i] - phi_nm1[i]) / 3.0;
    g[i] = h[i] * u_hist - 0.5 * h[i] * h[i] * phi_hist;
  }
  const ScalarField guess = extrapolated_guess(s);
  StepSolution sol = solver_.solve_time_step(ctx, rhs_f, g, mean(phi_n), &guess);
  ScalarField u_next = update_u_bdf2(u_n, u_nm1, h, sol.phi, phi_n, phi_nm1);
  return finish(s, dt, std::move(sol), std::move(u_next), ctx);
}

StepOutput Stepper::step_cn(const SimState& s, double dt) {
  require_history(s, "LS2-CN");
  const ScalarField& phi_n = s.phi;
  const ScalarField& phi_nm1 = *s.phi_prev;

  ScalarField dagger = 1.5 * phi_n;
  dagger -= 0.5 * phi_nm1;
  const double half_eps2 = 0.5 * params_.epsilon * params_.epsilon;
  // The half-sum (U^{n+1} + U^n)/2 contributes H^2/4 to the implicit operator.
  const StepOperatorCtx ctx = make_ctx(dagger, 1.0 / dt, half_eps2, 0.25);
  const ScalarField& h = ctx.h_field;

  ScalarField rhs_f = (1.0 / dt) * phi_n;
  ScalarField g = solver_.spectral().laplacian(phi_n);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = -half_eps2 * g[i] + h[i] * s.u[i] - 0.25 * h[i] * h[i] * phi_n[i];
  }
  const ScalarField guess = extrapolated_guess(s);
  StepSolution sol = solver_.solve_time_step(ctx, rhs_f, g, mean(phi_n), &guess);
  ScalarField u_next = update_u_one_level(s.u, h, sol.phi, phi_n);
  return finish(s, dt, std::move(sol), std::move(u_next), ctx);
}

StepOutput Stepper::step(SchemeId scheme, const SimState& s, double dt) {
  switch (scheme) {
    case SchemeId::LS1:
      return step_ls1(s, dt);
    case SchemeId::LS2_BDF:
      return step_bdf2(s, dt);
    case SchemeId::LS2_CN:
      return step_cn(s, dt);
  }
  throw ConfigError("unknown scheme");
}

SimState Stepper::bootstrap(const SimState& s0, SchemeId scheme, double dt) {
  if (scheme == SchemeId::LS1 || s0.phi_prev) return s0;
  return step_ls1(s0, dt).state;
}

}  // namespace chieq
