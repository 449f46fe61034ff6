#include "chieq/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>

#include "chieq/diagnostics.hpp"
#include "chieq/errors.hpp"
#include "chieq/harness.hpp"
#include "chieq/init.hpp"
#include "chieq/schemes.hpp"
#include "chieq/spectral.hpp"

namespace chieq {

bool VerifyReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

void print_report(std::ostream& out, const VerifyReport& report) {
  for (const auto& c : report.checks) {
    char line[256];
    std::snprintf(line, sizeof line, "[%s] %-34s observed %-12.4g tolerance %-10.3g",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.observed, c.tolerance);
    out << line;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  out << (report.all_passed() ? "all checks passed" : "verification FAILED") << '\n';
}

ScalarField constant_coefficient_solve(const GridSpec& grid, double m, double h,
                                       double time_coeff, double visc_coeff, double h_coeff,
                                       const ScalarField& rhs_f, const ScalarField& rhs_g,
                                       double mass_target) {
  Spectral sp(grid);
  const Spectrum f_hat = sp.forward(rhs_f);
  const Spectrum g_hat = sp.forward(rhs_g);
  const auto k2f = sp.flux_symbol();
  const auto k2l = sp.laplacian_symbol();
  Spectrum phi_hat(sp.num_modes());
  for (std::size_t i = 0; i < phi_hat.size(); ++i) {
    const double mk = m * k2f[i];
    phi_hat[i] = (f_hat[i] - mk * g_hat[i]) /
                 (time_coeff + mk * (visc_coeff * k2l[i] + h_coeff * h * h));
  }
  phi_hat[0] = mass_target;
  return sp.inverse(phi_hat);
}

namespace {

// Smooth random field: a handful of low Fourier modes with random amplitudes.
ScalarField smooth_random(const GridSpec& g, double base, double amp, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  ScalarField f(g, base);
  const int nz = g.dim == 3 ? g.n : 1;
  for (int mode = 0; mode < 6; ++mode) {
    const int kx = static_cast<int>(rng.next() % 4);
    const int ky = static_cast<int>(rng.next() % 4);
    const int kz = g.dim == 3 ? static_cast<int>(rng.next() % 3) : 0;
    const double a = amp * rng.symmetric_unit() / 6.0;
    const double ph = std::numbers::pi * rng.symmetric_unit();
    std::size_t idx = 0;
    for (int iz = 0; iz < nz; ++iz) {
      for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix, ++idx) {
          f[idx] += a * std::cos(kx * g.coord(ix) + ky * g.coord(iy) + kz * g.coord(iz) + ph);
        }
      }
    }
  }
  return f;
}

ScalarField rough_mean_zero(const GridSpec& g, std::uint64_t seed) {
  ScalarField f = init_random(g, 0.0, 1.0, seed);
  return f;
}

class Runner {
 public:
  explicit Runner(VerifyReport& r) : report_(r) {}

  void run(const std::string& name, double tol, const std::function<CheckResult()>& body) {
    CheckResult c;
    try {
      c = body();
    } catch (const std::exception& e) {
      c.passed = false;
      c.observed = NAN;
      c.detail = std::string("error: ") + e.what();
    }
    c.name = name;
    c.tolerance = tol;
    report_.checks.push_back(c);
  }

 private:
  VerifyReport& report_;
};

CheckResult le(double observed, double tol, std::string detail = {}) {
  return {"", tol, observed, observed <= tol, std::move(detail)};
}

}  // namespace

VerifyReport verify(const VerifyOptions& opts) {
  VerifyReport report;
  Runner runner(report);
  auto run = [&](const std::string& name, double tol, const std::function<CheckResult()>& body) {
    runner.run(name, tol, body);
  };
  const PhysParams& p = opts.params;
  const GridSpec& grid = opts.grid;
  const bool full = opts.level == VerifyLevel::Full;

  run("shift validation", 0.0, [&] {
    const ShiftCheck c = validate_shift(p);
    char d[96];
    std::snprintf(d, sizeof d, "min F+B = %.6g at x = %.4f", c.min_value, c.argmin);
    return CheckResult{"", 0.0, c.min_value, c.ok, d};
  });

  run("IEQ identity H^2(F+B) = f^2", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double x = -10.0 + 21.0 * i / 10000.0;
      const double h = h_factor(x, p);
      const double f = free_energy_deriv(x, p);
      const double lhs = h * h * (free_energy(x, p) + p.bshift);
      worst = std::max(worst, std::abs(lhs - f * f) / std::max(f * f, 1e-300));
    }
    return le(worst, 1e-12);
  });

  run("C0/C1/C2 stitching", 1e-12, [&] {
    double worst = 0.0;
    for (double x : {p.sigma, 1.0 - p.sigma}) {
      const double lo = std::nextafter(x, -INFINITY);
      const double hi = std::nextafter(x, INFINITY);
      using Fn = double (*)(double, const PhysParams&);
      for (Fn fn : {Fn(free_energy), Fn(free_energy_deriv), Fn(free_energy_second_deriv)}) {
        const double a = fn(lo, p);
        const double b = fn(hi, p);
        worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}));
      }
    }
    return le(worst, 1e-12);
  });

  run("mobility bounds and symmetry", 1e-15, [&] {
    double worst_sym = 0.0;
    bool bounded = true;
    for (int i = 0; i <= 10000; ++i) {
      const double x = -10.0 + 21.0 * i / 10000.0;
      const double m = mobility(x, p.sigma);
      bounded = bounded && m >= p.sigma / 8.0 && m <= 0.25;
      worst_sym = std::max(worst_sym, std::abs(m - mobility(1.0 - x, p.sigma)) / m);
    }
    CheckResult c = le(worst_sym, 1e-15, bounded ? "" : "bounds violated");
    c.passed = c.passed && bounded;
    return c;
  });

  run("f matches finite differences of F", 1e-6, [&] {
    Xoshiro256 rng(opts.seed);
    double worst = 0.0;
    const double h = 1e-6;
    for (int i = 0; i < 10000; ++i) {
      const double x = 0.5 + 2.5 * rng.symmetric_unit();
      const double fd = (free_energy(x + h, p) - free_energy(x - h, p)) / (2.0 * h);
      const double f = free_energy_deriv(x, p);
      worst = std::max(worst, std::abs(fd - f) / std::max(std::abs(f), 1.0));
    }
    return le(worst, 1e-6);
  });

  run("flux operator self-adjoint", 1e-11, [&] {
    Spectral sp(grid);
    const ScalarField m = map_field(smooth_random(grid, 0.4, 0.8, opts.seed + 1),
                                    [&](double x) { return mobility(x, p.sigma); });
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const ScalarField u = rough_mean_zero(grid, opts.seed + 10 + k);
      const ScalarField w = rough_mean_zero(grid, opts.seed + 20 + k);
      const double a = inner(sp.variable_laplacian(u, m), w);
      const double b = inner(u, sp.variable_laplacian(w, m));
      worst = std::max(worst, std::abs(a - b) / (norm_l2(u) * norm_l2(w)));
      const double q = inner(sp.variable_laplacian(u, m), u) / inner(u, u);
      if (q > 1e-11) return CheckResult{"", 1e-11, q, false, "operator not negative semidefinite"};
    }
    return le(worst, 1e-11);
  });

  const int pairs = full ? 20 : 5;
  const std::pair<SchemeId, const char*> schemes[] = {
      {SchemeId::LS1, "LS1"}, {SchemeId::LS2_BDF, "LS2-BDF"}, {SchemeId::LS2_CN, "LS2-CN"}};

  for (const auto& [scheme, label] : schemes) {
    run(std::string("SPD step operator ") + label, 1e-9, [&, scheme = scheme] {
      Stepper stepper(grid, p, opts.solver);
      const ScalarField lag = smooth_random(grid, 0.3, 0.9, opts.seed + 3);
      const double dt = 1e-3;
      const double eps2 = p.epsilon * p.epsilon;
      const StepOperatorCtx ctx =
          scheme == SchemeId::LS1       ? stepper.make_ctx(lag, 1.0 / dt, eps2, 0.5)
          : scheme == SchemeId::LS2_BDF ? stepper.make_ctx(lag, 1.5 / dt, eps2, 0.5)
                                        : stepper.make_ctx(lag, 1.0 / dt, 0.5 * eps2, 0.25);
      LinearSolver& solver = stepper.solver();
      double worst = 0.0;
      double min_rayleigh = INFINITY;
      for (int k = 0; k < pairs; ++k) {
        const ScalarField a = rough_mean_zero(grid, opts.seed + 100 + 2 * k);
        const ScalarField b = rough_mean_zero(grid, opts.seed + 101 + 2 * k);
        const ScalarField aa = solver.apply_step_operator(ctx, a);
        const ScalarField ab = solver.apply_step_operator(ctx, b);
        const double lhs = inner(aa, b);
        const double rhs = inner(a, ab);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
        min_rayleigh = std::min(min_rayleigh, inner(aa, a) / inner(a, a));
      }
      char d[64];
      std::snprintf(d, sizeof d, "min Rayleigh quotient %.4g", min_rayleigh);
      CheckResult c = le(worst, 1e-9, d);
      c.passed = c.passed && min_rayleigh > 0.0;
      return c;
    });
  }

  for (const auto& [scheme, label] : schemes) {
    run(std::string("constant-coefficient oracle ") + label, 1e-9, [&, scheme = scheme] {
      LinearSolver solver(grid, opts.solver);
      const double dt = 1e-2;
      const double eps2 = p.epsilon * p.epsilon;
      StepOperatorCtx ctx;
      ctx.m_field = ScalarField(grid, 0.2);
      ctx.h_field = ScalarField(grid, -0.7);
      ctx.time_coeff = scheme == SchemeId::LS2_BDF ? 1.5 / dt : 1.0 / dt;
      ctx.visc_coeff = scheme == SchemeId::LS2_CN ? 0.5 * eps2 : eps2;
      ctx.h_coeff = scheme == SchemeId::LS2_CN ? 0.25 : 0.5;
      const ScalarField phi_n = smooth_random(grid, 0.4, 0.5, opts.seed + 7);
      ScalarField rhs_f = ctx.time_coeff * phi_n;
      const ScalarField g = smooth_random(grid, 0.1, 1.0, opts.seed + 8);
      const StepSolution sol = solver.solve_time_step(ctx, rhs_f, g, mean(phi_n));
      const ScalarField ref = constant_coefficient_solve(
          grid, 0.2, -0.7, ctx.time_coeff, ctx.visc_coeff, ctx.h_coeff, rhs_f, g, mean(phi_n));
      return le(norm_l2(sol.phi - ref) / norm_l2(ref), 1e-9);
    });
  }

  const std::vector<double> dts =
      full ? std::vector<double>{1e-4, 1e-3, 1e-2, 1e-1, 1.0} : std::vector<double>{1e-3, 1.0};
  const long nsteps = full ? 50 : 10;
  for (const auto& [scheme, label] : schemes) {
    double worst_energy = -INFINITY;
    double worst_mass = 0.0;
    std::string energy_err;
    for (double dt : dts) {
      try {
        RunConfig cfg;
        cfg.scheme = scheme;
        cfg.grid = grid;
        cfg.params = p;
        cfg.solver = opts.solver;
        cfg.dt = dt;
        cfg.t_end = dt * nsteps;
        cfg.init = {InitVariant::RandomUniform, 0.3, 0.001};
        cfg.seed = opts.seed;
        const RunResult res = run_simulation(cfg);
        std::vector<double> e;
        // The BDF2 functional starts once history exists.
        const std::size_t first = scheme == SchemeId::LS2_BDF ? 1 : 0;
        for (std::size_t k = first; k < res.records.size(); ++k) e.push_back(res.records[k].e_modified);
        worst_energy = std::max(worst_energy, audit_monotone(e, 1e-9).worst_violation);
        const double m0 = res.records.front().mass;
        for (const auto& r : res.records) worst_mass = std::max(worst_mass, std::abs(r.mass - m0) / std::abs(m0));
      } catch (const std::exception& ex) {
        energy_err = ex.what();
        worst_energy = INFINITY;
      }
    }
    run(std::string("energy stability ") + label, 1e-9, [&] {
      return le(worst_energy, 1e-9, energy_err.empty() ? "max relative rise" : energy_err);
    });
    run(std::string("mass conservation ") + label, 1e-10, [&] { return le(worst_mass, 1e-10); });
  }

  run("CN energy identity", 1e-6, [&] {
    RunConfig cfg;
    cfg.scheme = SchemeId::LS2_CN;
    cfg.grid = grid;
    cfg.params = p;
    cfg.solver = opts.solver;
    cfg.dt = 1e-3;
    cfg.t_end = full ? 0.2 : 0.02;
    cfg.seed = opts.seed;
    // A symmetric mixture keeps U well above its rounding floor.
    cfg.init = {InitVariant::RandomUniform, 0.5, 0.001};
    Stepper stepper(grid, p, opts.solver);
    Spectral& sp = stepper.solver().spectral();
    SimState s = init_state(make_initial_field(cfg), p);
    // The first step is the LS1 bootstrap; the identity is checked from there on.
    s = stepper.bootstrap(s, SchemeId::LS2_CN, cfg.dt);
    std::vector<double> de;
    std::vector<double> d;
    for (long k = 1; k < cfg.num_steps(); ++k) {
      StepOutput out = stepper.step_cn(s, cfg.dt);
      de.push_back(energy_ieq_change(sp, s.phi, s.u, out.state.phi, out.state.u, p));
      d.push_back(out.dissipation);
      s = std::move(out.state);
    }
    const IdentityAudit a = audit_energy_identity_increments(de, d, cfg.dt, 1e-6);
    return le(a.worst_ratio, 1e-6);
  });

  run("uniform state is a fixed point", 1e-12, [&] {
    Stepper stepper(grid, p, opts.solver);
    double worst = 0.0;
    for (const auto& [scheme, label] : schemes) {
      (void)label;
      SimState s = init_state(ScalarField(grid, 0.3), p);
      s = stepper.bootstrap(s, scheme, 0.1);
      s = stepper.step(scheme, s, 0.1).state;
      worst = std::max({worst, max_abs(s.phi - ScalarField(grid, 0.3)), u_drift(s, p)});
    }
    return le(worst, 1e-12);
  });

  return report;
}

}  // namespace chieq
