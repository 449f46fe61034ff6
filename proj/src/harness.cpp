#include "chieq/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "chieq/errors.hpp"
#include "chieq/init.hpp"
#include "chieq/io.hpp"

namespace chieq {

EnergyRecord make_record(Spectral& sp, const SimState& s, SchemeId scheme, const PhysParams& p,
                         const StepOutput* step) {
  EnergyRecord r;
  r.step = s.step;
  r.time = s.time;
  r.e_original = energy_original(sp, s.phi, p);
  const SchemeId energy_form = (scheme == SchemeId::LS2_BDF && !s.phi_prev) ? SchemeId::LS1 : scheme;
  r.e_modified = energy_modified(sp, s, energy_form, p);
  r.mass = mass(s.phi);
  r.u_drift = u_drift(s, p);
  r.u_drift_l2 = u_drift_l2(s, p);
  if (step) {
    r.dissipation = step->dissipation;
    r.outer_iters = step->stats.outer_iters;
    r.inner_iters = step->stats.total_inner_iters;
  }
  return r;
}

RunResult run_simulation(const RunConfig& cfg, const RunHooks& hooks) {
  cfg.validate();
  Stepper stepper(cfg.grid, cfg.params, cfg.solver, StepOptions{cfg.dealias});
  Spectral& sp = stepper.solver().spectral();

  RunResult result;
  SimState state = init_state(make_initial_field(cfg), cfg.params);

  const bool files = hooks.write_files && !cfg.out_dir.empty();
  std::ofstream csv;
  namespace fs = std::filesystem;
  auto snapshot = [&](const SimState& s) {
    if (!files) return;
    char name[64];
    std::snprintf(name, sizeof name, "snap_%08ld.bin", s.step);
    write_snapshot_file((fs::path(cfg.out_dir) / name).string(), s, cfg.scheme);
  };
  if (files) {
    fs::create_directories(cfg.out_dir);
    csv.open(fs::path(cfg.out_dir) / "energy.csv");
    if (!csv) throw Error("cannot write energy.csv in '" + cfg.out_dir + "'");
    csv << kEnergyCsvHeader << '\n';
    std::ofstream(fs::path(cfg.out_dir) / "config.txt") << format_config(cfg);
  }

  auto emit = [&](const EnergyRecord& rec) {
    result.records.push_back(rec);
    if (files) csv << format_energy_row(rec) << '\n';
    return !hooks.on_step || hooks.on_step(rec, state);
  };

  bool keep_going = emit(make_record(sp, state, cfg.scheme, cfg.params));
  snapshot(state);

  const long nsteps = cfg.num_steps();
  while (keep_going && state.step < nsteps) {
    StepOutput out;
    try {
      // The two-level schemes take their first step with LS1.
      const bool need_bootstrap = cfg.scheme != SchemeId::LS1 && !state.phi_prev;
      out = need_bootstrap ? stepper.step_ls1(state, cfg.dt)
                           : stepper.step(cfg.scheme, state, cfg.dt);
    } catch (const StepFailure&) {
      throw;
    } catch (const Error& e) {
      throw StepFailure(state.step + 1, e.what());
    }
    state = std::move(out.state);
    keep_going = emit(make_record(sp, state, cfg.scheme, cfg.params, &out));
    if (state.step % cfg.snapshot_every == 0) snapshot(state);
  }
  result.final_state = std::move(state);
  return result;
}

double observed_order(double coarse_error, double fine_error) {
  return std::log2(coarse_error / fine_error);
}

ScalarField integrate_to(const ConvergenceSetup& setup, SchemeId scheme, double dt) {
  Stepper stepper(setup.grid, setup.params, setup.solver);
  SimState s = init_state(init_sinusoidal(setup.grid), setup.params);
  const long nsteps = std::lround(setup.t_final / dt);
  if (std::abs(static_cast<double>(nsteps) * dt - setup.t_final) > 1e-9 * setup.t_final) {
    throw ConfigError("t_final is not an integer multiple of dt");
  }
  s = stepper.bootstrap(s, scheme, dt);
  while (s.step < nsteps) s = stepper.step(scheme, s, dt).state;
  return s.phi;
}

ConvergenceReport run_convergence(const ConvergenceSetup& setup) {
  if (setup.dt_list.empty()) throw ConfigError("convergence study needs at least one dt");
  double dt_min = setup.dt_list.front();
  for (std::size_t i = 1; i < setup.dt_list.size(); ++i) {
    if (std::abs(setup.dt_list[i] * 2.0 - setup.dt_list[i - 1]) > 1e-12 * setup.dt_list[i - 1]) {
      throw ConfigError("dt_list must halve from row to row");
    }
    dt_min = std::min(dt_min, setup.dt_list[i]);
  }
  if (!(setup.dt_ref < dt_min / 4.0)) {
    throw ConfigError("benchmark dt must be below a quarter of the smallest dt");
  }

  ConvergenceReport report;
  report.dt_ref = setup.dt_ref;
  report.t_final = setup.t_final;
  const ScalarField reference = integrate_to(setup, SchemeId::LS2_CN, setup.dt_ref);

  for (SchemeId scheme : setup.schemes) {
    ConvergenceColumn col;
    col.scheme = scheme;
    for (double dt : setup.dt_list) {
      ConvergenceRow row;
      row.dt = dt;
      row.l2_error = norm_l2(integrate_to(setup, scheme, dt) - reference);
      row.rms_error = row.l2_error / std::sqrt(setup.grid.domain_volume());
      row.order = col.rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                   : observed_order(col.rows.back().l2_error, row.l2_error);
      col.rows.push_back(row);
    }
    report.columns.push_back(std::move(col));
  }
  return report;
}

}  // namespace chieq
