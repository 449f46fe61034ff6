#pragma once

#include <functional>
#include <vector>

#include "chieq/config.hpp"
#include "chieq/diagnostics.hpp"
#include "chieq/schemes.hpp"

namespace chieq {

struct RunResult {
  SimState final_state;
  std::vector<EnergyRecord> records;  // one per step, step 0 included
};

struct RunHooks {
  // Called after each record is appended; return false to stop early.
  std::function<bool(const EnergyRecord&, const SimState&)> on_step;
  // When true and cfg.out_dir is set, writes energy.csv and snapshots.
  bool write_files = true;
};

// Record for a state. For LS2-BDF without history (step 0) the single-level
// energy is reported, which is what the two-level form reduces to when both
// levels coincide.
EnergyRecord make_record(Spectral& sp, const SimState& s, SchemeId scheme, const PhysParams& p,
                         const StepOutput* step = nullptr);

// Bootstraps, steps to t_end and records diagnostics. Solver failures are
// rethrown as StepFailure carrying the step index.
RunResult run_simulation(const RunConfig& cfg, const RunHooks& hooks = {});

struct ConvergenceRow {
  double dt = 0.0;
  double l2_error = 0.0;   // (int |e|^2 dx)^(1/2)
  double rms_error = 0.0;  // (mean |e|^2)^(1/2), l2_error / sqrt(|Omega|)
  double order = 0.0;      // NaN on the first row
};

struct ConvergenceColumn {
  SchemeId scheme = SchemeId::LS1;
  std::vector<ConvergenceRow> rows;
};

struct ConvergenceReport {
  double dt_ref = 0.0;
  double t_final = 0.0;
  std::vector<ConvergenceColumn> columns;
};

struct ConvergenceSetup {
  std::vector<SchemeId> schemes{SchemeId::LS1, SchemeId::LS2_BDF, SchemeId::LS2_CN};
  std::vector<double> dt_list;  // each entry half the previous
  double dt_ref = 0.0;          // LS2-CN benchmark step, < min(dt_list) / 4
  GridSpec grid{2, 64};
  double t_final = 0.5;
  PhysParams params;
  SolverCfg solver;
};

// Final phi of a run from init_sinusoidal with the given scheme and step.
ScalarField integrate_to(const ConvergenceSetup& setup, SchemeId scheme, double dt);

// L2 errors against the LS2-CN benchmark and orders log2(e(dt) / e(dt/2)).
ConvergenceReport run_convergence(const ConvergenceSetup& setup);

// log2(coarse / fine) for an error pair under step halving.
double observed_order(double coarse_error, double fine_error);

}  // namespace chieq
