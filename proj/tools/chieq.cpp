// Command-line driver: run, converge, verify, init-config.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "chieq/config.hpp"
#include "chieq/errors.hpp"
#include "chieq/harness.hpp"
#include "chieq/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kSolver = 2;
constexpr int kVerify = 3;

int cmd_run(const std::string& path, const std::optional<std::uint64_t>& seed,
            const std::string& out_dir) {
  chieq::RunConfig cfg = chieq::load_config(path);
  if (seed) cfg.seed = *seed;
  cfg.out_dir = out_dir.empty() ? "out" : out_dir;
  cfg.validate();
  const long nsteps = cfg.num_steps();
  const long every = std::max(1L, nsteps / 20);
  chieq::RunHooks hooks;
  hooks.on_step = [&](const chieq::EnergyRecord& r, const chieq::SimState&) {
    if (r.step % every == 0 || r.step == nsteps) {
      std::fprintf(stderr, "step %ld/%ld t=%.6g E=%.10g mass=%.10g\n", r.step, nsteps, r.time,
                   r.e_modified, r.mass);
    }
    return true;
  };
  chieq::run_simulation(cfg, hooks);
  std::printf("wrote %s/energy.csv\n", cfg.out_dir.c_str());
  return kOk;
}

int cmd_converge(const std::string& path, int levels) {
  const chieq::RunConfig cfg = chieq::load_config(path);
  cfg.validate();
  chieq::ConvergenceSetup setup;
  setup.grid = cfg.grid;
  setup.params = cfg.params;
  setup.solver = cfg.solver;
  setup.t_final = cfg.t_end;
  for (int i = 0; i < levels; ++i) setup.dt_list.push_back(cfg.dt / std::ldexp(1.0, i));
  setup.dt_ref = setup.dt_list.back() / 8.0;
  const chieq::ConvergenceReport rep = chieq::run_convergence(setup);
  std::printf("dt_ref=%.6g t_final=%.6g (errors are root-mean-square over the grid)\n",
              rep.dt_ref, rep.t_final);
  std::printf("%-12s", "dt");
  for (const auto& col : rep.columns) {
    const std::string name(chieq::scheme_name(col.scheme));
    std::printf(" %14s %7s", (name + " err").c_str(), "order");
  }
  std::printf("\n");
  for (std::size_t r = 0; r < setup.dt_list.size(); ++r) {
    std::printf("%-12.6g", setup.dt_list[r]);
    for (const auto& col : rep.columns) {
      const auto& row = col.rows[r];
      if (std::isnan(row.order)) {
        std::printf(" %14.6e %7s", row.rms_error, "-");
      } else {
        std::printf(" %14.6e %7.3f", row.rms_error, row.order);
      }
    }
    std::printf("\n");
  }
  return kOk;
}

int cmd_verify(bool full) {
  chieq::VerifyOptions opts;
  opts.level = full ? chieq::VerifyLevel::Full : chieq::VerifyLevel::Quick;
  const chieq::VerifyReport rep = chieq::verify(opts);
  chieq::print_report(std::cout, rep);
  return rep.all_passed() ? kOk : kVerify;
}

int cmd_init_config(const std::string& name, const std::string& out) {
  const std::string text = chieq::format_config(chieq::preset(name));
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!(f << text)) throw chieq::ConfigError("cannot write '" + out + "'");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear IEQ solvers for the variable-mobility Cahn-Hilliard equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "integrate a configuration, writing energy.csv and snapshots");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out_dir, "output directory (default: out)");

  int levels = 5;
  auto* converge = app.add_subcommand("converge", "temporal convergence table against a fine LS2-CN run");
  converge->add_option("--config", config_path, "config file; dt is the coarsest step")->required();
  converge->add_option("--levels", levels, "number of halvings")->check(CLI::Range(2, 12));

  bool quick = false;
  bool full = false;
  auto* ver = app.add_subcommand("verify", "run the invariant suite");
  auto* q = ver->add_flag("--quick", quick, "fast subset (default)");
  ver->add_flag("--full", full, "all checks with more samples")->excludes(q);

  std::string preset_name;
  std::string preset_out;
  auto* init = app.add_subcommand("init-config", "print a preset configuration");
  init->add_option("--preset", preset_name, "preset name")
      ->required()
      ->check(CLI::IsMember(chieq::preset_names()));
  init->add_option("--out", preset_out, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(config_path, seed, out_dir);
    if (*converge) return cmd_converge(config_path, levels);
    if (*ver) return cmd_verify(full);
    if (*init) return cmd_init_config(preset_name, preset_out);
  } catch (const chieq::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsage;
  } catch (const chieq::DomainError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsage;
  } catch (const chieq::ShiftTooSmall& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsage;
  } catch (const chieq::DimensionError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsage;
  } catch (const chieq::Error& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kSolver;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSolver;
  }
  return kUsage;
}
