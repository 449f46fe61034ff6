#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "chieq/config.hpp"
#include "chieq/errors.hpp"
#include "chieq/harness.hpp"
#include "chieq/init.hpp"
#include "chieq/io.hpp"
#include "chieq/verify.hpp"
#include "doctest.h"

using namespace chieq;
namespace fs = std::filesystem;

namespace {

RunConfig small_config(SchemeId scheme) {
  RunConfig cfg;
  cfg.scheme = scheme;
  cfg.grid = {2, 16};
  cfg.dt = 1e-2;
  cfg.t_end = 0.1;
  cfg.init = {InitVariant::RandomUniform, 0.3, 0.05};
  cfg.seed = 9;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("chieq_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("sinusoidal initial data") {
  const GridSpec g{2, 64};
  const ScalarField f = init_sinusoidal(g);
  CHECK(f[8] == doctest::Approx(0.73).epsilon(1e-14));  // (pi/4, 0)
  CHECK(f[0] == doctest::Approx(0.48).epsilon(1e-15));
  CHECK(std::abs(mean(f) - 0.48) < 1e-14);
  CHECK_THROWS_AS(init_sinusoidal(GridSpec{3, 16}), DimensionError);
}

TEST_CASE("random initial data") {
  const GridSpec g{2, 32};
  const ScalarField a = init_random(g, 0.3, 0.001, 42);
  const ScalarField b = init_random(g, 0.3, 0.001, 42);
  const ScalarField c = init_random(g, 0.3, 0.001, 43);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK(max_abs(a - c) > 0.0);
  CHECK(std::abs(mean(a) - 0.3) < 1e-15);
  CHECK(max_abs(a - ScalarField(g, 0.3)) <= 0.002);
  CHECK(max_abs(init_random(g, 0.7, 0.0, 1) - ScalarField(g, 0.7)) == 0.0);
}

TEST_CASE("generator is deterministic") {
  Xoshiro256 a(123);
  Xoshiro256 b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Xoshiro256 r(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.symmetric_unit();
    REQUIRE(u >= -1.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(
      "# comment\nscheme = LS2-BDF\n n = 32 \ndt=0.002\nt_end = 0.1\ndealias = true\n");
  CHECK(c.scheme == SchemeId::LS2_BDF);
  CHECK(c.grid.n == 32);
  CHECK(c.dt == 0.002);
  CHECK(c.dealias);
  CHECK(c.num_steps() == 50);

  CHECK_THROWS_AS(parse_config("colour = blue\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 32\nn = 64\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n 32\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n =\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 48\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("dt = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("init = gaussian\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("dim = 3\ninit = sinusoidal\nn = 16\n"), ConfigError);
}

TEST_CASE("config format round trip and presets") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    const RunConfig a = preset(name);
    const RunConfig b = parse_config(format_config(a));
    CHECK(format_config(b) == format_config(a));
    CHECK(b.dt == a.dt);
    CHECK(b.params.epsilon == a.params.epsilon);
  }
  CHECK(preset_names().size() == 8);
  CHECK(preset("table4_1").init.variant == InitVariant::Sinusoidal);
  CHECK(preset("spinodal3d_05").grid.dim == 3);
  CHECK_THROWS_AS(preset("nope"), ConfigError);
}

TEST_CASE("energy csv format") {
  EnergyRecord r;
  r.step = 3;
  r.time = 0.1;
  r.e_original = -1.0 / 3.0;
  r.outer_iters = 4;
  r.inner_iters = 40;
  const std::string row = format_energy_row(r);
  CHECK(row.rfind("3,0.10000000000000001,-0.33333333333333331,", 0) == 0);
  CHECK(row.substr(row.size() - 5) == ",4,40");
  std::ostringstream out;
  write_energy_csv(out, {r});
  CHECK(out.str().rfind(std::string(kEnergyCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("snapshot round trip") {
  const GridSpec g{2, 16};
  const PhysParams p;
  SimState s = init_state(init_random(g, 0.3, 0.1, 3), p);
  s.step = 12;
  s.time = 0.012;
  std::stringstream buf;
  write_snapshot(buf, s, SchemeId::LS2_CN);
  const std::string bytes = buf.str();
  CHECK(bytes.rfind("CHIEQ1\n2 16 LS2-CN 12 0.012\n", 0) == 0);
  CHECK(bytes.size() == std::string("CHIEQ1\n2 16 LS2-CN 12 0.012\n").size() + 2 * 256 * 8);

  const Snapshot snap = read_snapshot(buf);
  CHECK(snap.grid == g);
  CHECK(snap.scheme == SchemeId::LS2_CN);
  CHECK(snap.step == 12);
  CHECK(snap.time == 0.012);
  CHECK(max_abs(snap.phi - s.phi) == 0.0);
  CHECK(max_abs(snap.u - s.u) == 0.0);

  std::istringstream bad("CHIEQ2\n");
  CHECK_THROWS(read_snapshot(bad));
  std::istringstream truncated(bytes.substr(0, bytes.size() - 1));
  CHECK_THROWS(read_snapshot(truncated));
}

TEST_CASE("snapshot payload is little-endian binary64") {
  const GridSpec g{2, 8};
  SimState s{ScalarField(g, 1.0), ScalarField(g, 2.0), std::nullopt, std::nullopt, 0, 0.0};
  s.phi[0] = 1.0;
  std::stringstream buf;
  write_snapshot(buf, s, SchemeId::LS1);
  const std::string bytes = buf.str();
  const std::size_t off = bytes.find('\n', 7) + 1;
  // 1.0 = 0x3FF0000000000000
  CHECK(static_cast<unsigned char>(bytes[off + 6]) == 0xF0);
  CHECK(static_cast<unsigned char>(bytes[off + 7]) == 0x3F);
}

TEST_CASE("run writes outputs and is reproducible") {
  const fs::path d1 = scratch("run1");
  const fs::path d2 = scratch("run2");
  RunConfig cfg = small_config(SchemeId::LS2_CN);
  cfg.snapshot_every = 5;
  cfg.out_dir = d1.string();
  const RunResult r1 = run_simulation(cfg);
  cfg.out_dir = d2.string();
  run_simulation(cfg);
  CHECK(r1.records.size() == 11);
  CHECK(fs::exists(d1 / "snap_00000000.bin"));
  CHECK(fs::exists(d1 / "snap_00000005.bin"));
  CHECK(fs::exists(d1 / "snap_00000010.bin"));
  CHECK(fs::exists(d1 / "config.txt"));
  const std::string csv = slurp(d1 / "energy.csv");
  CHECK(csv == slurp(d2 / "energy.csv"));
  CHECK(csv.rfind(kEnergyCsvHeader, 0) == 0);
  CHECK(parse_config(slurp(d1 / "config.txt")).scheme == SchemeId::LS2_CN);
  const Snapshot last = read_snapshot_file((d1 / "snap_00000010.bin").string());
  CHECK(max_abs(last.phi - r1.final_state.phi) == 0.0);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("run records conserve mass and decrease energy") {
  for (SchemeId id : {SchemeId::LS1, SchemeId::LS2_BDF, SchemeId::LS2_CN}) {
    const RunResult r = run_simulation(small_config(id));
    std::vector<double> e;
    for (std::size_t k = id == SchemeId::LS2_BDF ? 1 : 0; k < r.records.size(); ++k) {
      e.push_back(r.records[k].e_modified);
    }
    CHECK(audit_monotone(e, 1e-9).ok);
    for (const auto& rec : r.records) {
      CHECK(rec.mass == doctest::Approx(r.records.front().mass).epsilon(1e-12));
    }
    CHECK(r.records.front().e_modified ==
          doctest::Approx(r.records.front().e_original).epsilon(1e-13));
  }
}

TEST_CASE("hook can stop a run early") {
  RunHooks hooks;
  hooks.on_step = [](const EnergyRecord& r, const SimState&) { return r.step < 3; };
  const RunResult r = run_simulation(small_config(SchemeId::LS1), hooks);
  CHECK(r.records.size() == 4);
  CHECK(r.final_state.step == 3);
}

TEST_CASE("uniform run stays uniform") {
  RunConfig cfg = small_config(SchemeId::LS2_CN);
  cfg.init.amplitude = 0.0;
  const RunResult r = run_simulation(cfg);
  CHECK(max_abs(r.final_state.phi - ScalarField(cfg.grid, 0.3)) < 1e-13);
  for (const auto& rec : r.records) CHECK(rec.u_drift < 1e-13);
}

TEST_CASE("solver failures surface as step failures") {
  RunConfig cfg = small_config(SchemeId::LS1);
  cfg.solver.outer_max_iter = 1;
  cfg.solver.outer_rel_tol = 1e-14;
  cfg.solver.inner_rel_tol = 1e-15;
  try {
    run_simulation(cfg);
    FAIL("expected a StepFailure");
  } catch (const StepFailure& e) {
    CHECK(e.step() == 1);
  }
}

TEST_CASE("observed order") {
  CHECK(observed_order(4e-2, 1e-2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(observed_order(3.17e-3, 8.34e-4) == doctest::Approx(1.93).epsilon(0.01));
}

TEST_CASE("convergence study preconditions") {
  ConvergenceSetup s;
  s.grid = {2, 16};
  s.t_final = 0.04;
  s.dt_list = {0.02, 0.01};
  s.dt_ref = 0.005;
  CHECK_THROWS_AS(run_convergence(s), ConfigError);
  s.dt_list = {0.02, 0.008};
  s.dt_ref = 0.001;
  CHECK_THROWS_AS(run_convergence(s), ConfigError);
  s.dt_list = {0.02, 0.01};
  s.dt_ref = 0.002;
  const ConvergenceReport rep = run_convergence(s);
  REQUIRE(rep.columns.size() == 3);
  for (const auto& col : rep.columns) {
    REQUIRE(col.rows.size() == 2);
    CHECK(std::isnan(col.rows[0].order));
    CHECK(col.rows[1].l2_error < col.rows[0].l2_error);
    CHECK(col.rows[0].rms_error ==
          doctest::Approx(col.rows[0].l2_error / (2 * std::numbers::pi)).epsilon(1e-14));
  }
}

TEST_CASE("quick verification passes") {
  VerifyOptions opts;
  opts.grid = {2, 32};
  const VerifyReport rep = verify(opts);
  std::ostringstream out;
  print_report(out, rep);
  INFO(out.str());
  CHECK(rep.all_passed());
  CHECK(rep.checks.size() >= 15);
}

TEST_CASE("verification flags a bad shift") {
  VerifyOptions opts;
  opts.grid = {2, 16};
  opts.params.bshift = 0.0;
  const VerifyReport rep = verify(opts);
  CHECK_FALSE(rep.all_passed());
  CHECK_FALSE(rep.checks.front().passed);
}
