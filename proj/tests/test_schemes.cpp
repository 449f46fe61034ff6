#include <cmath>

#include "chieq/diagnostics.hpp"
#include "chieq/errors.hpp"
#include "chieq/init.hpp"
#include "chieq/schemes.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace chieq;

namespace {

const GridSpec g2{2, 32};
constexpr SchemeId kAll[] = {SchemeId::LS1, SchemeId::LS2_BDF, SchemeId::LS2_CN};

}  // namespace

TEST_CASE("scheme names round trip") {
  for (SchemeId id : kAll) CHECK(parse_scheme(scheme_name(id)) == id);
  CHECK(parse_scheme("ls2_cn") == SchemeId::LS2_CN);
  CHECK(parse_scheme("Ls2-Bdf") == SchemeId::LS2_BDF);
  CHECK_THROWS_AS(parse_scheme("RK4"), ConfigError);
}

TEST_CASE("initial U is exact") {
  const PhysParams p;
  const SimState s = init_state(ScalarField(g2, 0.5), p);
  CHECK(max_abs(s.u - ScalarField(g2, 1.852527)) < 1e-6);
  CHECK(s.step == 0);
  CHECK_FALSE(s.phi_prev.has_value());

  const SimState t = init_state(init_sinusoidal(g2), p);
  CHECK(mean(t.u) > 0.0);
  Spectral sp(g2);
  CHECK(energy_ieq(sp, t.phi, t.u, p) ==
        doctest::Approx(energy_original(sp, t.phi, p)).epsilon(1e-13));
}

TEST_CASE("bootstrap policy") {
  const PhysParams p;
  Stepper st(g2, p);
  const SimState s0 = init_state(init_sinusoidal(g2), p);
  const SimState a = st.bootstrap(s0, SchemeId::LS1, 1e-3);
  CHECK(a.step == 0);
  CHECK(max_abs(a.phi - s0.phi) == 0.0);
  for (SchemeId id : {SchemeId::LS2_BDF, SchemeId::LS2_CN}) {
    const SimState b = st.bootstrap(s0, id, 1e-3);
    CHECK(b.step == 1);
    CHECK(b.time == doctest::Approx(1e-3));
    REQUIRE(b.phi_prev.has_value());
    REQUIRE(b.u_prev.has_value());
    CHECK(max_abs(*b.phi_prev - s0.phi) == 0.0);
  }
}

TEST_CASE("two-level schemes need history") {
  const PhysParams p;
  Stepper st(g2, p);
  const SimState s0 = init_state(init_sinusoidal(g2), p);
  CHECK_THROWS_AS(st.step_bdf2(s0, 1e-3), MissingHistory);
  CHECK_THROWS_AS(st.step_cn(s0, 1e-3), MissingHistory);
}

TEST_CASE("uniform state is a fixed point of every scheme") {
  const PhysParams p;
  Stepper st(g2, p);
  for (SchemeId id : kAll) {
    SimState s = st.bootstrap(init_state(ScalarField(g2, 0.42), p), id, 0.05);
    for (int k = 0; k < 3; ++k) s = st.step(id, s, 0.05).state;
    CHECK(max_abs(s.phi - ScalarField(g2, 0.42)) < 1e-13);
    CHECK(max_abs(s.u - ScalarField(g2, ieq_variable(0.42, p))) < 1e-13);
  }
}

TEST_CASE("U updates") {
  const ScalarField u = testing_util::smooth_field(g2, 1.9, 0.1, 1);
  const ScalarField h = testing_util::smooth_field(g2, 0.0, 1.0, 2);
  const ScalarField phi = testing_util::smooth_field(g2, 0.3, 0.2, 3);
  const ScalarField phi2 = testing_util::smooth_field(g2, 0.3, 0.2, 4);
  CHECK(max_abs(update_u_one_level(u, h, phi, phi) - u) == 0.0);
  CHECK(max_abs(update_u_one_level(u, ScalarField(g2), phi2, phi) - u) == 0.0);
  CHECK(max_abs(update_u_one_level(u, h, phi2, phi) - (u + 0.5 * hadamard(h, phi2 - phi))) <
        1e-15);
  // Constant history: (4U - U)/3 = U, and the phi terms cancel.
  CHECK(max_abs(update_u_bdf2(u, u, h, phi, phi, phi) - u) < 1e-15);
}

TEST_CASE("steps conserve mass and decrease the modified energy") {
  const PhysParams p;
  Stepper st(g2, p);
  Spectral sp(g2);
  const ScalarField phi0 = init_random(g2, 0.3, 0.05, 77);
  for (SchemeId id : kAll) {
    for (double dt : {1e-3, 1e-1, 10.0}) {
      SimState s = st.bootstrap(init_state(phi0, p), id, dt);
      double e_prev = energy_modified(sp, s, id, p);
      for (int k = 0; k < 5; ++k) {
        StepOutput out = st.step(id, s, dt);
        const double e = energy_modified(sp, out.state, id, p);
        CHECK(e <= e_prev + 1e-9 * std::abs(e_prev));
        CHECK(std::abs(mean(out.state.phi) - 0.3) < 1e-14);
        CHECK(out.dissipation >= 0.0);
        e_prev = e;
        s = std::move(out.state);
      }
    }
  }
}

TEST_CASE("time and step counters advance") {
  const PhysParams p;
  Stepper st(g2, p);
  SimState s = init_state(init_random(g2, 0.3, 0.01, 1), p);
  for (int k = 0; k < 4; ++k) s = st.step_ls1(s, 0.25).state;
  CHECK(s.step == 4);
  CHECK(s.time == doctest::Approx(1.0));
}

TEST_CASE("LS1 and CN agree to second order over one step") {
  const PhysParams p;
  Stepper st(g2, p);
  const SimState s0 = init_state(init_sinusoidal(g2), p);
  std::vector<double> diffs;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    SimState h = s0;
    h.phi_prev = s0.phi;
    h.u_prev = s0.u;
    const ScalarField a = st.step_ls1(s0, dt).state.phi;
    const ScalarField b = st.step_cn(h, dt).state.phi;
    diffs.push_back(norm_l2(a - b));
  }
  CHECK(std::log2(diffs[0] / diffs[1]) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(std::log2(diffs[1] / diffs[2]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("a flipped explicit term breaks energy monotonicity") {
  // LS1 steps assembled by hand; sign = -1 corrupts the explicit field g.
  const PhysParams p;
  Stepper st(g2, p);
  Spectral sp(g2);
  LinearSolver& solver = st.solver();
  const double dt = 1e-2;
  auto run = [&](double sign) {
    SimState s = init_state(init_random(g2, 0.5, 0.1, 5), p);
    std::vector<double> energies{energy_ieq(sp, s.phi, s.u, p)};
    for (int k = 0; k < 10; ++k) {
      const StepOperatorCtx ctx = st.make_ctx(s.phi, 1.0 / dt, p.epsilon * p.epsilon, 0.5);
      ScalarField g = hadamard(ctx.h_field, s.u) -
                      0.5 * hadamard(hadamard(ctx.h_field, ctx.h_field), s.phi);
      g *= sign;
      const StepSolution sol = solver.solve_time_step(ctx, (1.0 / dt) * s.phi, g, mean(s.phi));
      s.u = update_u_one_level(s.u, ctx.h_field, sol.phi, s.phi);
      s.phi = sol.phi;
      energies.push_back(energy_ieq(sp, s.phi, s.u, p));
    }
    return audit_monotone(energies, 1e-9).ok;
  };
  CHECK(run(1.0));
  CHECK_FALSE(run(-1.0));
}

TEST_CASE("stepper rejects an invalid shift") {
  PhysParams p;
  p.bshift = 0.01;
  CHECK_THROWS_AS(Stepper(g2, p), ShiftTooSmall);
}
