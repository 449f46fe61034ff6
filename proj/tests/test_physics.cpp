#include <cmath>

#include "chieq/errors.hpp"
#include "chieq/init.hpp"
#include "chieq/physics.hpp"
#include "doctest.h"

using namespace chieq;

TEST_CASE("mobility at reference points") {
  CHECK(mobility(0.5, 0.005) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(mobility(0.0, 0.005) == doctest::Approx(0.00125).epsilon(1e-12));
  CHECK(mobility(2.0, 0.005) == doctest::Approx(6.25e-4).epsilon(1e-12));
  CHECK(mobility(-3.0, 0.005) == doctest::Approx(6.25e-4).epsilon(1e-12));
}

TEST_CASE("mobility is continuous at 0 and 1") {
  for (double x : {0.0, 1.0}) {
    const double lo = mobility(std::nextafter(x, -1.0), 0.005);
    const double hi = mobility(std::nextafter(x, 2.0), 0.005);
    CHECK(std::abs(lo - hi) < 1e-12);
  }
}

TEST_CASE("mobility bounds and symmetry on a fine scan") {
  const double s = 0.005;
  for (int i = 0; i <= 21000; ++i) {
    const double x = -10.0 + 1e-3 * i;
    const double m = mobility(x, s);
    REQUIRE(m >= s / 8.0);
    REQUIRE(m <= 0.25);
    REQUIRE(std::abs(m - mobility(1.0 - x, s)) <= 1e-15 * m);
  }
}

TEST_CASE("free energy reference values") {
  const PhysParams p;
  CHECK(free_energy(0.5, p) == doctest::Approx(std::log(0.5) + 0.625).epsilon(1e-14));
  CHECK(free_energy(0.5, p) == doctest::Approx(-0.0681472).epsilon(1e-6));
  CHECK(free_energy(0.0, p) == doctest::Approx(-0.0025).epsilon(1e-12));
  CHECK(free_energy(1.0, p) == doctest::Approx(-0.0025).epsilon(1e-12));
  const double x = 0.48;
  CHECK(free_energy(x, p) ==
        doctest::Approx(x * std::log(x) + (1 - x) * std::log(1 - x) + 2.5 * x * (1 - x))
            .epsilon(1e-14));
}

TEST_CASE("chemical potential reference values") {
  const PhysParams p;
  CHECK(std::abs(free_energy_deriv(0.5, p)) < 1e-15);
  const double s = p.sigma;
  const double expected = std::log(s / (1 - s)) + p.theta * (1 - 2 * s);
  CHECK(free_energy_deriv(std::nextafter(s, 0.0), p) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(free_energy_deriv(std::nextafter(s, 1.0), p) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("branches stitch to second order") {
  const PhysParams p;
  using Fn = double (*)(double, const PhysParams&);
  for (double x : {p.sigma, 1.0 - p.sigma}) {
    for (Fn fn : {Fn(free_energy), Fn(free_energy_deriv), Fn(free_energy_second_deriv)}) {
      const double a = fn(std::nextafter(x, -1.0), p);
      const double b = fn(std::nextafter(x, 2.0), p);
      CHECK(std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1.0}));
    }
  }
}

TEST_CASE("f matches centered differences of F") {
  const PhysParams p;
  Xoshiro256 rng(7);
  const double h = 1e-6;
  for (int i = 0; i < 2000; ++i) {
    const double x = 0.5 + 3.0 * rng.symmetric_unit();
    const double fd = (free_energy(x + h, p) - free_energy(x - h, p)) / (2 * h);
    REQUIRE(std::abs(fd - free_energy_deriv(x, p)) <= 1e-6 * std::max(std::abs(fd), 1.0));
  }
}

TEST_CASE("f' matches centered differences of f") {
  const PhysParams p;
  Xoshiro256 rng(8);
  const double h = 1e-6;
  for (int i = 0; i < 2000; ++i) {
    const double x = 0.5 + 3.0 * rng.symmetric_unit();
    const double fd = (free_energy_deriv(x + h, p) - free_energy_deriv(x - h, p)) / (2 * h);
    REQUIRE(std::abs(fd - free_energy_second_deriv(x, p)) <=
            1e-5 * std::max(std::abs(fd), 1.0));
  }
}

TEST_CASE("potential is symmetric about one half") {
  const PhysParams p;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -2.0 + 5e-3 * i;
    CHECK(free_energy(x, p) == doctest::Approx(free_energy(1.0 - x, p)).epsilon(1e-13));
  }
}

TEST_CASE("H and U") {
  const PhysParams p;
  CHECK(h_factor(0.5, p) == 0.0);
  CHECK(ieq_variable(0.5, p) == doctest::Approx(std::sqrt(-0.0681472 + 3.5)).epsilon(1e-7));
  CHECK(ieq_variable(0.5, p) == doctest::Approx(1.852527).epsilon(1e-6));
  CHECK(h_factor(0.0, p) ==
        doctest::Approx(free_energy_deriv(0.0, p) / std::sqrt(free_energy(0.0, p) + 3.5)));
  for (int i = 0; i <= 4000; ++i) {
    const double x = -1.0 + 7.5e-4 * i;
    const double h = h_factor(x, p);
    const double f = free_energy_deriv(x, p);
    REQUIRE(std::abs(h * h * (free_energy(x, p) + p.bshift) - f * f) <=
            1e-12 * std::max(f * f, 1e-300));
  }
}

TEST_CASE("H and U refuse a non-positive shifted potential") {
  PhysParams p;
  p.bshift = 0.0;
  CHECK_THROWS_AS(ieq_variable(0.5, p), DomainError);
  CHECK_THROWS_AS(h_factor(0.5, p), DomainError);
}

TEST_CASE("shift validation") {
  PhysParams p;
  CHECK(validate_shift(p).ok);
  CHECK_NOTHROW(require_valid_shift(p));

  p.bshift = 1e6;
  CHECK(validate_shift(p).ok);

  p.bshift = 0.0;
  const ShiftCheck c = validate_shift(p);
  CHECK_FALSE(c.ok);
  CHECK(c.min_value < 0.0);
  // theta = 2.5 makes F a double well; the minimum sits at a binodal point.
  CHECK(free_energy_deriv(c.argmin, p) == doctest::Approx(0.0).epsilon(1e-2));
  CHECK(c.min_value <= free_energy(0.5, p));
  CHECK_THROWS_AS(require_valid_shift(p), ShiftTooSmall);
}

TEST_CASE("parameter ranges") {
  PhysParams p;
  CHECK_NOTHROW(p.check_ranges());
  p.sigma = 0.6;
  CHECK_THROWS_AS(p.check_ranges(), ConfigError);
  p = {};
  p.epsilon = -1.0;
  CHECK_THROWS_AS(p.check_ranges(), ConfigError);
  p = {};
  p.theta = 0.5;
  CHECK_THROWS_AS(p.check_ranges(), ConfigError);
}
