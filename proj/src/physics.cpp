#include "chieq/physics.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "chieq/errors.hpp"

namespace chieq {

namespace {

constexpr double kScanLo = -10.0;
constexpr double kScanHi = 11.0;
constexpr double kScanStep = 1e-4;

// x ln x with the 0 ln 0 = 0 limit; only called with x >= sigma or x = 0 on
// branches where the argument is guaranteed non-negative.
double xlogx(double x) {
  assert(x >= 0.0);
  return x > 0.0 ? x * std::log(x) : 0.0;
}

}  // namespace

void PhysParams::check_ranges() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be positive, got " + std::to_string(epsilon));
  }
  if (!(sigma > 0.0 && sigma < 0.5)) {
    throw ConfigError("sigma must lie in (0, 0.5), got " + std::to_string(sigma));
  }
  if (!(theta > 1.0) || !std::isfinite(theta)) {
    throw ConfigError("theta must exceed 1, got " + std::to_string(theta));
  }
  if (!(bshift > 0.0) || !std::isfinite(bshift)) {
    throw ConfigError("bshift must be positive, got " + std::to_string(bshift));
  }
}

double mobility(double x, double sigma) {
  const double s = 2.0 * x - 1.0;
  const double s2 = s * s;
  if (x >= 0.0 && x <= 1.0) {
    return 0.25 * (1.0 - (1.0 - sigma) * s2);
  }
  double expo = -2.0 * (1.0 - sigma) * (s2 - 1.0) / sigma;
  if (expo < -700.0) {
    return 0.125 * sigma;
  }
  return 0.125 * sigma * (1.0 + std::exp(expo));
}

double free_energy(double x, const PhysParams& p) {
  const double sg = p.sigma;
  const double mix = p.theta * (x - x * x);
  if (x >= 1.0 - sg) {
    const double y = 1.0 - x;
    return xlogx(x) + y * y / (2.0 * sg) + y * std::log(sg) - 0.5 * sg + mix;
  }
  if (x <= sg) {
    return xlogx(1.0 - x) + x * x / (2.0 * sg) + x * std::log(sg) - 0.5 * sg + mix;
  }
  return xlogx(x) + xlogx(1.0 - x) + mix;
}

double free_energy_deriv(double x, const PhysParams& p) {
  const double sg = p.sigma;
  const double mix = p.theta * (1.0 - 2.0 * x);
  if (x >= 1.0 - sg) {
    return std::log(x) + 1.0 - (1.0 - x) / sg - std::log(sg) + mix;
  }
  if (x <= sg) {
    return -std::log(1.0 - x) - 1.0 + x / sg + std::log(sg) + mix;
  }
  return std::log(x / (1.0 - x)) + mix;
}

double free_energy_second_deriv(double x, const PhysParams& p) {
  const double sg = p.sigma;
  if (x >= 1.0 - sg) {
    return 1.0 / x + 1.0 / sg - 2.0 * p.theta;
  }
  if (x <= sg) {
    return 1.0 / (1.0 - x) + 1.0 / sg - 2.0 * p.theta;
  }
  return 1.0 / x + 1.0 / (1.0 - x) - 2.0 * p.theta;
}

double ieq_variable(double x, const PhysParams& p) {
  const double shifted = free_energy(x, p) + p.bshift;
  if (!(shifted > 0.0)) {
    throw DomainError("F(x) + B = " + std::to_string(shifted) + " <= 0 at x = " +
                      std::to_string(x));
  }
  return std::sqrt(shifted);
}

double h_factor(double x, const PhysParams& p) {
  return free_energy_deriv(x, p) / ieq_variable(x, p);
}

ShiftCheck validate_shift(const PhysParams& p) {
  ShiftCheck out;
  out.min_value = std::numeric_limits<double>::infinity();
  const long count = std::lround((kScanHi - kScanLo) / kScanStep);
  for (long i = 0; i <= count; ++i) {
    const double x = kScanLo + static_cast<double>(i) * kScanStep;
    const double v = free_energy(x, p) + p.bshift;
    if (v < out.min_value) {
      out.min_value = v;
      out.argmin = x;
    }
  }
  // Beyond the scan window the outer branches are convex (1/sigma > 2 theta)
  // and already moving away from the minimum at the window edges.
  const bool outer_grows = 1.0 / p.sigma > 2.0 * p.theta &&
                           free_energy_deriv(kScanLo, p) < 0.0 &&
                           free_energy_deriv(kScanHi, p) > 0.0;
  out.ok = out.min_value > 0.0 && outer_grows;
  return out;
}

void require_valid_shift(const PhysParams& p) {
  const ShiftCheck c = validate_shift(p);
  if (!c.ok) {
    throw ShiftTooSmall(c.min_value, c.argmin);
  }
}

}  // namespace chieq
