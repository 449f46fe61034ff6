#include "chieq/init.hpp"

#include <cmath>

#include "chieq/errors.hpp"

namespace chieq {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& w : s_) w = splitmix64(sm);
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::symmetric_unit() {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * u - 1.0;
}

ScalarField init_sinusoidal(const GridSpec& grid) {
  grid.validate();
  if (grid.dim != 2) {
    throw DimensionError("the sinusoidal initial condition is two-dimensional");
  }
  ScalarField f(grid);
  for (int iy = 0; iy < grid.n; ++iy) {
    const double y = grid.coord(iy);
    for (int ix = 0; ix < grid.n; ++ix) {
      const double x = grid.coord(ix);
      f[static_cast<std::size_t>(ix) + static_cast<std::size_t>(grid.n) * iy] =
          0.25 * std::sin(2.0 * x) * std::cos(2.0 * y) + 0.48;
    }
  }
  return f;
}

ScalarField init_random(const GridSpec& grid, double mean_value, double amplitude,
                        std::uint64_t seed) {
  grid.validate();
  if (!(amplitude >= 0.0)) throw ConfigError("amplitude must be non-negative");
  ScalarField f(grid);
  if (amplitude == 0.0) {
    f += mean_value;
    return f;
  }
  Xoshiro256 rng(seed);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng.symmetric_unit();
  const double r_mean = mean(f);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = mean_value + amplitude * (f[i] - r_mean);
  return f;
}

}  // namespace chieq
