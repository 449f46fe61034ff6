#pragma once

#include <cstdint>

#include "chieq/field.hpp"

namespace chieq {

// xoshiro256** seeded through splitmix64. Output depends only on the seed, so
// random initial data is reproducible across platforms and compilers.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);
  std::uint64_t next();
  // Uniform on [-1, 1) with 53 random bits.
  double symmetric_unit();

 private:
  std::uint64_t s_[4];
};

// 0.25 sin(2x) cos(2y) + 0.48. Two-dimensional grids only.
ScalarField init_sinusoidal(const GridSpec& grid);

// mean + amplitude * r with r i.i.d. uniform on [-1, 1], then shifted by its
// own sample mean so that mean(result) == mean.
ScalarField init_random(const GridSpec& grid, double mean_value, double amplitude,
                        std::uint64_t seed);

}  // namespace chieq
