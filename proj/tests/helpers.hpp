#pragma once

#include <cmath>
#include <cstdint>

#include "chieq/field.hpp"
#include "chieq/init.hpp"

namespace testing_util {

inline chieq::ScalarField make_field(const chieq::GridSpec& g, auto&& fn) {
  chieq::ScalarField f(g);
  const int n = g.n;
  const int nz = g.dim == 3 ? n : 1;
  std::size_t idx = 0;
  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix, ++idx) f[idx] = fn(g.coord(ix), g.coord(iy), g.coord(iz));
    }
  }
  return f;
}

// A few random low modes around base.
inline chieq::ScalarField smooth_field(const chieq::GridSpec& g, double base, double amp,
                                       std::uint64_t seed) {
  chieq::Xoshiro256 rng(seed);
  double a[4], kx[4], ky[4], ph[4];
  for (int i = 0; i < 4; ++i) {
    a[i] = amp * rng.symmetric_unit() / 4.0;
    kx[i] = static_cast<double>(rng.next() % 4);
    ky[i] = static_cast<double>(rng.next() % 4);
    ph[i] = 3.0 * rng.symmetric_unit();
  }
  return make_field(g, [&](double x, double y, double) {
    double v = base;
    for (int i = 0; i < 4; ++i) v += a[i] * std::cos(kx[i] * x + ky[i] * y + ph[i]);
    return v;
  });
}

inline double rel_diff(const chieq::ScalarField& a, const chieq::ScalarField& b) {
  return chieq::norm_l2(a - b) / chieq::norm_l2(b);
}

}  // namespace testing_util
