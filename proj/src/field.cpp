#include "chieq/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chieq/errors.hpp"

namespace chieq {

void GridSpec::validate() const {
  if (dim != 2 && dim != 3) {
    throw DimensionError("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (n < 8 || (n & (n - 1)) != 0) {
    throw ConfigError("modes per axis must be a power of two >= 8, got " +
                      std::to_string(n));
  }
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int d = 0; d < dim; ++d) {
    s *= static_cast<std::size_t>(n);
  }
  return s;
}

double GridSpec::spacing() const { return 2.0 * std::numbers::pi / n; }

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

double GridSpec::domain_volume() const { return std::pow(2.0 * std::numbers::pi, dim); }

double GridSpec::coord(int i) const { return spacing() * i; }

ScalarField::ScalarField(const GridSpec& grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DimensionError("field has " + std::to_string(values_.size()) +
                         " samples, grid expects " + std::to_string(grid_.size()));
  }
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double s) {
  for (double& v : values_) v += s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid()) || a.size() != b.size()) {
    throw DimensionError("fields live on different grids");
  }
}

double mean(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * a.grid().cell_volume();
}

double norm_l2(const ScalarField& f) { return std::sqrt(inner(f, f)); }

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const ScalarField& f) {
  for (double v : f.values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

}  // namespace chieq
