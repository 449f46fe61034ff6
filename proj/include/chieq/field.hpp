#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chieq {

// Uniform periodic grid on [0, 2 pi]^dim with n points per axis. Storage is
// row-major with x varying fastest: index = ix + n * (iy + n * iz).
struct GridSpec {
  int dim = 2;
  int n = 64;

  // Throws DimensionError / ConfigError on an unsupported grid.
  void validate() const;

  std::size_t size() const;
  double spacing() const;
  double cell_volume() const;
  double domain_volume() const;
  // Coordinate of index i along any axis.
  double coord(int i) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Real-valued periodic field sampled on a GridSpec.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const GridSpec& grid, double fill = 0.0);
  ScalarField(const GridSpec& grid, std::vector<double> values);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double s);

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

// One ScalarField per spatial axis.
struct VectorField {
  std::vector<ScalarField> components;
};

void require_same_grid(const ScalarField& a, const ScalarField& b);

double mean(const ScalarField& f);
// Discrete L2 inner product: sum(a * b) * cell volume.
double inner(const ScalarField& a, const ScalarField& b);
double norm_l2(const ScalarField& f);
double max_abs(const ScalarField& f);
bool all_finite(const ScalarField& f);

// Pointwise a * b.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);

// Applies fn to each sample.
template <class Fn>
ScalarField map_field(const ScalarField& f, Fn&& fn) {
  ScalarField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = fn(f[i]);
  }
  return out;
}

}  // namespace chieq
