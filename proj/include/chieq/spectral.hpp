#pragma once

// Fourier pseudo-spectral operators on the periodic grid.
//
// Spectra are stored as the real-to-complex half spectrum (x halved), scaled
// by 1/N so that the k = 0 coefficient is the spatial mean.
//
// Nyquist convention: first-derivative weights vanish on the Nyquist mode of
// each axis, the pure Laplacian keeps -(n/2)^2 there. divergence(gradient(f))
// therefore differs from laplacian(f) only on Nyquist modes. The flux operator
// v -> div(m grad v) is built from the zeroed first derivatives, so it is
// exactly self-adjoint; its kernel is spanned by the modes whose every
// wavenumber component is 0 or n/2 (the constant plus the 2^d - 1 grid-scale
// checkerboards).

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "chieq/field.hpp"

namespace chieq {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

// Owns FFTW plans and scratch buffers. One instance must not be used by two
// threads at once; separate instances are independent.
class Spectral {
 public:
  explicit Spectral(const GridSpec& grid);
  ~Spectral();
  Spectral(Spectral&&) noexcept;
  Spectral& operator=(Spectral&&) noexcept;
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const GridSpec& grid() const { return grid_; }
  std::size_t num_modes() const { return num_modes_; }

  Spectrum forward(const ScalarField& f);
  ScalarField inverse(const Spectrum& f_hat);

  // Per-mode tables over the half spectrum.
  std::span<const double> deriv_wavenumber(int axis) const { return kderiv_[axis]; }
  std::span<const double> laplacian_symbol() const { return k2_lap_; }  // |k|^2
  std::span<const double> flux_symbol() const { return k2_flux_; }      // sum kd_j^2
  bool in_flux_kernel(std::size_t mode) const { return k2_flux_[mode] == 0.0; }
  // Largest |k_j| over the axes of this mode.
  int max_abs_wavenumber(std::size_t mode) const { return kmax_[mode]; }

  // Equals the discrete L2 inner product of the corresponding fields.
  double inner(const Spectrum& a, const Spectrum& b) const;

  // Removes the kernel of the flux operator (mean and checkerboards).
  void project_range(Spectrum& f_hat) const;
  ScalarField project_range(const ScalarField& f);
  // The removed part: f - project_range(f).
  ScalarField kernel_part(const ScalarField& f);

  VectorField gradient(const ScalarField& f);
  ScalarField divergence(const VectorField& v);
  ScalarField laplacian(const ScalarField& f);

  // div(m grad v), products taken pointwise in physical space.
  ScalarField variable_laplacian(const ScalarField& v, const ScalarField& m);
  Spectrum variable_laplacian_hat(const Spectrum& v_hat, const ScalarField& m);

  // Spectrum of w * f, where f_hat is the spectrum of f.
  Spectrum multiply_hat(const Spectrum& f_hat, const ScalarField& w);

  // -<laplacian(f), f>, the discrete ||grad f||^2 paired with laplacian().
  double gradient_norm_sq(const ScalarField& f);
  // sum of m |grad v|^2 * cell volume with the flux gradient; equals
  // -<variable_laplacian(v, m), v>.
  double flux_energy(const ScalarField& v, const ScalarField& m);

  // Zeros every mode with some |k_j| > n/3 (2/3-rule truncation).
  ScalarField truncate_two_thirds(const ScalarField& f);

 private:
  void forward_raw(const double* in, Complex* out);
  void inverse_raw(const Complex* in, double* out);

  GridSpec grid_;
  std::size_t num_points_ = 0;
  std::size_t num_modes_ = 0;
  std::vector<std::vector<double>> kderiv_;
  std::vector<double> k2_lap_;
  std::vector<double> k2_flux_;
  std::vector<double> weight_;
  std::vector<int> kmax_;

  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace chieq
