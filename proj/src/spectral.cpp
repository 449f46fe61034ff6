#include "chieq/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <cstring>

#include "chieq/errors.hpp"

namespace chieq {

struct Spectral::Plans {
  double* real_buf = nullptr;
  fftw_complex* cplx_buf = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Plans() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
    if (real_buf) fftw_free(real_buf);
    if (cplx_buf) fftw_free(cplx_buf);
  }
};

namespace {

// Signed wavenumber of index i on a full (non-halved) axis.
int signed_wavenumber(int i, int n) { return i < n / 2 ? i : i - n; }

}  // namespace

Spectral::Spectral(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  const int n = grid_.n;
  const int nh = n / 2 + 1;
  num_points_ = grid_.size();
  num_modes_ = num_points_ / static_cast<std::size_t>(n) * static_cast<std::size_t>(nh);

  kderiv_.assign(grid_.dim, std::vector<double>(num_modes_, 0.0));
  k2_lap_.assign(num_modes_, 0.0);
  k2_flux_.assign(num_modes_, 0.0);
  weight_.assign(num_modes_, 0.0);
  kmax_.assign(num_modes_, 0);

  const int nz = grid_.dim == 3 ? n : 1;
  std::size_t m = 0;
  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < nh; ++ix, ++m) {
        int k[3] = {ix, signed_wavenumber(iy, n), grid_.dim == 3 ? signed_wavenumber(iz, n) : 0};
        double lap = 0.0;
        double flux = 0.0;
        int kmax = 0;
        for (int d = 0; d < grid_.dim; ++d) {
          const int kd = k[d];
          const int ak = std::abs(kd);
          const double deriv = (ak == n / 2) ? 0.0 : static_cast<double>(kd);
          kderiv_[d][m] = deriv;
          lap += static_cast<double>(kd) * kd;
          flux += deriv * deriv;
          kmax = std::max(kmax, ak);
        }
        k2_lap_[m] = lap;
        k2_flux_[m] = flux;
        kmax_[m] = kmax;
        weight_[m] = (ix == 0 || ix == n / 2) ? 1.0 : 2.0;
      }
    }
  }

  plans_ = std::make_unique<Plans>();
  plans_->real_buf = fftw_alloc_real(num_points_);
  plans_->cplx_buf = fftw_alloc_complex(num_modes_);
  int dims[3] = {n, n, n};
  // FFTW_ESTIMATE keeps plan selection deterministic across runs.
  plans_->r2c = fftw_plan_dft_r2c(grid_.dim, dims, plans_->real_buf, plans_->cplx_buf,
                                  FFTW_ESTIMATE);
  plans_->c2r = fftw_plan_dft_c2r(grid_.dim, dims, plans_->cplx_buf, plans_->real_buf,
                                  FFTW_ESTIMATE);
  if (!plans_->r2c || !plans_->c2r) {
    throw Error("FFTW planning failed");
  }
}

Spectral::~Spectral() = default;
Spectral::Spectral(Spectral&&) noexcept = default;
Spectral& Spectral::operator=(Spectral&&) noexcept = default;

void Spectral::forward_raw(const double* in, Complex* out) {
  std::memcpy(plans_->real_buf, in, num_points_ * sizeof(double));
  fftw_execute(plans_->r2c);
  const double scale = 1.0 / static_cast<double>(num_points_);
  const auto* src = reinterpret_cast<const Complex*>(plans_->cplx_buf);
  for (std::size_t m = 0; m < num_modes_; ++m) {
    out[m] = src[m] * scale;
  }
}

void Spectral::inverse_raw(const Complex* in, double* out) {
  std::memcpy(plans_->cplx_buf, in, num_modes_ * sizeof(Complex));
  fftw_execute(plans_->c2r);
  std::memcpy(out, plans_->real_buf, num_points_ * sizeof(double));
}

Spectrum Spectral::forward(const ScalarField& f) {
  if (!(f.grid() == grid_)) throw DimensionError("field grid does not match transform");
  Spectrum out(num_modes_);
  forward_raw(f.data(), out.data());
  return out;
}

ScalarField Spectral::inverse(const Spectrum& f_hat) {
  ScalarField out(grid_);
  inverse_raw(f_hat.data(), out.data());
  return out;
}

double Spectral::inner(const Spectrum& a, const Spectrum& b) const {
  double s = 0.0;
  for (std::size_t m = 0; m < num_modes_; ++m) {
    s += weight_[m] * (a[m].real() * b[m].real() + a[m].imag() * b[m].imag());
  }
  return s * grid_.domain_volume();
}

void Spectral::project_range(Spectrum& f_hat) const {
  for (std::size_t m = 0; m < num_modes_; ++m) {
    if (k2_flux_[m] == 0.0) f_hat[m] = 0.0;
  }
}

ScalarField Spectral::project_range(const ScalarField& f) {
  Spectrum h = forward(f);
  project_range(h);
  return inverse(h);
}

ScalarField Spectral::kernel_part(const ScalarField& f) {
  Spectrum h = forward(f);
  for (std::size_t m = 0; m < num_modes_; ++m) {
    if (k2_flux_[m] != 0.0) h[m] = 0.0;
  }
  return inverse(h);
}

VectorField Spectral::gradient(const ScalarField& f) {
  const Spectrum f_hat = forward(f);
  VectorField out;
  Spectrum tmp(num_modes_);
  for (int d = 0; d < grid_.dim; ++d) {
    const auto& kd = kderiv_[d];
    for (std::size_t m = 0; m < num_modes_; ++m) tmp[m] = Complex(0.0, kd[m]) * f_hat[m];
    out.components.push_back(inverse(tmp));
  }
  return out;
}

ScalarField Spectral::divergence(const VectorField& v) {
  if (static_cast<int>(v.components.size()) != grid_.dim) {
    throw DimensionError("vector field has wrong number of components");
  }
  Spectrum acc(num_modes_, 0.0);
  Spectrum tmp(num_modes_);
  for (int d = 0; d < grid_.dim; ++d) {
    forward_raw(v.components[d].data(), tmp.data());
    const auto& kd = kderiv_[d];
    for (std::size_t m = 0; m < num_modes_; ++m) acc[m] += Complex(0.0, kd[m]) * tmp[m];
  }
  return inverse(acc);
}

ScalarField Spectral::laplacian(const ScalarField& f) {
  Spectrum f_hat = forward(f);
  for (std::size_t m = 0; m < num_modes_; ++m) f_hat[m] *= -k2_lap_[m];
  return inverse(f_hat);
}

Spectrum Spectral::variable_laplacian_hat(const Spectrum& v_hat, const ScalarField& m_field) {
  Spectrum acc(num_modes_, 0.0);
  Spectrum tmp(num_modes_);
  std::vector<double> phys(num_points_);
  const double* mv = m_field.data();
  for (int d = 0; d < grid_.dim; ++d) {
    const auto& kd = kderiv_[d];
    for (std::size_t m = 0; m < num_modes_; ++m) tmp[m] = Complex(0.0, kd[m]) * v_hat[m];
    inverse_raw(tmp.data(), phys.data());
    for (std::size_t i = 0; i < num_points_; ++i) phys[i] *= mv[i];
    forward_raw(phys.data(), tmp.data());
    for (std::size_t m = 0; m < num_modes_; ++m) acc[m] += Complex(0.0, kd[m]) * tmp[m];
  }
  return acc;
}

ScalarField Spectral::variable_laplacian(const ScalarField& v, const ScalarField& m) {
  require_same_grid(v, m);
  return inverse(variable_laplacian_hat(forward(v), m));
}

Spectrum Spectral::multiply_hat(const Spectrum& f_hat, const ScalarField& w) {
  std::vector<double> phys(num_points_);
  inverse_raw(f_hat.data(), phys.data());
  const double* wv = w.data();
  for (std::size_t i = 0; i < num_points_; ++i) phys[i] *= wv[i];
  Spectrum out(num_modes_);
  forward_raw(phys.data(), out.data());
  return out;
}

double Spectral::gradient_norm_sq(const ScalarField& f) {
  const Spectrum f_hat = forward(f);
  double s = 0.0;
  for (std::size_t m = 0; m < num_modes_; ++m) s += weight_[m] * k2_lap_[m] * std::norm(f_hat[m]);
  return s * grid_.domain_volume();
}

double Spectral::flux_energy(const ScalarField& v, const ScalarField& m_field) {
  require_same_grid(v, m_field);
  const VectorField g = gradient(v);
  double s = 0.0;
  for (const ScalarField& c : g.components) {
    for (std::size_t i = 0; i < num_points_; ++i) s += m_field[i] * c[i] * c[i];
  }
  return s * grid_.cell_volume();
}

ScalarField Spectral::truncate_two_thirds(const ScalarField& f) {
  Spectrum h = forward(f);
  const int cutoff = grid_.n / 3;
  for (std::size_t m = 0; m < num_modes_; ++m) {
    if (kmax_[m] > cutoff) h[m] = 0.0;
  }
  return inverse(h);
}

}  // namespace chieq
