#pragma once

// Pointwise closures of the variable-mobility Cahn-Hilliard model with the
// C2-regularized Flory-Huggins potential.
//
// The chemical potential is mu = -eps^2 Lap(phi) + f(phi) with f = F'. The
// regularized potential F replaces the logarithms outside [sigma, 1 - sigma]
// by quadratic extensions, so every closure here is defined on all finite
// reals.

namespace chieq {

struct PhysParams {
  double epsilon = 0.05;  // interface width
  double sigma = 0.005;   // regularization threshold, 0 < sigma < 1/2
  double theta = 2.5;     // Flory interaction parameter, > 1
  double bshift = 3.5;    // energy shift B, F + B > 0 everywhere

  // Throws ConfigError when a constant is outside its admissible range.
  void check_ranges() const;
};

// Regularized mobility. Equals (1 - (1 - sigma)(2x - 1)^2) / 4 on [0, 1] and
// decays to sigma / 8 outside; sigma / 8 <= M <= 1/4 for every x.
double mobility(double x, double sigma);

double free_energy(double x, const PhysParams& p);
double free_energy_deriv(double x, const PhysParams& p);
// f'(x), used for the C2 stitching checks.
double free_energy_second_deriv(double x, const PhysParams& p);

// H(x) = f(x) / sqrt(F(x) + B). Throws DomainError if F(x) + B <= 0.
double h_factor(double x, const PhysParams& p);

// Auxiliary variable U = sqrt(F(x) + B). Throws DomainError if F(x) + B <= 0.
double ieq_variable(double x, const PhysParams& p);

struct ShiftCheck {
  bool ok = true;
  double min_value = 0.0;  // smallest F(x) + B found
  double argmin = 0.0;
};

// Scans F(x) + B on [-10, 11] at spacing 1e-4. Outside the scan the outer
// branches grow like x^2 / (2 sigma), so the scan minimum is the global one.
ShiftCheck validate_shift(const PhysParams& p);

// validate_shift, throwing ShiftTooSmall on failure.
void require_valid_shift(const PhysParams& p);

}  // namespace chieq
