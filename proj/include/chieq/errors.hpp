#pragma once

#include <stdexcept>
#include <string>

namespace chieq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pointwise closure was evaluated where F(x) + B <= 0.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The energy shift B does not keep F(x) + B strictly positive.
class ShiftTooSmall : public Error {
 public:
  ShiftTooSmall(double min_value, double argmin);
  double min_value() const { return min_value_; }
  double argmin() const { return argmin_; }

 private:
  double min_value_;
  double argmin_;
};

// A Krylov iteration hit its iteration cap before reaching tolerance.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what_solver, int iters, double residual);
  int iters() const { return iters_; }
  double residual() const { return residual_; }

 private:
  int iters_;
  double residual_;
};

// The right-hand side handed to the inverse quasi-Laplacian is not mean-zero.
class MeanNotZero : public Error {
 public:
  using Error::Error;
};

// The solved field lost the conserved mean.
class MassDrift : public Error {
 public:
  using Error::Error;
};

// A two-level scheme or energy was requested without the previous time level.
class MissingHistory : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A time step failed inside a run; carries the step index that failed.
class StepFailure : public Error {
 public:
  StepFailure(long step, const std::string& cause)
      : Error("step " + std::to_string(step) + ": " + cause), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace chieq
