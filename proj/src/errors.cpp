#include "chieq/errors.hpp"

namespace chieq {

ShiftTooSmall::ShiftTooSmall(double min_value, double argmin)
    : Error("F(x) + B reaches " + std::to_string(min_value) + " at x = " +
            std::to_string(argmin) + "; increase bshift"),
      min_value_(min_value),
      argmin_(argmin) {}

NoConvergence::NoConvergence(const std::string& what_solver, int iters, double residual)
    : Error(what_solver + " did not converge after " + std::to_string(iters) +
            " iterations (relative residual " + std::to_string(residual) + ")"),
      iters_(iters),
      residual_(residual) {}

}  // namespace chieq
