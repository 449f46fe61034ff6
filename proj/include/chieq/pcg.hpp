#pragma once

#include <cmath>
#include <cstddef>

namespace chieq {

struct PcgOutcome {
  int iters = 0;
  double residual = 0.0;  // true relative residual ||b - A x|| / ||b||
  bool converged = false;
};

// Preconditioned conjugate gradient for an operator that is symmetric
// positive definite on the subspace containing rhs. Vec needs size(),
// operator[] and copy construction; dot is the inner product that makes
// apply and precond symmetric.
//
// x carries the initial guess in and the solution out. When the recursive
// residual reports convergence the true residual is recomputed; if it misses
// the tolerance (inexact operator) the iteration restarts from x.
template <class Vec, class Apply, class Precond, class Dot>
PcgOutcome pcg_solve(Apply&& apply, const Vec& rhs, Precond&& precond, Dot&& dot, Vec& x,
                     double rel_tol, int max_iter) {
  PcgOutcome out;
  const double bnorm = std::sqrt(dot(rhs, rhs));
  if (bnorm == 0.0) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.0 * x[i];
    out.converged = true;
    return out;
  }
  const double target = rel_tol * bnorm;

  auto residual_of = [&](const Vec& xv) {
    Vec r = apply(xv);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
    return r;
  };

  Vec r = residual_of(x);
  double rnorm = std::sqrt(dot(r, r));
  out.residual = rnorm / bnorm;
  if (rnorm <= target) {
    out.converged = true;
    return out;
  }

  while (out.iters < max_iter) {
    Vec z = precond(r);
    Vec p = z;
    double rz = dot(r, z);
    bool recursive_done = false;
    bool breakdown = false;
    while (out.iters < max_iter) {
      const Vec q = apply(p);
      const double pq = dot(p, q);
      if (!(pq > 0.0)) {
        breakdown = true;
        break;
      }
      const double alpha = rz / pq;
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * q[i];
      }
      ++out.iters;
      rnorm = std::sqrt(dot(r, r));
      if (rnorm <= target) {
        recursive_done = true;
        break;
      }
      z = precond(r);
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }
    r = residual_of(x);
    rnorm = std::sqrt(dot(r, r));
    out.residual = rnorm / bnorm;
    if (rnorm <= target) {
      out.converged = true;
      return out;
    }
    if (breakdown || (!recursive_done && out.iters >= max_iter)) break;
  }
  return out;
}

}  // namespace chieq
