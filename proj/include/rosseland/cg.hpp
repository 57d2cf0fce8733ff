#pragma once

#include "rosseland/assembly.hpp"

namespace rosseland {

struct CgOptions {
  Real tol = 1e-12;      // relative residual target
  int max_iter = 20000;  // 0 means 10 * n
  /// Project constants out of the residual each iteration and return a
  /// zero-mean solution; required for pure-periodic (singular) systems.
  bool deflate_constants = false;
};

struct CgResult {
  VectorX x;
  int iterations = 0;
  Real rel_residual = 0.0;
  bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients with a fixed evaluation order;
/// bitwise deterministic for identical inputs. Requires the matrix to be SPD
/// on the free space (constants excluded when deflating). Non-convergence is
/// reported in the result, not thrown.
CgResult solve_cg(const SparseSystem& system, const CgOptions& options = {},
                  const VectorX* initial = nullptr);

inline CgResult solve_cg(const SparseSystem& system, Real tol, int max_iter) {
  return solve_cg(system, CgOptions{tol, max_iter, false});
}

}  // namespace rosseland
