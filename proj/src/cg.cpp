#include "rosseland/cg.hpp"

#include <cmath>

namespace rosseland {

namespace {

void remove_mean(VectorX& v) { v.array() -= v.mean(); }

}  // namespace

CgResult solve_cg(const SparseSystem& system, const CgOptions& options, const VectorX* initial) {
  const auto& a = system.matrix;
  const int n = system.size();
  const int max_iter = options.max_iter > 0 ? options.max_iter : 10 * n;

  VectorX b = system.rhs;
  if (options.deflate_constants) remove_mean(b);

  CgResult res;
  const Real b_norm = b.norm();
  if (b_norm == 0.0) {
    res.x = VectorX::Zero(n);
    res.converged = true;
    return res;
  }

  // Jacobi preconditioner; zero diagonals (possible on eliminated rows) pass through.
  VectorX inv_diag(n);
  for (int i = 0; i < n; ++i) {
    const Real d = a.coeff(i, i);
    inv_diag[i] = d != 0.0 ? 1.0 / d : 1.0;
  }

  VectorX x = initial ? *initial : VectorX::Zero(n);
  if (options.deflate_constants) remove_mean(x);
  VectorX r = b - a * x;
  if (options.deflate_constants) remove_mean(r);
  VectorX z = inv_diag.cwiseProduct(r);
  VectorX p = z;
  Real rz = r.dot(z);

  while (true) {
    res.rel_residual = r.norm() / b_norm;
    if (res.rel_residual <= options.tol) {
      res.converged = true;
      break;
    }
    if (res.iterations >= max_iter) break;
    VectorX ap = a * p;
    const Real p_ap = p.dot(ap);
    if (!(p_ap > 0)) break;  // lost positive definiteness
    const Real alpha = rz / p_ap;
    x += alpha * p;
    r -= alpha * ap;
    if (options.deflate_constants) remove_mean(r);
    z = inv_diag.cwiseProduct(r);
    const Real rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
    ++res.iterations;
  }
  if (options.deflate_constants) remove_mean(x);
  res.x = std::move(x);
  return res;
}

}  // namespace rosseland
