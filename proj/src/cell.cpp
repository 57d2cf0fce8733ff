#include "rosseland/cell.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rosseland {

namespace {

void require_periodic(const Grid& grid, const char* who) {
  if (!grid.fully_periodic())
    throw std::invalid_argument(std::string(who) + ": cell grid must be periodic on all axes");
}

void remove_mean_nodal(ScalarField& f) {
  // On a fully periodic grid all nodal weights are equal, so the arithmetic
  // mean is the integral mean.
  f.values.array() -= f.values.mean();
}

CgOptions cell_options(CgOptions options) {
  options.deflate_constants = true;
  return options;
}

ScalarField solve_periodic(const Grid& grid, SparseSystem& sys, const CgOptions& options,
                           const char* who) {
  const CgResult res = solve_cg(sys, cell_options(options));
  if (!res.converged)
    throw std::runtime_error(std::string(who) + ": cg stalled at relative residual " +
                             std::to_string(res.rel_residual) + " after " +
                             std::to_string(res.iterations) + " iterations");
  ScalarField f(grid, res.x);
  remove_mean_nodal(f);
  return f;
}

}  // namespace

CellSolution solve_cell(const CoefficientModel& model, Real z, const Grid& cell_grid,
                        const CgOptions& options) {
  require_periodic(cell_grid, "solve_cell");
  const auto coeff = sample_coefficient(model, z, cell_grid);
  SparseSystem sys = assemble_diffusion(cell_grid, coeff);
  const auto grads = shape_gradient_integrals(cell_grid);
  const int local = cell_grid.nodes_per_element();

  CellSolution cell;
  cell.temperature = z;
  cell.grid = cell_grid;
  for (int j = 0; j < cell_grid.dim; ++j) {
    // Load of the j-th problem: -integral_Y (A e_j).grad(phi).
    sys.rhs.setZero();
    for (int e = 0; e < cell_grid.element_count(); ++e) {
      const auto nodes = cell_grid.element_nodes(e);
      const Vec a_col = coeff[e].col(j);
      for (int i = 0; i < local; ++i)
        sys.rhs[nodes[i]] -= a_col.dot(grads.col(i).head(cell_grid.dim));
    }
    cell.correctors.push_back(solve_periodic(cell_grid, sys, options, "solve_cell"));
  }
  return cell;
}

Tensor homogenized_tensor(const CoefficientModel& model, Real z, const CellSolution& cell) {
  const Grid& grid = cell.grid;
  if (cell.temperature != z)
    throw std::invalid_argument("homogenized_tensor: cell solved at a different temperature");
  const auto coeff = sample_coefficient(model, z, grid);
  const int dim = grid.dim;

  Tensor a0 = Tensor::Zero(dim, dim);
  const Real w = grid.element_volume() / grid.volume();
  for (int e = 0; e < grid.element_count(); ++e) {
    Tensor g = Tensor::Zero(dim, dim);  // g(l,j) = dN_j/dy_l at the element center
    for (int j = 0; j < dim; ++j) g.col(j) = gradient_at_center(cell.corrector(j), e);
    a0 += w * (coeff[e] * (Tensor::Identity(dim, dim) + g));
  }

  // The flux form equals the (symmetric) energy form up to the linear solver
  // tolerance; a visible mismatch means a solve went wrong.
  const Real scale = std::max<Real>(a0.cwiseAbs().maxCoeff(), 1.0);
  if ((a0 - a0.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::runtime_error("homogenized_tensor: result asymmetric beyond solver tolerance");
  a0 = ((a0 + a0.transpose()) / 2).eval();
  if (smallest_eigenvalue(a0) <= 0)
    throw std::runtime_error("homogenized_tensor: result not positive definite");
  return a0;
}

ScalarField solve_general_cell(const Grid& cell_grid, std::span<const Tensor> coeff_at_element,
                               std::span<const Vec> b_at_element, std::span<const Real> d_at_element,
                               const CgOptions& options) {
  require_periodic(cell_grid, "solve_general_cell");
  const int n_elem = cell_grid.element_count();
  if (static_cast<int>(b_at_element.size()) != n_elem ||
      static_cast<int>(d_at_element.size()) != n_elem)
    throw std::invalid_argument("solve_general_cell: data size does not match element count");

  const Real vol = cell_grid.element_volume();
  Real d_integral = 0.0, d_sq = 0.0;
  for (int e = 0; e < n_elem; ++e) {
    d_integral += vol * d_at_element[e];
    d_sq += vol * d_at_element[e] * d_at_element[e];
  }
  const Real d_norm = std::sqrt(d_sq);
  if (std::abs(d_integral) > 1e-10 * std::max<Real>(1.0, d_norm))
    throw std::invalid_argument("solve_general_cell: solvability violated, integral of d = " +
                                std::to_string(d_integral));

  SparseSystem sys = assemble_diffusion(cell_grid, coeff_at_element);
  const auto grads = shape_gradient_integrals(cell_grid);
  const int local = cell_grid.nodes_per_element();
  const Real shape_integral = vol / local;
  for (int e = 0; e < n_elem; ++e) {
    const auto nodes = cell_grid.element_nodes(e);
    for (int i = 0; i < local; ++i) {
      sys.rhs[nodes[i]] += b_at_element[e].dot(grads.col(i).head(cell_grid.dim));
      sys.rhs[nodes[i]] += d_at_element[e] * shape_integral;
    }
  }
  return solve_periodic(cell_grid, sys, options, "solve_general_cell");
}

void solve_second_order(const CoefficientModel& model, CellSolution& cell, const Tensor& a0,
                        const CgOptions& options) {
  const Grid& grid = cell.grid;
  if (cell.correctors.empty())
    throw std::invalid_argument("solve_second_order: first-order correctors missing");
  const int dim = grid.dim;
  const auto coeff = sample_coefficient(model, cell.temperature, grid);
  const int n_elem = grid.element_count();

  // Element-center corrector values and gradients, reused across (k,l).
  std::vector<VectorX> n_center(dim, VectorX(n_elem));
  std::vector<std::vector<Vec>> n_grad(dim, std::vector<Vec>(n_elem));
  for (int j = 0; j < dim; ++j)
    for (int e = 0; e < n_elem; ++e) {
      n_center[j][e] = value_at_center(cell.corrector(j), e);
      n_grad[j][e] = gradient_at_center(cell.corrector(j), e);
    }

  cell.second_order.assign(dim * dim, ScalarField(grid));
  const Real vol = grid.element_volume();
  for (int k = 0; k < dim; ++k) {
    for (int l = k; l < dim; ++l) {
      // Data symmetrized over (k,l): only the symmetric part couples to the
      // (symmetric) second derivatives of u0.
      std::vector<Real> d(n_elem);
      std::vector<Vec> bv(n_elem);
      Real d_integral = 0.0, d_sq = 0.0;
      for (int e = 0; e < n_elem; ++e) {
        const Tensor& a = coeff[e];
        const Real flux_kl = a.row(k).dot(n_grad[l][e]);
        const Real flux_lk = a.row(l).dot(n_grad[k][e]);
        d[e] = a0(k, l) - a(k, l) - 0.5 * (flux_kl + flux_lk);
        bv[e] = 0.5 * (a.col(k) * n_center[l][e] + a.col(l) * n_center[k][e]);
        d_integral += vol * d[e];
        d_sq += vol * d[e] * d[e];
      }
      // Zero mean of d holds by the definition of a0; a violation indicates
      // an inconsistent a0/cell pairing.
      if (std::abs(d_integral) > 1e-8 * std::max(std::sqrt(d_sq), Real(1e-30)) &&
          std::abs(d_integral) > 1e-14)
        throw std::runtime_error("solve_second_order: rhs mean " + std::to_string(d_integral) +
                                 " violates the solvability identity");
      ScalarField m = solve_general_cell(grid, coeff, bv, d, options);
      cell.second_order[k * dim + l] = m;
      if (l != k) cell.second_order[l * dim + k] = std::move(m);
    }
  }
}

std::vector<Vec> cell_flux(const Grid& cell_grid, std::span<const Tensor> coeff_at_element,
                           const ScalarField& p, std::span<const Vec> b_at_element) {
  if (p.grid != cell_grid) throw std::invalid_argument("cell_flux: field grid mismatch");
  std::vector<Vec> flux;
  flux.reserve(cell_grid.element_count());
  for (int e = 0; e < cell_grid.element_count(); ++e)
    flux.push_back(coeff_at_element[e] * gradient_at_center(p, e) - b_at_element[e]);
  return flux;
}

VectorX weak_divergence_residual(const Grid& cell_grid, std::span<const Vec> flux_at_element,
                                 std::span<const Real> d_at_element) {
  const auto grads = shape_gradient_integrals(cell_grid);
  const int local = cell_grid.nodes_per_element();
  const Real shape_integral = cell_grid.element_volume() / local;
  VectorX r = VectorX::Zero(cell_grid.node_count());
  for (int e = 0; e < cell_grid.element_count(); ++e) {
    const auto nodes = cell_grid.element_nodes(e);
    for (int i = 0; i < local; ++i) {
      r[nodes[i]] += flux_at_element[e].dot(grads.col(i).head(cell_grid.dim));
      r[nodes[i]] -= d_at_element[e] * shape_integral;
    }
  }
  return r;
}

}  // namespace rosseland
