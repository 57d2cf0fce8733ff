#pragma once

#include <Eigen/SparseCore>
#include <span>
#include <utility>
#include <vector>

#include "rosseland/grid.hpp"

namespace rosseland {

/// Symmetric sparse system in compressed-row storage plus right-hand side.
struct SparseSystem {
  Eigen::SparseMatrix<Real, Eigen::RowMajor> matrix;
  VectorX rhs;

  int size() const { return static_cast<int>(matrix.rows()); }
};

/// Boundary data for the Robin condition: adds the boundary form with
/// coefficient alpha and the load alpha * u_gas. Both fields are nodal on the
/// full grid; only boundary nodes are read. The boundary mass is row-sum
/// lumped, which keeps the M-matrix sign structure.
struct RobinData {
  ScalarField alpha;
  ScalarField u_gas;
};

/// Q1 stiffness assembly for the form with the given constant tensor per
/// element: the coefficient is sampled once per element (midpoint rule) and
/// the shape-function gradient products are integrated exactly. The RHS is
/// zero except for Robin contributions.
///
/// Throws std::invalid_argument naming the element if a tensor is not SPD.
SparseSystem assemble_diffusion(const Grid& grid, std::span<const Tensor> coeff_at_element,
                                const RobinData* robin = nullptr);

/// rhs += sum_e f_e * integral of the shape functions over element e.
void add_element_load(SparseSystem& system, const Grid& grid, std::span<const Real> f_at_element);

/// Symmetric Dirichlet elimination: constrained columns are moved to the RHS,
/// constrained rows become identity rows carrying the boundary value.
void apply_dirichlet(SparseSystem& system, std::span<const std::pair<int, Real>> node_values);

/// Row-sum lumped mass (nodal integration weights).
VectorX lumped_mass(const Grid& grid);

/// Exact element stiffness for a constant tensor on one element; exposed for
/// direct inspection in tests. 1D uses the leading 2x2 block.
Eigen::Matrix<Real, 4, 4> element_stiffness(const Tensor& coeff, const Grid& grid);

/// Integrals of the shape-function gradients over one element, one column per
/// local node (these drive cell-problem loads and flux residuals).
Eigen::Matrix<Real, 2, 4> shape_gradient_integrals(const Grid& grid);

}  // namespace rosseland
