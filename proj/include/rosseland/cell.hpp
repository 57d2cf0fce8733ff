#pragma once

#include <span>

#include "rosseland/cg.hpp"
#include "rosseland/material.hpp"

namespace rosseland {

/// Periodic cell correctors at a fixed temperature: the first-order fields
/// N_j (one per axis) and, once solve_second_order has run, the second-order
/// fields M_kl stored row-major. All fields are zero-mean over Y.
struct CellSolution {
  Real temperature = 0.0;
  Grid grid;
  std::vector<ScalarField> correctors;
  std::vector<ScalarField> second_order;

  int dim() const { return grid.dim; }
  bool has_second_order() const { return !second_order.empty(); }
  const ScalarField& corrector(int j) const { return correctors.at(j); }
  const ScalarField& second(int k, int l) const { return second_order.at(k * dim() + l); }
};

/// Solve the first-order cell problems on a fully periodic grid: for each
/// axis j, find zero-mean periodic N_j with
///   integral_Y A(z,y) grad(N_j + y_j) . grad(phi) = 0  for all periodic phi.
/// Throws std::invalid_argument for a non-periodic grid and std::runtime_error
/// when the linear solver fails.
CellSolution solve_cell(const CoefficientModel& model, Real z, const Grid& cell_grid,
                        const CgOptions& options = {});

/// Homogenized tensor a0_ij = integral_Y [a_ij + a_il dN_j/dy_l] dy, evaluated
/// with the assembly quadrature (coefficient and corrector gradients at
/// element midpoints). Throws std::runtime_error if the result is not SPD,
/// which indicates a solver bug upstream.
Tensor homogenized_tensor(const CoefficientModel& model, Real z, const CellSolution& cell);

/// Solve the second-order cell problems and store M_kl on `cell`. Each M_kl
/// is the zero-mean periodic solution of the general cell problem with
///   d  = a0_kl - a_kl - a_km dN_l/dy_m   (zero mean by the definition of a0)
///   Bv = column k of A times N_l,
/// symmetrized over (k,l) so that M_kl = M_lk. Throws std::runtime_error when
/// the consistency check on the mean of d fails.
void solve_second_order(const CoefficientModel& model, CellSolution& cell, const Tensor& a0,
                        const CgOptions& options = {});

/// General periodic cell problem with element-sampled data:
///   integral_Y A grad(P).grad(phi) = integral_Y Bv.grad(phi) + integral_Y d phi
/// for all periodic phi; P is returned zero-mean. The solvability condition
/// integral_Y d = 0 is enforced (violations throw std::invalid_argument).
ScalarField solve_general_cell(const Grid& cell_grid, std::span<const Tensor> coeff_at_element,
                               std::span<const Vec> b_at_element, std::span<const Real> d_at_element,
                               const CgOptions& options = {});

/// Flux of a general cell solution at element midpoints: zeta = A grad(P) - Bv.
std::vector<Vec> cell_flux(const Grid& cell_grid, std::span<const Tensor> coeff_at_element,
                           const ScalarField& p, std::span<const Vec> b_at_element);

/// Residual of the weak divergence identity for a flux field:
///   r_i = sum_e zeta_e . (integral of grad phi_i) + sum_e d_e (integral of phi_i),
/// which vanishes (up to the solver tolerance) for fluxes of solutions.
VectorX weak_divergence_residual(const Grid& cell_grid, std::span<const Vec> flux_at_element,
                                 std::span<const Real> d_at_element);

}  // namespace rosseland
