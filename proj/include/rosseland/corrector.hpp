#pragma once

#include "rosseland/fine.hpp"

namespace rosseland {

/// Asymptotic approximation on the fine grid, split by order:
///   total = u0 + eps N_k(x/eps) du0/dx_k + eps^2 M_kl(x/eps) d2u0/dx_k dx_l
/// with the terms beyond `order` identically zero.
struct ExpansionField {
  int order = 0;
  Real eps = 1.0;
  Grid grid;
  ScalarField u0;
  ScalarField first_order;
  ScalarField second_order;

  ScalarField total() const;
};

/// How the corrector temperature channel z = u0(x) is resolved.
enum class CorrectorSampling {
  TableNearest,        // cell solution at the library sample nearest to u0(x)
  SolveAtTemperature,  // fresh cell solve at each distinct quantized u0 value
};

struct ReconstructOptions {
  CorrectorSampling sampling = CorrectorSampling::TableNearest;
  /// Quantization levels for SolveAtTemperature (cell solves are cached per
  /// level across evaluation points).
  int solve_levels = 64;
};

/// Build the expansion of the given order (0, 1 or 2) on `fine_grid`.
/// u0 and its derivatives (nodal gradient op, applied repeatedly for second
/// derivatives) are interpolated from the u0 grid; correctors are sampled at
/// x/eps mod Y. Order 2 requires second-order fields in the library.
ExpansionField reconstruct(const ScalarField& u0, const CellLibrary& library, Real eps, int order,
                           const Grid& fine_grid, const ReconstructOptions& options = {},
                           const CoefficientModel* model = nullptr);

/// Fixed-temperature variant: every point uses the one given cell solution.
ExpansionField reconstruct(const ScalarField& u0, const CellSolution& cell, Real eps, int order,
                           const Grid& fine_grid);

/// Norms of u_ref - approx.total(): sup over nodes, L2 by midpoint quadrature,
/// H1 seminorm and max elementwise gradient error restricted to the centered
/// interior box with side `interior_fraction` * domain side.
struct NormSet {
  Real sup = 0.0;
  Real l2 = 0.0;
  Real h1_interior = 0.0;
  Real grad_interior = 0.0;
};

NormSet error_norms(const ScalarField& u_ref, const ExpansionField& approx, Real interior_fraction);

/// Energy of a field under per-element tensors: sum_e |e| (A_e grad u).grad u.
Real dirichlet_energy(const ScalarField& u, std::span<const Tensor> coeff_at_element);

/// One row of a convergence study.
struct ErrorRow {
  Real eps = 0.0;
  Real sup_err = 0.0;       // zero-order expansion, sup norm
  Real l2_err = 0.0;        // zero-order expansion, L2
  Real h1_interior_err = 0.0;   // first-order expansion, interior H1 seminorm
  Real energy_diff = 0.0;   // |E_eps - E_0|
  Real grad_interior_err = 0.0;  // first-order expansion, max interior gradient error
};

struct RateFit {
  Real rate = 0.0;      // least-squares slope of log(err) vs log(eps)
  Real residual = 0.0;  // RMS residual of the fit
  bool monotone = true; // error decreasing as eps decreases
};

struct RateSummary {
  RateFit sup, l2, h1_interior, energy, grad_interior;
};

/// Log-log least-squares fit; requires at least 3 distinct eps values (throws
/// std::invalid_argument otherwise). Non-monotone columns are fitted anyway
/// and flagged.
RateSummary fit_rates(std::span<const ErrorRow> rows);
RateFit fit_rate(std::span<const Real> eps, std::span<const Real> err);

}  // namespace rosseland
