#pragma once

#include "rosseland/macro.hpp"

namespace rosseland {

/// Epsilon-resolved reference problem on (0,1)^dim: the coefficient oscillates
/// as A(u, x/eps) with 1/eps a whole number, so whole periods tile the domain.
struct EpsilonProblem {
  Real eps = 1.0;
  int cells_per_period = 16;
  int grid_cells = 0;  // 0: (1/eps) * cells_per_period per axis
  CoefficientModel model;
  BoundaryCondition bc;
  SourceTerm source;
  TemperatureBounds bounds;

  int dim() const { return model.dim(); }
  /// Throws std::invalid_argument when 1/eps is not whole or the grid under-
  /// resolves the period (h > eps / cells_per_period).
  void validate() const;
  Grid fine_grid() const;
};

/// Direct solve of the oscillatory problem; the element coefficient is
/// A(u(center), center/eps mod Y). Audits bounds like the macro solver.
SolveResult solve_fine(const EpsilonProblem& problem, const SolverConfig& config);

}  // namespace rosseland
