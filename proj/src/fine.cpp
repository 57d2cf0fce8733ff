#include "rosseland/fine.hpp"

#include <cmath>
#include <stdexcept>

namespace rosseland {

void EpsilonProblem::validate() const {
  if (!(eps > 0) || eps > 1) throw std::invalid_argument("fine: eps must be in (0,1]");
  const Real periods = 1.0 / eps;
  if (std::abs(periods - std::round(periods)) > 1e-9)
    throw std::invalid_argument("fine: 1/eps must be a whole number of periods");
  if (cells_per_period < 1)
    throw std::invalid_argument("fine: cells_per_period must be positive");
  if (grid_cells > 0) {
    const Real h = 1.0 / grid_cells;
    if (h > eps / cells_per_period + 1e-12)
      throw std::invalid_argument("fine: grid under-resolves the period (h > eps/cells_per_period)");
  }
  bounds.validate();
}

Grid EpsilonProblem::fine_grid() const {
  const int periods = static_cast<int>(std::round(1.0 / eps));
  const int n = grid_cells > 0 ? grid_cells : periods * cells_per_period;
  return Grid::domain(dim(), n);
}

SolveResult solve_fine(const EpsilonProblem& problem, const SolverConfig& config) {
  problem.validate();
  const Grid grid = problem.fine_grid();

  BoundaryCondition bc = problem.bc;
  // Boundary fields supplied on a different resolution are interpolated onto
  // the fine grid.
  if (auto* d = std::get_if<DirichletBC>(&bc)) {
    if (d->values.grid != grid) d->values = interpolate(d->values, grid);
  } else if (auto* r = std::get_if<RobinBC>(&bc)) {
    if (r->alpha.grid != grid) r->alpha = interpolate(r->alpha, grid);
    if (r->u_gas.grid != grid) r->u_gas = interpolate(r->u_gas, grid);
  }

  const CoefficientSource source = CoefficientSource::from_model(problem.model, problem.eps);
  return nonlinear_solve(source, grid, bc, problem.source, problem.bounds, config);
}

}  // namespace rosseland
