#include "rosseland/macro.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

#include "rosseland/cg.hpp"

namespace rosseland {

SourceTerm SourceTerm::constant(Real value) {
  if (value == 0.0) return {};
  if (value < 0) throw std::invalid_argument("source: must be nonnegative");
  SourceTerm s;
  s.fn_ = [value](Real, const Vec&) { return value; };
  s.sup_bound_ = value;
  return s;
}

SourceTerm SourceTerm::function(std::function<Real(Real, const Vec&)> f, Real sup_bound) {
  if (sup_bound < 0) throw std::invalid_argument("source: bound must be nonnegative");
  SourceTerm s;
  s.fn_ = std::move(f);
  s.sup_bound_ = sup_bound;
  return s;
}

void SolverConfig::validate() const {
  if (!(tol > 0)) throw std::invalid_argument("solver: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("solver: max_iter must be at least 1");
  if (!(linear_tol > 0)) throw std::invalid_argument("solver: linear_tol must be positive");
  if (!(relaxation > 0 && relaxation <= 1))
    throw std::invalid_argument("solver: relaxation must be in (0,1]");
}

BoundsAudit audit_bounds(const ScalarField& u, const TemperatureBounds& bounds, Real slack) {
  BoundsAudit a;
  a.min_value = u.min_value();
  a.max_value = u.max_value();
  a.lower = bounds.t_min - slack;
  a.upper = bounds.t_max + bounds.source_slack + slack;
  a.violation = std::max({0.0, a.lower - a.min_value, a.max_value - a.upper});
  a.pass = a.violation == 0.0;
  return a;
}

namespace {

struct ProblemContext {
  const CoefficientSource& coeff;
  const Grid& grid;
  const BoundaryCondition& bc;
  const SourceTerm& source;
  const TemperatureBounds& bounds;
  const SolverConfig& config;

  std::vector<std::pair<int, Real>> dirichlet;  // node -> value
  const RobinBC* robin = nullptr;

  ProblemContext(const CoefficientSource& c, const Grid& g, const BoundaryCondition& b,
                 const SourceTerm& s, const TemperatureBounds& tb, const SolverConfig& cfg)
      : coeff(c), grid(g), bc(b), source(s), bounds(tb), config(cfg) {
    if (const auto* d = std::get_if<DirichletBC>(&bc)) {
      if (d->values.grid != grid)
        throw std::invalid_argument("solve: Dirichlet field on a different grid");
      for (int node : grid.boundary_nodes()) dirichlet.emplace_back(node, d->values.values[node]);
      if (dirichlet.empty())
        throw std::invalid_argument("solve: Dirichlet problem needs a non-periodic boundary");
    } else {
      robin = &std::get<RobinBC>(bc);
    }
  }

  // Linear system with the coefficient (and source) frozen at z.
  SparseSystem frozen_system(const ScalarField& z) const {
    const auto tensors = element_coefficients(coeff, grid, z);
    RobinData rd;
    const RobinData* rd_ptr = nullptr;
    if (robin) {
      rd.alpha = robin->alpha;
      rd.u_gas = robin->u_gas;
      rd_ptr = &rd;
    }
    SparseSystem sys = assemble_diffusion(grid, tensors, rd_ptr);
    if (!source.is_zero()) {
      std::vector<Real> f(grid.element_count());
      for (int e = 0; e < grid.element_count(); ++e)
        f[e] = source.at(value_at_center(z, e), grid.element_center(e));
      add_element_load(sys, grid, f);
    }
    if (!dirichlet.empty()) apply_dirichlet(sys, dirichlet);
    return sys;
  }

  void impose_dirichlet_values(ScalarField& u) const {
    for (const auto& [node, v] : dirichlet) u.values[node] = v;
  }

  // Relative nonlinear weak residual at u (Dirichlet rows excluded).
  Real weak_residual(const ScalarField& u) const {
    SparseSystem sys = frozen_system(u);
    VectorX r = sys.matrix * u.values - sys.rhs;
    for (const auto& [node, v] : dirichlet) {
      r[node] = 0.0;
      sys.rhs[node] = 0.0;
    }
    return r.norm() / std::max<Real>(sys.rhs.norm(), 1e-30);
  }

  void record_iterate(SolveReport& report, const ScalarField& u) const {
    report.iterate_min.push_back(u.min_value());
    report.iterate_max.push_back(u.max_value());
  }

  void finalize_report(SolveReport& report, const ScalarField& u) const {
    report.weak_residual = weak_residual(u);
    report.audit = audit_bounds(u, bounds, config.audit_slack);
    report.t_min = bounds.t_min;
    report.t_max = bounds.t_max;
    report.c_star = bounds.source_slack;
    report.bounds_flagged = !report.audit.pass;
    if (!source.is_zero()) {
      const Real excess = std::max(0.0, u.max_value() - bounds.t_max);
      report.cstar_warning = excess > bounds.source_slack + config.audit_slack;
    }
  }

  CgOptions cg_options() const {
    CgOptions opt;
    opt.tol = config.linear_tol;
    opt.max_iter = config.linear_max_iter;
    return opt;
  }
};

ScalarField linear_solve_at(const ProblemContext& ctx, const ScalarField& z,
                            const ScalarField* start, SolveReport& report) {
  SparseSystem sys = ctx.frozen_system(z);
  const CgResult res = solve_cg(sys, ctx.cg_options(), start ? &start->values : nullptr);
  report.linear_iterations += res.iterations;
  if (!res.converged) report.converged = false;
  ScalarField u(ctx.grid, res.x);
  ctx.impose_dirichlet_values(u);
  return u;
}

}  // namespace

ScalarField initial_guess(const CoefficientSource& coeff, const Grid& grid,
                          const BoundaryCondition& bc, const SourceTerm& source,
                          const TemperatureBounds& bounds, const SolverConfig& config) {
  ProblemContext ctx(coeff, grid, bc, source, bounds, config);
  SolveReport scratch;
  const ScalarField z_min(grid, bounds.t_min);
  return linear_solve_at(ctx, z_min, nullptr, scratch);
}

SolveResult picard_solve(const CoefficientSource& coeff, const Grid& grid,
                         const BoundaryCondition& bc, const SourceTerm& source,
                         const TemperatureBounds& bounds, const SolverConfig& config,
                         const std::optional<ScalarField>& initial) {
  config.validate();
  bounds.validate();
  ProblemContext ctx(coeff, grid, bc, source, bounds, config);

  SolveResult out;
  out.report.converged = true;  // cleared on linear-solver trouble
  ScalarField u = initial ? *initial : initial_guess(coeff, grid, bc, source, bounds, config);
  if (u.grid != grid) throw std::invalid_argument("solve: initial iterate on a different grid");
  ctx.record_iterate(out.report, u);

  bool done = false;
  for (int it = 0; it < config.max_iter && !done; ++it) {
    ScalarField w = linear_solve_at(ctx, u, &u, out.report);
    if (config.relaxation != 1.0)
      w.values = (1 - config.relaxation) * u.values + config.relaxation * w.values;
    ScalarField increment(grid, VectorX(w.values - u.values));
    const Real rel_inc = l2_norm(increment) / std::max<Real>(l2_norm(w), 1e-30);
    out.report.increments.push_back(rel_inc);
    u = std::move(w);
    ctx.record_iterate(out.report, u);
    out.report.iterations = it + 1;
    // The increment rule decides; the residual gate below catches frozen-
    // coefficient lag before declaring the nonlinear problem solved.
    if (rel_inc <= config.tol && ctx.weak_residual(u) <= 10 * config.linear_tol) done = true;
  }
  if (!done) out.report.converged = false;
  ctx.finalize_report(out.report, u);
  out.field = std::move(u);
  return out;
}

namespace {

// Jacobian of the weak form at u: the frozen-coefficient stiffness plus the
// coefficient-derivative coupling  integral (A'(u) delta) grad u . grad phi,
// with delta sampled at element midpoints. Nonsymmetric in general.
Eigen::SparseMatrix<Real> newton_jacobian(const ProblemContext& ctx, const ScalarField& u,
                                          const SparseSystem& frozen) {
  const Grid& grid = ctx.grid;
  const int n = grid.node_count();
  const int local = grid.nodes_per_element();
  std::vector<char> constrained(n, 0);
  for (const auto& [node, v] : ctx.dirichlet) constrained[node] = 1;

  std::vector<Eigen::Triplet<Real>> triplets;
  triplets.reserve(frozen.matrix.nonZeros() + grid.element_count() * local * local);
  for (int row = 0; row < n; ++row)
    for (Eigen::SparseMatrix<Real, Eigen::RowMajor>::InnerIterator it(frozen.matrix, row); it; ++it)
      triplets.emplace_back(row, static_cast<int>(it.col()), it.value());

  const auto grads = shape_gradient_integrals(grid);
  for (int e = 0; e < grid.element_count(); ++e) {
    const Real z = value_at_center(u, e);
    const Vec x = grid.element_center(e);
    const Vec flux_dz = ctx.coeff.dz(z, x) * gradient_at_center(u, e);
    const auto nodes = grid.element_nodes(e);
    for (int i = 0; i < local; ++i) {
      if (constrained[nodes[i]]) continue;
      const Real row_term = flux_dz.dot(grads.col(i).head(grid.dim)) / local;
      for (int j = 0; j < local; ++j) {
        if (constrained[nodes[j]]) continue;
        triplets.emplace_back(nodes[i], nodes[j], row_term);
      }
    }
  }
  Eigen::SparseMatrix<Real> jac(n, n);
  jac.setFromTriplets(triplets.begin(), triplets.end());
  return jac;
}

VectorX nonlinear_residual(const ProblemContext& ctx, const ScalarField& u, Real* rhs_norm) {
  SparseSystem sys = ctx.frozen_system(u);
  VectorX r = sys.matrix * u.values - sys.rhs;
  for (const auto& [node, v] : ctx.dirichlet) {
    r[node] = 0.0;
    sys.rhs[node] = 0.0;
  }
  if (rhs_norm) *rhs_norm = std::max<Real>(sys.rhs.norm(), 1e-30);
  return r;
}

}  // namespace

SolveResult newton_solve(const CoefficientSource& coeff, const Grid& grid,
                         const BoundaryCondition& bc, const SourceTerm& source,
                         const TemperatureBounds& bounds, const SolverConfig& config,
                         const std::optional<ScalarField>& initial) {
  config.validate();
  bounds.validate();
  ProblemContext ctx(coeff, grid, bc, source, bounds, config);

  SolveResult out;
  out.report.converged = true;
  ScalarField u = initial ? *initial : initial_guess(coeff, grid, bc, source, bounds, config);
  if (u.grid != grid) throw std::invalid_argument("solve: initial iterate on a different grid");
  ctx.record_iterate(out.report, u);

  bool done = false;
  for (int it = 0; it < config.max_iter && !done; ++it) {
    Real rhs_norm = 0.0;
    const VectorX residual = nonlinear_residual(ctx, u, &rhs_norm);
    SparseSystem frozen = ctx.frozen_system(u);
    const Eigen::SparseMatrix<Real> jac = newton_jacobian(ctx, u, frozen);

    VectorX step;
    Eigen::SparseLU<Eigen::SparseMatrix<Real>> lu;
    lu.compute(jac);
    if (lu.info() == Eigen::Success) {
      step = lu.solve(VectorX(-residual));
    }
    if (lu.info() != Eigen::Success || !step.allFinite()) {
      // Symmetrized fallback keeps the iteration alive when the full
      // linearization is unusable.
      SparseSystem sym;
      sym.matrix = Eigen::SparseMatrix<Real, Eigen::RowMajor>(
          (jac + Eigen::SparseMatrix<Real>(jac.transpose())) * 0.5);
      sym.rhs = -residual;
      const CgResult res = solve_cg(sym, ctx.cg_options());
      out.report.linear_iterations += res.iterations;
      if (!res.converged) out.report.converged = false;
      step = res.x;
      ++out.report.fallback_steps;
    }

    // Backtrack until the residual decreases (or the step bottoms out; the
    // divergence then shows in the report).
    Real t = 1.0;
    ScalarField trial = u;
    const Real r0 = residual.norm();
    bool accepted = false;
    for (int back = 0; back < 8 && !accepted; ++back) {
      trial.values = u.values + t * step;
      if (r0 == 0.0 || nonlinear_residual(ctx, trial, nullptr).norm() < r0) accepted = true;
      else t *= 0.5;
    }
    if (!accepted) trial.values = u.values + t * step;
    if (t != 1.0) ++out.report.damped_steps;

    ScalarField increment(grid, VectorX(trial.values - u.values));
    const Real rel_inc = l2_norm(increment) / std::max<Real>(l2_norm(trial), 1e-30);
    out.report.increments.push_back(rel_inc);
    u = std::move(trial);
    ctx.impose_dirichlet_values(u);
    ctx.record_iterate(out.report, u);
    out.report.iterations = it + 1;
    if (rel_inc <= config.tol && ctx.weak_residual(u) <= 10 * config.linear_tol) done = true;
  }
  if (!done) out.report.converged = false;
  ctx.finalize_report(out.report, u);
  out.field = std::move(u);
  return out;
}

SolveResult nonlinear_solve(const CoefficientSource& coeff, const Grid& grid,
                            const BoundaryCondition& bc, const SourceTerm& source,
                            const TemperatureBounds& bounds, const SolverConfig& config,
                            const std::optional<ScalarField>& initial) {
  return config.scheme == Scheme::Picard
             ? picard_solve(coeff, grid, bc, source, bounds, config, initial)
             : newton_solve(coeff, grid, bc, source, bounds, config, initial);
}

}  // namespace rosseland
