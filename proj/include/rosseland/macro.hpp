#pragma once

#include <optional>
#include <variant>

#include "rosseland/coefficient_source.hpp"

namespace rosseland {

/// Dirichlet data: nodal field whose boundary values are imposed.
struct DirichletBC {
  ScalarField values;
};

/// Robin data: boundary form coefficient alpha >= 0 and ambient value u_gas.
struct RobinBC {
  ScalarField alpha;
  ScalarField u_gas;
};

using BoundaryCondition = std::variant<DirichletBC, RobinBC>;

/// Nonnegative bounded heat source, possibly temperature dependent; evaluated
/// at the frozen iterate inside the linearized solves.
class SourceTerm {
 public:
  SourceTerm() = default;  // zero source
  static SourceTerm constant(Real value);
  static SourceTerm function(std::function<Real(Real z, const Vec& x)> f, Real sup_bound);

  Real at(Real z, const Vec& x) const { return fn_ ? fn_(z, x) : 0.0; }
  Real sup_bound() const { return sup_bound_; }
  bool is_zero() const { return !fn_; }

 private:
  std::function<Real(Real, const Vec&)> fn_;
  Real sup_bound_ = 0.0;
};

enum class Scheme { Picard, Newton };

struct SolverConfig {
  Scheme scheme = Scheme::Picard;
  Real tol = 1e-10;          // relative L2 increment stopping threshold
  int max_iter = 50;
  Real linear_tol = 1e-12;   // relative residual for the inner linear solves
  int linear_max_iter = 0;   // 0: solver default
  Real relaxation = 1.0;     // under-relaxation in (0,1]
  Real audit_slack = 1e-10;

  void validate() const;
};

struct BoundsAudit {
  Real min_value = 0.0;
  Real max_value = 0.0;
  Real lower = 0.0;   // audited box including slack
  Real upper = 0.0;
  Real violation = 0.0;  // max distance outside the box, 0 when inside
  bool pass = true;
};

/// Iteration diagnostics for one nonlinear solve.
struct SolveReport {
  int iterations = 0;
  bool converged = false;
  std::vector<Real> increments;        // per-iteration relative L2 increments
  Real weak_residual = 0.0;            // relative nonlinear residual at exit
  int linear_iterations = 0;           // accumulated inner iterations
  BoundsAudit audit;
  Real t_min = 0.0, t_max = 0.0, c_star = 0.0;
  std::vector<Real> iterate_min;       // per-iterate field ranges (confinement record)
  std::vector<Real> iterate_max;
  int damped_steps = 0;                // Newton steps that needed damping
  int fallback_steps = 0;              // Newton steps that fell back to a symmetrized solve
  bool bounds_flagged = false;         // audit violation beyond slack
  bool cstar_warning = false;          // measured source excess exceeds configured C_*

  bool flagged() const { return !converged || bounds_flagged; }
};

struct SolveResult {
  ScalarField field;
  SolveReport report;
};

/// Audit a field against [t_min - slack, t_max + C_* + slack]; reporting only,
/// never clips.
BoundsAudit audit_bounds(const ScalarField& u, const TemperatureBounds& bounds, Real slack);

/// Default initial iterate: one linear solve with the coefficient frozen at
/// z = t_min (the harmonic interpolant of the boundary data).
ScalarField initial_guess(const CoefficientSource& coeff, const Grid& grid,
                          const BoundaryCondition& bc, const SourceTerm& source,
                          const TemperatureBounds& bounds, const SolverConfig& config);

/// Linearized fixed-point iteration: each sweep solves the linear problem with
/// the coefficient (and source) frozen at the previous iterate. Stops when the
/// relative L2 increment drops below config.tol and the nonlinear weak
/// residual is at most 10 * config.linear_tol. Non-convergence is flagged in
/// the report, and the last iterate is still returned.
SolveResult picard_solve(const CoefficientSource& coeff, const Grid& grid,
                         const BoundaryCondition& bc, const SourceTerm& source,
                         const TemperatureBounds& bounds, const SolverConfig& config,
                         const std::optional<ScalarField>& initial = std::nullopt);

/// Newton iteration on the full linearization of the nonlinear form. The
/// Jacobian picks up the nonsymmetric term from the coefficient derivative
/// and is solved directly; steps that fail to reduce the residual are damped,
/// and a symmetrized solve is the recorded fallback.
SolveResult newton_solve(const CoefficientSource& coeff, const Grid& grid,
                         const BoundaryCondition& bc, const SourceTerm& source,
                         const TemperatureBounds& bounds, const SolverConfig& config,
                         const std::optional<ScalarField>& initial = std::nullopt);

/// Dispatch on config.scheme.
SolveResult nonlinear_solve(const CoefficientSource& coeff, const Grid& grid,
                            const BoundaryCondition& bc, const SourceTerm& source,
                            const TemperatureBounds& bounds, const SolverConfig& config,
                            const std::optional<ScalarField>& initial = std::nullopt);

}  // namespace rosseland
