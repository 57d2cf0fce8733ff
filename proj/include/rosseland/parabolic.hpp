#pragma once

#include "rosseland/macro.hpp"

namespace rosseland {

struct TimeGrid {
  Real horizon = 1.0;
  Real step = 0.1;

  int steps() const;
  /// Requires horizon/step to be a whole number of steps (within 1e-9).
  void validate() const;
};

/// Initial-boundary value problem for d_t u - div[A(u,x) grad u] = 0 with
/// Dirichlet data g on the boundary and u = g at t = 0.
struct ParabolicProblem {
  Grid grid;
  CoefficientSource coeff;
  std::function<Real(const Vec&, Real)> boundary;  // g(x,t), t >= 0
  ScalarField initial;                             // g(.,0)
  TemperatureBounds bounds;
  Real delay_window = 0.0;  // h0 > 0 averages the frozen coefficient in time
  /// History u(x,t) on [-h0, 0]; required when the delay is active.
  std::function<Real(const Vec&, Real)> history;
};

/// Stored time samples (t, field), oldest first.
struct Trajectory {
  std::vector<Real> times;
  std::vector<ScalarField> fields;

  void push(Real t, ScalarField f);
  void drop_before(Real t);
  /// Trapezoid-rule time average of the stored samples over [t0, t1].
  /// Endpoints are interpolated linearly between adjacent samples. Throws
  /// std::invalid_argument when the window is not covered.
  ScalarField time_average(Real t0, Real t1) const;
};

/// Time average of the trajectory over [t - h0, t]: the frozen coefficient
/// field of the delayed model. Requires stored history covering the window.
ScalarField delayed_coefficient(const Trajectory& history, Real t, Real h0);

struct StepResult {
  ScalarField field;
  SolveReport report;
};

/// One implicit Euler step from time t to t + h: lumped mass, coefficient
/// frozen at the inner Picard iterate (initialized from u_prev), Dirichlet
/// data taken at t + h. When frozen_z is given the inner iteration is skipped
/// and the single linear solve uses that coefficient field (the delayed
/// variant). Bounds are audited per step; inner non-convergence is flagged
/// and the step still returned.
StepResult rothe_step(const ScalarField& u_prev, Real t, Real h, const ParabolicProblem& problem,
                      const SolverConfig& config, const ScalarField* frozen_z = nullptr);

struct ParabolicResult {
  ScalarField final_field;
  std::vector<Real> snapshot_times;
  std::vector<ScalarField> snapshots;
  std::vector<SolveReport> step_reports;
  bool all_converged = true;
  bool bounds_flagged = false;
};

/// March the Rothe sequence over the time grid, recording snapshots at the
/// requested times (matched to the nearest step boundary).
ParabolicResult parabolic_solve(const ParabolicProblem& problem, const TimeGrid& time,
                                const SolverConfig& config,
                                std::span<const Real> snapshot_times = {});

}  // namespace rosseland
