#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "rosseland/grid.hpp"

namespace rosseland {

bool is_symmetric(const Tensor& t, Real tol = 1e-12);
Real smallest_eigenvalue(const Tensor& t);
Real largest_eigenvalue(const Tensor& t);
bool is_spd(const Tensor& t, Real tol = 1e-12);

/// Y-periodic symmetric tensor field on the unit cell: a closed-form function
/// of y or piecewise-constant values per element of a cell grid. Evaluation
/// wraps coordinates into [0,1)^dim.
class TensorField {
 public:
  TensorField() = default;

  static TensorField constant(const Tensor& value);
  static TensorField function(int dim, std::function<Tensor(const Vec&)> f);
  static TensorField piecewise(const Grid& cell_grid, std::vector<Tensor> element_values);

  Tensor at(const Vec& y) const;
  int dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  /// Scale the field by a constant factor (used for radiative-part variants).
  TensorField scaled(Real factor) const;

 private:
  int dim_ = 0;
  std::function<Tensor(const Vec&)> fn_;
  std::shared_ptr<const Grid> grid_;                   // piecewise layout
  std::shared_ptr<const std::vector<Tensor>> values_;  // shared: fields are copied freely
};

/// Coefficient law A(z,y) = K(y) + 4 z^3 B(y): K the conductive part (SPD),
/// B the radiative part (symmetric positive semidefinite), both Y-periodic.
struct CoefficientModel {
  TensorField conductive;
  TensorField radiative;

  int dim() const { return conductive.dim(); }
};

/// Admissible temperature interval plus the slack C_* that widens the upper
/// bound when a heat source is present.
struct TemperatureBounds {
  Real t_min = 1.0;
  Real t_max = 1.0;
  Real source_slack = 0.0;  // C_*

  Real z_low() const { return t_min; }
  Real z_high() const { return t_max + source_slack; }
  void validate() const;  // requires 0 < t_min <= t_max, slack >= 0
};

/// A(z,y); requires z > 0 (throws std::domain_error otherwise).
Tensor eval_coefficient(const CoefficientModel& model, Real z, const Vec& y);

/// dA/dz = 12 z^2 B(y); same domain requirement.
Tensor eval_coefficient_derivative(const CoefficientModel& model, Real z, const Vec& y);

struct EllipticityBounds {
  Real lambda = 0.0;   // uniform lower eigenvalue bound
  Real Lambda = 0.0;   // uniform upper eigenvalue bound
};

/// Eigenvalue bounds of A(z,.) over z in [t_min, t_max + C_*], sampled at the
/// element midpoints of `sample_grid` (the same points assembly uses). The
/// monotonicity of z -> A(z,.) in the semidefinite order reduces the scan to
/// the interval endpoints. Throws std::invalid_argument when the lower bound
/// is not positive.
EllipticityBounds coefficient_bounds(const CoefficientModel& model, const TemperatureBounds& bounds,
                                     const Grid& sample_grid);

/// A(z, midpoint of e) for every element of `grid`, with midpoints mapped to
/// cell coordinates as x/eps mod Y. eps = 1 evaluates the model in place.
std::vector<Tensor> sample_coefficient(const CoefficientModel& model, Real z, const Grid& grid,
                                       Real eps = 1.0);

}  // namespace rosseland
