#include "rosseland/material.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace rosseland {

bool is_symmetric(const Tensor& t, Real tol) {
  if (t.rows() != t.cols()) return false;
  const Real scale = std::max<Real>(t.cwiseAbs().maxCoeff(), 1.0);
  return (t - t.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

Real smallest_eigenvalue(const Tensor& t) {
  if (t.rows() == 1) return t(0, 0);
  Eigen::SelfAdjointEigenSolver<Tensor> es(t, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Real largest_eigenvalue(const Tensor& t) {
  if (t.rows() == 1) return t(0, 0);
  Eigen::SelfAdjointEigenSolver<Tensor> es(t, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

bool is_spd(const Tensor& t, Real tol) {
  return is_symmetric(t, tol) && smallest_eigenvalue(t) > 0;
}

TensorField TensorField::constant(const Tensor& value) {
  TensorField f;
  f.dim_ = static_cast<int>(value.rows());
  Tensor v = value;
  f.fn_ = [v](const Vec&) { return v; };
  return f;
}

TensorField TensorField::function(int dim, std::function<Tensor(const Vec&)> f) {
  TensorField out;
  out.dim_ = dim;
  out.fn_ = std::move(f);
  return out;
}

TensorField TensorField::piecewise(const Grid& cell_grid, std::vector<Tensor> element_values) {
  if (static_cast<int>(element_values.size()) != cell_grid.element_count())
    throw std::invalid_argument("tensor field: value count does not match element count");
  TensorField out;
  out.dim_ = cell_grid.dim;
  out.grid_ = std::make_shared<Grid>(cell_grid);
  out.values_ = std::make_shared<std::vector<Tensor>>(std::move(element_values));
  return out;
}

namespace {

Real wrap_unit(Real y) {
  Real w = y - std::floor(y);
  if (w >= 1.0) w = 0.0;  // guard against floor rounding at integers
  return w;
}

}  // namespace

Tensor TensorField::at(const Vec& y) const {
  if (dim_ == 0) throw std::logic_error("tensor field: empty");
  Vec w(dim_);
  for (int a = 0; a < dim_; ++a) w[a] = wrap_unit(y[a]);
  if (fn_) return fn_(w);
  const Grid& g = *grid_;
  int ex = std::min(static_cast<int>(w[0] / g.spacing(0)), g.cells[0] - 1);
  int ey = 0;
  if (dim_ == 2) ey = std::min(static_cast<int>(w[1] / g.spacing(1)), g.cells[1] - 1);
  return (*values_)[g.element_index(ex, ey)];
}

TensorField TensorField::scaled(Real factor) const {
  if (dim_ == 0) return {};
  if (fn_) {
    auto base = fn_;
    return function(dim_, [base, factor](const Vec& y) { return Tensor(factor * base(y)); });
  }
  std::vector<Tensor> scaled_values;
  scaled_values.reserve(values_->size());
  for (const auto& t : *values_) scaled_values.push_back(factor * t);
  return piecewise(*grid_, std::move(scaled_values));
}

void TemperatureBounds::validate() const {
  if (!(t_min > 0)) throw std::invalid_argument("bounds: t_min must be positive");
  if (!(t_max >= t_min)) throw std::invalid_argument("bounds: t_max must be >= t_min");
  if (!(source_slack >= 0)) throw std::invalid_argument("bounds: c_star must be nonnegative");
}

Tensor eval_coefficient(const CoefficientModel& model, Real z, const Vec& y) {
  if (!(z > 0)) throw std::domain_error("coefficient: temperature must be positive");
  Tensor a = model.conductive.at(y);
  if (!model.radiative.empty()) a += 4.0 * z * z * z * model.radiative.at(y);
  return a;
}

Tensor eval_coefficient_derivative(const CoefficientModel& model, Real z, const Vec& y) {
  if (!(z > 0)) throw std::domain_error("coefficient: temperature must be positive");
  if (model.radiative.empty()) return Tensor::Zero(model.dim(), model.dim());
  return Tensor(12.0 * z * z * model.radiative.at(y));
}

EllipticityBounds coefficient_bounds(const CoefficientModel& model, const TemperatureBounds& bounds,
                                     const Grid& sample_grid) {
  bounds.validate();
  EllipticityBounds out{std::numeric_limits<Real>::max(), 0.0};
  // z -> A(z,y) is monotone in the semidefinite order, so the extreme
  // temperatures certify the whole interval.
  for (int e = 0; e < sample_grid.element_count(); ++e) {
    const Vec y = sample_grid.element_center(e);
    out.lambda = std::min(out.lambda, smallest_eigenvalue(eval_coefficient(model, bounds.z_low(), y)));
    out.Lambda = std::max(out.Lambda, largest_eigenvalue(eval_coefficient(model, bounds.z_high(), y)));
  }
  if (!(out.lambda > 0))
    throw std::invalid_argument("coefficient: model is not uniformly elliptic on the bounds");
  return out;
}

std::vector<Tensor> sample_coefficient(const CoefficientModel& model, Real z, const Grid& grid,
                                       Real eps) {
  std::vector<Tensor> out;
  out.reserve(grid.element_count());
  for (int e = 0; e < grid.element_count(); ++e) {
    Vec y = grid.element_center(e);
    if (eps != 1.0) y /= eps;
    out.push_back(eval_coefficient(model, z, y));
  }
  return out;
}

}  // namespace rosseland
