#include "rosseland/coefficient_source.hpp"

#include <stdexcept>

namespace rosseland {

CoefficientSource CoefficientSource::from_model(const CoefficientModel& model, Real eps) {
  if (!(eps > 0)) throw std::invalid_argument("coefficient source: eps must be positive");
  CoefficientSource s;
  s.model_ = &model;
  s.eps_ = eps;
  return s;
}

CoefficientSource CoefficientSource::from_table(const HomogenizedTable& table) {
  CoefficientSource s;
  s.table_ = &table;
  return s;
}

Tensor CoefficientSource::at(Real z, const Vec& x) const {
  if (table_) return table_->at(z);
  if (!model_) throw std::logic_error("coefficient source: empty");
  return eval_coefficient(*model_, z, eps_ == 1.0 ? x : Vec(x / eps_));
}

Tensor CoefficientSource::dz(Real z, const Vec& x) const {
  if (table_) return table_->slope(z);
  if (!model_) throw std::logic_error("coefficient source: empty");
  return eval_coefficient_derivative(*model_, z, eps_ == 1.0 ? x : Vec(x / eps_));
}

int CoefficientSource::dim() const {
  if (table_) return table_->dim();
  if (!model_) return 0;
  return model_->dim();
}

std::vector<Tensor> element_coefficients(const CoefficientSource& source, const Grid& grid,
                                         const ScalarField& z) {
  std::vector<Tensor> out;
  out.reserve(grid.element_count());
  for (int e = 0; e < grid.element_count(); ++e)
    out.push_back(source.at(value_at_center(z, e), grid.element_center(e)));
  return out;
}

}  // namespace rosseland
