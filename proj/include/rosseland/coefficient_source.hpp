#pragma once

#include "rosseland/homog_table.hpp"

namespace rosseland {

/// Element-coefficient provider for the nonlinear solvers: either a direct
/// model evaluated at A(z, x/eps mod Y) (eps = 1 for the plain problem) or a
/// homogenized table A0(z). Non-owning; the model/table must outlive the
/// source.
class CoefficientSource {
 public:
  CoefficientSource() = default;

  static CoefficientSource from_model(const CoefficientModel& model, Real eps = 1.0);
  static CoefficientSource from_table(const HomogenizedTable& table);

  Tensor at(Real z, const Vec& x) const;
  Tensor dz(Real z, const Vec& x) const;
  int dim() const;
  bool is_table() const { return table_ != nullptr; }
  Real eps() const { return eps_; }

 private:
  const CoefficientModel* model_ = nullptr;
  const HomogenizedTable* table_ = nullptr;
  Real eps_ = 1.0;
};

/// Coefficient per element of `grid`, frozen at the element-center values of
/// the temperature field z.
std::vector<Tensor> element_coefficients(const CoefficientSource& source, const Grid& grid,
                                         const ScalarField& z);

}  // namespace rosseland
