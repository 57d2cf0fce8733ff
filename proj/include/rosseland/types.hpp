#pragma once

#include <Eigen/Core>

namespace rosseland {

using Real = double;
using VectorX = Eigen::VectorXd;

// Spatial dimension is 1 or 2; small tensors/vectors are dynamically sized
// with inline storage so no evaluation allocates.
using Tensor = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::AutoAlign, 2, 2>;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1, Eigen::AutoAlign, 2, 1>;

inline Tensor identity_tensor(int dim) { return Tensor::Identity(dim, dim); }

inline Tensor scalar_tensor(int dim, Real a) {
  Tensor t = Tensor::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) t(i, i) = a;
  return t;
}

}  // namespace rosseland
