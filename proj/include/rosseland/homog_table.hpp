#pragma once

#include "rosseland/cell.hpp"

namespace rosseland {

/// Temperature-sampled homogenized coefficient z -> A0(z) with componentwise
/// piecewise-linear interpolation between samples. Evaluation clamps z to the
/// sampled interval. Every stored tensor is validated SPD on construction.
class HomogenizedTable {
 public:
  HomogenizedTable() = default;
  HomogenizedTable(VectorX z_samples, std::vector<Tensor> tensors);

  Tensor at(Real z) const;
  /// Slope of the interpolant in z (piecewise constant); used by Newton.
  Tensor slope(Real z) const;

  int sample_count() const { return static_cast<int>(z_.size()); }
  Real z_sample(int i) const { return z_[i]; }
  const Tensor& tensor(int i) const { return tensors_[i]; }
  int nearest_sample(Real z) const;
  int dim() const { return tensors_.empty() ? 0 : static_cast<int>(tensors_.front().rows()); }
  Real z_front() const { return z_[0]; }
  Real z_back() const { return z_[z_.size() - 1]; }

 private:
  VectorX z_;
  std::vector<Tensor> tensors_;
};

/// Cell solutions retained at the table's sample temperatures, for corrector
/// reconstruction at temperatures picked per evaluation point.
struct CellLibrary {
  VectorX z;
  std::vector<CellSolution> cells;

  bool empty() const { return cells.empty(); }
  int nearest_index(Real z_query) const;
  const CellSolution& nearest(Real z_query) const { return cells.at(nearest_index(z_query)); }
};

/// Build the homogenized table on `samples` uniformly spaced temperatures
/// spanning [t_min, t_max + C_*]. Requires samples >= 2. When `keep_cells` is
/// given, the cell solutions are retained there (with second-order fields when
/// `second_order` is set).
HomogenizedTable build_table(const CoefficientModel& model, const TemperatureBounds& bounds,
                             int samples, const Grid& cell_grid, CellLibrary* keep_cells = nullptr,
                             bool second_order = false, const CgOptions& options = {});

}  // namespace rosseland
