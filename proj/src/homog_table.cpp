#include "rosseland/homog_table.hpp"

#include <cmath>
#include <stdexcept>

namespace rosseland {

HomogenizedTable::HomogenizedTable(VectorX z_samples, std::vector<Tensor> tensors)
    : z_(std::move(z_samples)), tensors_(std::move(tensors)) {
  if (z_.size() < 2) throw std::invalid_argument("table: need at least 2 samples");
  if (static_cast<int>(tensors_.size()) != z_.size())
    throw std::invalid_argument("table: sample count mismatch");
  for (int i = 1; i < z_.size(); ++i)
    if (!(z_[i] > z_[i - 1])) throw std::invalid_argument("table: samples must increase");
  for (const auto& t : tensors_)
    if (!is_spd(t)) throw std::invalid_argument("table: stored tensor not SPD");
}

namespace {

// Index of the interval containing z (clamped).
int interval_of(const VectorX& z, Real q) {
  int lo = 0, hi = static_cast<int>(z.size()) - 2;
  if (q <= z[0]) return 0;
  if (q >= z[z.size() - 1]) return hi;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (z[mid] <= q) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

}  // namespace

Tensor HomogenizedTable::at(Real z) const {
  const int i = interval_of(z_, z);
  const Real t = std::clamp((z - z_[i]) / (z_[i + 1] - z_[i]), 0.0, 1.0);
  return (1 - t) * tensors_[i] + t * tensors_[i + 1];
}

Tensor HomogenizedTable::slope(Real z) const {
  const int i = interval_of(z_, z);
  return (tensors_[i + 1] - tensors_[i]) / (z_[i + 1] - z_[i]);
}

int HomogenizedTable::nearest_sample(Real z) const {
  const int i = interval_of(z_, z);
  return (std::abs(z - z_[i]) <= std::abs(z_[i + 1] - z)) ? i : i + 1;
}

int CellLibrary::nearest_index(Real z_query) const {
  if (cells.empty()) throw std::logic_error("cell library: empty");
  int best = 0;
  Real dist = std::abs(z_query - z[0]);
  for (int i = 1; i < z.size(); ++i) {
    const Real d = std::abs(z_query - z[i]);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return best;
}

HomogenizedTable build_table(const CoefficientModel& model, const TemperatureBounds& bounds,
                             int samples, const Grid& cell_grid, CellLibrary* keep_cells,
                             bool second_order, const CgOptions& options) {
  bounds.validate();
  if (samples < 2) throw std::invalid_argument("build_table: need at least 2 samples");
  VectorX z(samples);
  const Real lo = bounds.z_low(), hi = bounds.z_high();
  for (int i = 0; i < samples; ++i)
    z[i] = lo + (hi - lo) * (samples == 1 ? 0.0 : Real(i) / (samples - 1));
  if (hi == lo)
    throw std::invalid_argument("build_table: degenerate temperature interval");

  std::vector<Tensor> tensors;
  tensors.reserve(samples);
  if (keep_cells) {
    keep_cells->z = z;
    keep_cells->cells.clear();
    keep_cells->cells.reserve(samples);
  }
  for (int i = 0; i < samples; ++i) {
    CellSolution cell = solve_cell(model, z[i], cell_grid, options);
    Tensor a0 = homogenized_tensor(model, z[i], cell);
    if (second_order) solve_second_order(model, cell, a0, options);
    tensors.push_back(std::move(a0));
    if (keep_cells) keep_cells->cells.push_back(std::move(cell));
  }
  return HomogenizedTable(std::move(z), std::move(tensors));
}

}  // namespace rosseland
