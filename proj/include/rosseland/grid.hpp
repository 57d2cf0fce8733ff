#pragma once

#include <array>
#include <functional>
#include <vector>

#include "rosseland/types.hpp"

namespace rosseland {

/// Structured rectilinear grid on an axis-aligned box, 1D or 2D, with uniform
/// spacing per axis. A periodic axis stores one node per cell: the node that
/// would sit on the far boundary is identified with the one at the origin, so
/// wrap consistency is structural rather than enforced by constraints.
struct Grid {
  int dim = 1;
  std::array<int, 2> cells{1, 1};
  std::array<Real, 2> origin{0.0, 0.0};
  std::array<Real, 2> length{1.0, 1.0};
  std::array<bool, 2> periodic{false, false};

  /// Non-periodic grid on (0,1)^dim.
  static Grid domain(int dim, int cells_per_axis);
  /// Fully periodic grid on the unit cell Y=(0,1)^dim.
  static Grid unit_cell(int dim, int cells_per_axis);

  void validate() const;  // throws std::invalid_argument on bad extents

  Real spacing(int axis) const { return length[axis] / cells[axis]; }
  int nodes_along(int axis) const { return periodic[axis] ? cells[axis] : cells[axis] + 1; }
  int node_count() const;
  int element_count() const;
  Real element_volume() const;
  Real volume() const;

  bool fully_periodic() const;

  // Node indexing is row-major with x fastest; periodic axes wrap.
  int node_index(int ix, int iy = 0) const;
  Vec node_position(int node) const;

  int element_index(int ex, int ey = 0) const;
  /// Corner nodes of an element, counterclockwise from the lower-left.
  /// 1D elements use the first two entries.
  std::array<int, 4> element_nodes(int element) const;
  int nodes_per_element() const { return dim == 1 ? 2 : 4; }
  Vec element_center(int element) const;

  bool is_boundary_node(int node) const;
  std::vector<int> boundary_nodes() const;

  bool operator==(const Grid&) const = default;
};

/// Nodal values on a grid. Plain value type; fields are freely copied and
/// sent between threads.
struct ScalarField {
  Grid grid;
  VectorX values;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, Real fill = 0.0)
      : grid(g), values(VectorX::Constant(g.node_count(), fill)) {}
  ScalarField(const Grid& g, VectorX v);

  int size() const { return static_cast<int>(values.size()); }
  Real min_value() const { return values.minCoeff(); }
  Real max_value() const { return values.maxCoeff(); }
};

ScalarField sample_nodes(const Grid& grid, const std::function<Real(const Vec&)>& f);

/// Integral mean over the grid (uniform nodal weights on periodic grids,
/// trapezoid weights otherwise).
Real mean_value(const ScalarField& f);

/// Lumped-mass L2 norm, used for iteration stopping rules.
Real l2_norm(const ScalarField& f);

/// L2 norm by one-point (element midpoint) quadrature.
Real l2_norm_midpoint(const ScalarField& f);

Real sup_norm(const ScalarField& f);

/// Value of the Q1 interpolant at an element center (mean of corner values).
Real value_at_center(const ScalarField& f, int element);

/// Gradient of the Q1 interpolant at an element center; equals the element
/// average of the gradient.
Vec gradient_at_center(const ScalarField& f, int element);

/// Nodal gradient, one field per axis: central differences at interior nodes,
/// second-order one-sided at non-periodic boundaries, wrapped central on
/// periodic axes.
std::vector<ScalarField> gradient(const ScalarField& f);

/// Q1 interpolation of `src` onto the nodes of `target`. Both grids must
/// cover the same box. Target nodes coinciding with source nodes reproduce
/// nodal values exactly.
ScalarField interpolate(const ScalarField& src, const Grid& target);

/// Q1 interpolant of `f` at a point (wrapped on periodic axes, clamped on
/// bounded ones).
Real interpolate_at(const ScalarField& f, const Vec& x);

}  // namespace rosseland
