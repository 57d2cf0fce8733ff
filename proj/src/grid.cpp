#include "rosseland/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace rosseland {

Grid Grid::domain(int dim, int cells_per_axis) {
  Grid g;
  g.dim = dim;
  g.cells = {cells_per_axis, dim == 2 ? cells_per_axis : 1};
  g.periodic = {false, false};
  g.validate();
  return g;
}

Grid Grid::unit_cell(int dim, int cells_per_axis) {
  Grid g = domain(dim, cells_per_axis);
  g.periodic = {true, dim == 2};
  return g;
}

void Grid::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid: dim must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (cells[a] < 1) throw std::invalid_argument("grid: cells_per_axis must be positive");
    if (!(length[a] > 0)) throw std::invalid_argument("grid: axis length must be positive");
  }
}

int Grid::node_count() const {
  int n = nodes_along(0);
  if (dim == 2) n *= nodes_along(1);
  return n;
}

int Grid::element_count() const {
  int n = cells[0];
  if (dim == 2) n *= cells[1];
  return n;
}

Real Grid::element_volume() const {
  Real v = spacing(0);
  if (dim == 2) v *= spacing(1);
  return v;
}

Real Grid::volume() const {
  Real v = length[0];
  if (dim == 2) v *= length[1];
  return v;
}

bool Grid::fully_periodic() const {
  if (!periodic[0]) return false;
  return dim == 1 || periodic[1];
}

int Grid::node_index(int ix, int iy) const {
  const int nx = nodes_along(0);
  if (periodic[0]) ix %= cells[0];
  if (dim == 1) return ix;
  if (periodic[1]) iy %= cells[1];
  return iy * nx + ix;
}

Vec Grid::node_position(int node) const {
  const int nx = nodes_along(0);
  Vec p(dim);
  const int ix = node % nx;
  p[0] = origin[0] + ix * spacing(0);
  if (dim == 2) p[1] = origin[1] + (node / nx) * spacing(1);
  return p;
}

int Grid::element_index(int ex, int ey) const { return ey * cells[0] + ex; }

std::array<int, 4> Grid::element_nodes(int element) const {
  const int ex = element % cells[0];
  if (dim == 1) return {node_index(ex), node_index(ex + 1), -1, -1};
  const int ey = element / cells[0];
  return {node_index(ex, ey), node_index(ex + 1, ey), node_index(ex + 1, ey + 1),
          node_index(ex, ey + 1)};
}

Vec Grid::element_center(int element) const {
  const int ex = element % cells[0];
  Vec c(dim);
  c[0] = origin[0] + (ex + 0.5) * spacing(0);
  if (dim == 2) c[1] = origin[1] + (element / cells[0] + 0.5) * spacing(1);
  return c;
}

bool Grid::is_boundary_node(int node) const {
  const int nx = nodes_along(0);
  const int ix = node % nx;
  if (!periodic[0] && (ix == 0 || ix == cells[0])) return true;
  if (dim == 2 && !periodic[1]) {
    const int iy = node / nx;
    if (iy == 0 || iy == cells[1]) return true;
  }
  return false;
}

std::vector<int> Grid::boundary_nodes() const {
  std::vector<int> nodes;
  for (int i = 0; i < node_count(); ++i)
    if (is_boundary_node(i)) nodes.push_back(i);
  return nodes;
}

ScalarField::ScalarField(const Grid& g, VectorX v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.node_count())
    throw std::invalid_argument("field: value count does not match grid node count");
}

ScalarField sample_nodes(const Grid& grid, const std::function<Real(const Vec&)>& f) {
  ScalarField out(grid);
  for (int i = 0; i < grid.node_count(); ++i) out.values[i] = f(grid.node_position(i));
  return out;
}

namespace {

// Nodal quadrature weight: on periodic axes all nodes weigh one cell; on
// bounded axes endpoints weigh half (trapezoid).
Real node_weight(const Grid& g, int node) {
  const int nx = g.nodes_along(0);
  const int ix = node % nx;
  Real w = g.spacing(0);
  if (!g.periodic[0] && (ix == 0 || ix == g.cells[0])) w *= 0.5;
  if (g.dim == 2) {
    const int iy = node / nx;
    Real wy = g.spacing(1);
    if (!g.periodic[1] && (iy == 0 || iy == g.cells[1])) wy *= 0.5;
    w *= wy;
  }
  return w;
}

}  // namespace

Real mean_value(const ScalarField& f) {
  Real sum = 0.0;
  for (int i = 0; i < f.size(); ++i) sum += node_weight(f.grid, i) * f.values[i];
  return sum / f.grid.volume();
}

Real l2_norm(const ScalarField& f) {
  Real sum = 0.0;
  for (int i = 0; i < f.size(); ++i) sum += node_weight(f.grid, i) * f.values[i] * f.values[i];
  return std::sqrt(sum);
}

Real l2_norm_midpoint(const ScalarField& f) {
  Real sum = 0.0;
  const Real vol = f.grid.element_volume();
  for (int e = 0; e < f.grid.element_count(); ++e) {
    const Real v = value_at_center(f, e);
    sum += vol * v * v;
  }
  return std::sqrt(sum);
}

Real sup_norm(const ScalarField& f) { return f.values.cwiseAbs().maxCoeff(); }

Real value_at_center(const ScalarField& f, int element) {
  const auto n = f.grid.element_nodes(element);
  if (f.grid.dim == 1) return 0.5 * (f.values[n[0]] + f.values[n[1]]);
  return 0.25 * (f.values[n[0]] + f.values[n[1]] + f.values[n[2]] + f.values[n[3]]);
}

Vec gradient_at_center(const ScalarField& f, int element) {
  const auto n = f.grid.element_nodes(element);
  Vec g(f.grid.dim);
  if (f.grid.dim == 1) {
    g[0] = (f.values[n[1]] - f.values[n[0]]) / f.grid.spacing(0);
    return g;
  }
  const Real hx = f.grid.spacing(0), hy = f.grid.spacing(1);
  g[0] = (f.values[n[1]] + f.values[n[2]] - f.values[n[0]] - f.values[n[3]]) / (2 * hx);
  g[1] = (f.values[n[3]] + f.values[n[2]] - f.values[n[0]] - f.values[n[1]]) / (2 * hy);
  return g;
}

namespace {

// d/dx along one axis at a logical index, given an accessor for neighbors.
Real axis_derivative(const std::function<Real(int)>& at, int i, int n_nodes, bool periodic, Real h) {
  if (periodic) {
    const int prev = (i - 1 + n_nodes) % n_nodes;
    const int next = (i + 1) % n_nodes;
    return (at(next) - at(prev)) / (2 * h);
  }
  if (i == 0) return (-3 * at(0) + 4 * at(1) - at(2)) / (2 * h);
  if (i == n_nodes - 1) return (3 * at(i) - 4 * at(i - 1) + at(i - 2)) / (2 * h);
  return (at(i + 1) - at(i - 1)) / (2 * h);
}

}  // namespace

std::vector<ScalarField> gradient(const ScalarField& f) {
  const Grid& g = f.grid;
  std::vector<ScalarField> out;
  const int nx = g.nodes_along(0);
  {
    ScalarField dx(g);
    for (int node = 0; node < g.node_count(); ++node) {
      const int iy = node / nx, ix = node % nx;
      auto at = [&](int i) { return f.values[iy * nx + i]; };
      dx.values[node] = axis_derivative(at, ix, nx, g.periodic[0], g.spacing(0));
    }
    out.push_back(std::move(dx));
  }
  if (g.dim == 2) {
    const int ny = g.nodes_along(1);
    ScalarField dy(g);
    for (int node = 0; node < g.node_count(); ++node) {
      const int iy = node / nx, ix = node % nx;
      auto at = [&](int j) { return f.values[j * nx + ix]; };
      dy.values[node] = axis_derivative(at, iy, ny, g.periodic[1], g.spacing(1));
    }
    out.push_back(std::move(dy));
  }
  return out;
}

namespace {

// Locate x in axis coordinates of grid g: element index and local coordinate
// in [0,1]. Clamped to the box; periodic axes wrap.
void locate(const Grid& g, int axis, Real x, int& cell, Real& local) {
  const Real h = g.spacing(axis);
  Real t = (x - g.origin[axis]) / h;
  if (g.periodic[axis]) {
    t -= std::floor(t / g.cells[axis]) * g.cells[axis];
  }
  cell = static_cast<int>(std::floor(t));
  if (cell < 0) cell = 0;
  if (cell > g.cells[axis] - 1) cell = g.cells[axis] - 1;
  local = t - cell;
  if (local < 0) local = 0;
  if (local > 1) local = 1;
}

}  // namespace

Real interpolate_at(const ScalarField& f, const Vec& x) {
  const Grid& g = f.grid;
  int ex, ey = 0;
  Real tx, ty = 0;
  locate(g, 0, x[0], ex, tx);
  if (g.dim == 2) locate(g, 1, x[1], ey, ty);
  const auto n = g.element_nodes(g.element_index(ex, ey));
  if (g.dim == 1) return (1 - tx) * f.values[n[0]] + tx * f.values[n[1]];
  return (1 - tx) * (1 - ty) * f.values[n[0]] + tx * (1 - ty) * f.values[n[1]] +
         tx * ty * f.values[n[2]] + (1 - tx) * ty * f.values[n[3]];
}

ScalarField interpolate(const ScalarField& src, const Grid& target) {
  if (src.grid.dim != target.dim) throw std::invalid_argument("interpolate: dimension mismatch");
  if (src.grid == target) return src;
  ScalarField out(target);
  for (int node = 0; node < target.node_count(); ++node)
    out.values[node] = interpolate_at(src, target.node_position(node));
  return out;
}

}  // namespace rosseland
