#include "rosseland/assembly.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosseland/material.hpp"

namespace rosseland {

Eigen::Matrix<Real, 2, 4> shape_gradient_integrals(const Grid& grid) {
  Eigen::Matrix<Real, 2, 4> g = Eigen::Matrix<Real, 2, 4>::Zero();
  if (grid.dim == 1) {
    g(0, 0) = -1.0;
    g(0, 1) = 1.0;
    return g;
  }
  const Real hx = grid.spacing(0), hy = grid.spacing(1);
  g.row(0) << -hy / 2, hy / 2, hy / 2, -hy / 2;
  g.row(1) << -hx / 2, -hx / 2, hx / 2, hx / 2;
  return g;
}

Eigen::Matrix<Real, 4, 4> element_stiffness(const Tensor& coeff, const Grid& grid) {
  Eigen::Matrix<Real, 4, 4> k = Eigen::Matrix<Real, 4, 4>::Zero();
  if (grid.dim == 1) {
    const Real a = coeff(0, 0) / grid.spacing(0);
    k(0, 0) = a;
    k(1, 1) = a;
    k(0, 1) = -a;
    k(1, 0) = -a;
    return k;
  }
  // 2x2 Gauss integrates the bilinear gradient products exactly; the
  // coefficient itself is the one-point (midpoint) sample passed in.
  const Real hx = grid.spacing(0), hy = grid.spacing(1);
  static const Real gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
  for (Real xi : gp) {
    for (Real eta : gp) {
      Eigen::Matrix<Real, 2, 4> grad;  // physical gradients of the 4 shapes
      grad.row(0) << -(1 - eta) / hx, (1 - eta) / hx, eta / hx, -eta / hx;
      grad.row(1) << -(1 - xi) / hy, -xi / hy, xi / hy, (1 - xi) / hy;
      const Real w = 0.25 * hx * hy;  // Gauss weight times element volume
      k += w * grad.transpose() * coeff * grad;
    }
  }
  return k;
}

namespace {

void check_element_tensor(const Tensor& t, int dim, int element) {
  if (t.rows() != dim || t.cols() != dim)
    throw std::invalid_argument("assemble: element " + std::to_string(element) +
                                ": tensor dimension mismatch");
  if (!is_spd(t))
    throw std::invalid_argument("assemble: element " + std::to_string(element) +
                                ": coefficient tensor not SPD");
}

}  // namespace

SparseSystem assemble_diffusion(const Grid& grid, std::span<const Tensor> coeff_at_element,
                                const RobinData* robin) {
  grid.validate();
  if (static_cast<int>(coeff_at_element.size()) != grid.element_count())
    throw std::invalid_argument("assemble: coefficient count does not match element count");

  const int n = grid.node_count();
  const int local = grid.nodes_per_element();
  std::vector<Eigen::Triplet<Real>> triplets;
  triplets.reserve(static_cast<std::size_t>(grid.element_count()) * local * local + n);

  for (int e = 0; e < grid.element_count(); ++e) {
    const Tensor& a = coeff_at_element[e];
    check_element_tensor(a, grid.dim, e);
    const auto ke = element_stiffness(a, grid);
    const auto nodes = grid.element_nodes(e);
    for (int i = 0; i < local; ++i)
      for (int j = 0; j < local; ++j)
        triplets.emplace_back(nodes[i], nodes[j], ke(i, j));
  }

  SparseSystem sys;
  sys.rhs = VectorX::Zero(n);

  if (robin) {
    if (grid.fully_periodic()) throw std::invalid_argument("assemble: Robin data on a periodic grid");
    if (robin->alpha.grid != grid || robin->u_gas.grid != grid)
      throw std::invalid_argument("assemble: Robin fields on a different grid");
    if (robin->alpha.min_value() < 0)
      throw std::invalid_argument("assemble: Robin alpha must be nonnegative");
    if (grid.dim == 1) {
      for (int node : {grid.node_index(0), grid.node_index(grid.cells[0])}) {
        const Real a = robin->alpha.values[node];
        triplets.emplace_back(node, node, a);
        sys.rhs[node] += a * robin->u_gas.values[node];
      }
    } else {
      // Boundary edges, midpoint-sampled alpha, row-sum lumped edge mass.
      auto edge = [&](int n0, int n1, Real len) {
        const Real a = 0.5 * (robin->alpha.values[n0] + robin->alpha.values[n1]);
        const Real ug = 0.5 * (robin->u_gas.values[n0] + robin->u_gas.values[n1]);
        for (int nd : {n0, n1}) {
          triplets.emplace_back(nd, nd, a * len / 2);
          sys.rhs[nd] += a * ug * len / 2;
        }
      };
      for (int ex = 0; ex < grid.cells[0]; ++ex) {
        edge(grid.node_index(ex, 0), grid.node_index(ex + 1, 0), grid.spacing(0));
        edge(grid.node_index(ex, grid.cells[1]), grid.node_index(ex + 1, grid.cells[1]),
             grid.spacing(0));
      }
      for (int ey = 0; ey < grid.cells[1]; ++ey) {
        edge(grid.node_index(0, ey), grid.node_index(0, ey + 1), grid.spacing(1));
        edge(grid.node_index(grid.cells[0], ey), grid.node_index(grid.cells[0], ey + 1),
             grid.spacing(1));
      }
    }
  }

  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

void add_element_load(SparseSystem& system, const Grid& grid, std::span<const Real> f_at_element) {
  if (static_cast<int>(f_at_element.size()) != grid.element_count())
    throw std::invalid_argument("load: value count does not match element count");
  const int local = grid.nodes_per_element();
  const Real w = grid.element_volume() / local;  // integral of each shape function
  for (int e = 0; e < grid.element_count(); ++e) {
    const auto nodes = grid.element_nodes(e);
    for (int i = 0; i < local; ++i) system.rhs[nodes[i]] += w * f_at_element[e];
  }
}

void apply_dirichlet(SparseSystem& system, std::span<const std::pair<int, Real>> node_values) {
  const int n = system.size();
  std::vector<char> constrained(n, 0);
  VectorX value = VectorX::Zero(n);
  for (const auto& [node, v] : node_values) {
    constrained[node] = 1;
    value[node] = v;
  }
  for (int row = 0; row < n; ++row) {
    for (Eigen::SparseMatrix<Real, Eigen::RowMajor>::InnerIterator it(system.matrix, row); it;
         ++it) {
      const int col = static_cast<int>(it.col());
      if (constrained[row]) {
        it.valueRef() = (col == row) ? 1.0 : 0.0;
      } else if (constrained[col]) {
        system.rhs[row] -= it.value() * value[col];
        it.valueRef() = 0.0;
      }
    }
  }
  for (const auto& [node, v] : node_values) system.rhs[node] = v;
}

VectorX lumped_mass(const Grid& grid) {
  VectorX m = VectorX::Zero(grid.node_count());
  const int local = grid.nodes_per_element();
  const Real w = grid.element_volume() / local;
  for (int e = 0; e < grid.element_count(); ++e) {
    const auto nodes = grid.element_nodes(e);
    for (int i = 0; i < local; ++i) m[nodes[i]] += w;
  }
  return m;
}

}  // namespace rosseland
