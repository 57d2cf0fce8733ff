#include "rosseland/corrector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

namespace rosseland {

ScalarField ExpansionField::total() const {
  ScalarField t = u0;
  if (order >= 1) t.values += first_order.values;
  if (order >= 2) t.values += second_order.values;
  return t;
}

namespace {

Vec cell_coordinate(const Vec& x, Real eps) {
  Vec y = x / eps;
  for (int a = 0; a < y.size(); ++a) y[a] -= std::floor(y[a]);
  return y;
}

// Lazily solved cell problems at quantized temperatures, for the
// solve-at-temperature sampling mode.
class QuantizedCells {
 public:
  QuantizedCells(const CoefficientModel& model, const Grid& cell_grid, Real z_lo, Real z_hi,
                 int levels, bool second_order)
      : model_(model), grid_(cell_grid), z_lo_(z_lo), z_hi_(z_hi),
        levels_(std::max(1, levels)), second_order_(second_order) {}

  const CellSolution& at(Real z) {
    int level = 0;
    if (z_hi_ > z_lo_)
      level = std::clamp(static_cast<int>(std::floor((z - z_lo_) / (z_hi_ - z_lo_) * levels_)), 0,
                         levels_ - 1);
    auto it = cache_.find(level);
    if (it == cache_.end()) {
      const Real zq = z_lo_ + (z_hi_ > z_lo_ ? (level + 0.5) / levels_ * (z_hi_ - z_lo_) : 0.0);
      CellSolution cell = solve_cell(model_, zq, grid_);
      if (second_order_) solve_second_order(model_, cell, homogenized_tensor(model_, zq, cell));
      it = cache_.emplace(level, std::move(cell)).first;
    }
    return it->second;
  }

 private:
  const CoefficientModel& model_;
  Grid grid_;
  Real z_lo_, z_hi_;
  int levels_;
  bool second_order_;
  std::map<int, CellSolution> cache_;
};

}  // namespace

ExpansionField reconstruct(const ScalarField& u0, const CellLibrary& library, Real eps, int order,
                           const Grid& fine_grid, const ReconstructOptions& options,
                           const CoefficientModel* model) {
  if (order < 0 || order > 2) throw std::invalid_argument("reconstruct: order must be 0, 1 or 2");
  if (library.empty()) throw std::invalid_argument("reconstruct: empty cell library");
  if (u0.grid.dim != fine_grid.dim) throw std::invalid_argument("reconstruct: dimension mismatch");
  const int dim = fine_grid.dim;

  const bool solve_mode = options.sampling == CorrectorSampling::SolveAtTemperature;
  if (solve_mode && !model)
    throw std::invalid_argument("reconstruct: solve-at-temperature sampling needs the model");
  if (order == 2 && !solve_mode)
    for (const auto& cell : library.cells)
      if (!cell.has_second_order())
        throw std::invalid_argument("reconstruct: order 2 requested without second-order fields");

  ExpansionField out;
  out.order = order;
  out.eps = eps;
  out.grid = fine_grid;
  out.u0 = interpolate(u0, fine_grid);
  out.first_order = ScalarField(fine_grid);
  out.second_order = ScalarField(fine_grid);
  if (order == 0) return out;

  // Derivatives of u0 live on its own grid and are interpolated across.
  const auto du = gradient(u0);
  std::vector<ScalarField> du_fine(dim);
  for (int k = 0; k < dim; ++k) du_fine[k] = interpolate(du[k], fine_grid);
  std::vector<ScalarField> d2_fine;  // row-major (k,l)
  if (order >= 2) {
    d2_fine.resize(dim * dim);
    for (int k = 0; k < dim; ++k) {
      const auto d2 = gradient(du[k]);
      for (int l = 0; l < dim; ++l) d2_fine[k * dim + l] = interpolate(d2[l], fine_grid);
    }
  }

  std::optional<QuantizedCells> solver_cache;
  if (solve_mode) {
    const Real lo = std::min(out.u0.min_value(), library.z[0]);
    const Real hi = std::max(out.u0.max_value(), library.z[library.z.size() - 1]);
    solver_cache.emplace(*model, library.cells.front().grid, lo, hi, options.solve_levels,
                         order >= 2);
  }

  for (int node = 0; node < fine_grid.node_count(); ++node) {
    const Real z = out.u0.values[node];
    const CellSolution& cell = solve_mode ? solver_cache->at(z) : library.nearest(z);
    const Vec y = cell_coordinate(fine_grid.node_position(node), eps);
    Real first = 0.0;
    for (int k = 0; k < dim; ++k)
      first += interpolate_at(cell.corrector(k), y) * du_fine[k].values[node];
    out.first_order.values[node] = eps * first;
    if (order >= 2) {
      Real second = 0.0;
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          second += interpolate_at(cell.second(k, l), y) * d2_fine[k * dim + l].values[node];
      out.second_order.values[node] = eps * eps * second;
    }
  }
  return out;
}

ExpansionField reconstruct(const ScalarField& u0, const CellSolution& cell, Real eps, int order,
                           const Grid& fine_grid) {
  CellLibrary one;
  one.z = VectorX::Constant(1, cell.temperature);
  one.cells.push_back(cell);
  return reconstruct(u0, one, eps, order, fine_grid);
}

namespace {

bool element_in_interior(const Grid& grid, int element, Real fraction) {
  const Vec c = grid.element_center(element);
  for (int a = 0; a < grid.dim; ++a) {
    const Real lo = grid.origin[a] + 0.5 * (1 - fraction) * grid.length[a];
    const Real hi = grid.origin[a] + 0.5 * (1 + fraction) * grid.length[a];
    if (c[a] < lo || c[a] > hi) return false;
  }
  return true;
}

}  // namespace

NormSet error_norms(const ScalarField& u_ref, const ExpansionField& approx, Real interior_fraction) {
  if (u_ref.grid != approx.grid)
    throw std::invalid_argument("error_norms: reference and approximation grids differ");
  if (!(interior_fraction > 0 && interior_fraction <= 1))
    throw std::invalid_argument("error_norms: interior fraction must be in (0,1]");

  ScalarField diff = approx.total();
  diff.values = u_ref.values - diff.values;

  NormSet norms;
  norms.sup = sup_norm(diff);
  norms.l2 = l2_norm_midpoint(diff);

  const Grid& grid = u_ref.grid;
  const Real vol = grid.element_volume();
  Real h1_sq = 0.0;
  for (int e = 0; e < grid.element_count(); ++e) {
    if (!element_in_interior(grid, e, interior_fraction)) continue;
    const Real g = gradient_at_center(diff, e).norm();
    h1_sq += vol * g * g;
    norms.grad_interior = std::max(norms.grad_interior, g);
  }
  norms.h1_interior = std::sqrt(h1_sq);
  return norms;
}

Real dirichlet_energy(const ScalarField& u, std::span<const Tensor> coeff_at_element) {
  const Grid& grid = u.grid;
  if (static_cast<int>(coeff_at_element.size()) != grid.element_count())
    throw std::invalid_argument("energy: coefficient count does not match element count");
  Real sum = 0.0;
  for (int e = 0; e < grid.element_count(); ++e) {
    const Vec g = gradient_at_center(u, e);
    sum += grid.element_volume() * g.dot(coeff_at_element[e] * g);
  }
  return sum;
}

RateFit fit_rate(std::span<const Real> eps, std::span<const Real> err) {
  if (eps.size() != err.size() || eps.size() < 3)
    throw std::invalid_argument("fit_rate: need at least 3 (eps, error) pairs");
  // Least squares on log-log; zero errors are clamped to the smallest
  // representable scale so exact matches do not poison the fit.
  const int n = static_cast<int>(eps.size());
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<Real> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    lx[i] = std::log(eps[i]);
    ly[i] = std::log(std::max(err[i], Real(1e-300)));
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const Real denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_rate: eps values must be distinct");
  RateFit fit;
  fit.rate = (n * sxy - sx * sy) / denom;
  const Real intercept = (sy - fit.rate * sx) / n;
  Real rss = 0;
  for (int i = 0; i < n; ++i) {
    const Real r = ly[i] - (intercept + fit.rate * lx[i]);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);

  // Monotone means the error does not grow as eps shrinks.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return eps[a] > eps[b]; });
  for (int i = 1; i < n; ++i)
    if (err[order[i]] > err[order[i - 1]]) fit.monotone = false;
  return fit;
}

RateSummary fit_rates(std::span<const ErrorRow> rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<Real> eps(n), sup(n), l2(n), h1(n), en(n), gr(n);
  for (int i = 0; i < n; ++i) {
    eps[i] = rows[i].eps;
    sup[i] = rows[i].sup_err;
    l2[i] = rows[i].l2_err;
    h1[i] = rows[i].h1_interior_err;
    en[i] = rows[i].energy_diff;
    gr[i] = rows[i].grad_interior_err;
  }
  RateSummary s;
  s.sup = fit_rate(eps, sup);
  s.l2 = fit_rate(eps, l2);
  s.h1_interior = fit_rate(eps, h1);
  s.energy = fit_rate(eps, en);
  s.grad_interior = fit_rate(eps, gr);
  return s;
}

}  // namespace rosseland
