#pragma once

#include "rosseland/macro.hpp"

namespace rosseland {

/// A frozen benchmark problem: coefficient model, bounds and default boundary
/// data. Presets are part of the CLI contract; changing one is a breaking
/// change.
struct Preset {
  std::string name;
  int dim = 1;
  CoefficientModel model;
  TemperatureBounds bounds;
  std::function<Real(const Vec&)> dirichlet;  // default Dirichlet data
  std::function<Real(const Vec&)> initial;    // parabolic initial data (may be null)
  Real default_b_scale = 0.0;
};

std::vector<std::string> preset_names();

/// Look up a preset. `b_scale` overrides the radiative magnitude (NaN keeps
/// the preset default; layered1d and checkerboard2d default to pure
/// conduction, with 0.25 as the documented nonlinear variant). Unknown names
/// throw std::invalid_argument listing the alternatives.
Preset make_preset(const std::string& name,
                   Real b_scale = std::numeric_limits<Real>::quiet_NaN());

}  // namespace rosseland
