#pragma once

#include <cstdint>
#include <random>

#include "hartree/field.hpp"

namespace hartree::profiles {

/// amplitude * r^{-envelope} * exp(-r^2 / (2 width^2)).
ComplexRadialField gaussian(GridPtr grid, double width, double amplitude = 1.0, double envelope = 0.0);

/// amplitude * r^{-envelope} * sech(r / width).
ComplexRadialField sech(GridPtr grid, double width, double amplitude = 1.0, double envelope = 0.0);

/// amplitude * r^{-envelope} * (exp(-(r - c)^2 / (2 w^2)) + exp(-(r + c)^2 / (2 w^2))).
/// The mirrored term keeps the profile smooth (even in r) at the origin.
ComplexRadialField shell(GridPtr grid, double center, double width, double amplitude = 1.0, double envelope = 0.0);

struct RandomFieldOptions {
  int min_terms = 1;
  int max_terms = 4;
  double max_center = 4.0;
  double min_width = 0.4;
  double max_width = 1.5;
  /// Draw complex amplitudes and a smooth radial phase.
  bool complex_valued = true;
  /// Multiply by r^{-envelope}.
  double envelope = 0.0;
};

/// Seeded random smooth radial field: a sum of mirrored Gaussian shells with
/// random centres, widths and amplitudes, optionally with a smooth radial phase.
ComplexRadialField random_smooth(GridPtr grid, std::mt19937_64& rng, const RandomFieldOptions& options = {});

}  // namespace hartree::profiles
