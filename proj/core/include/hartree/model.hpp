#pragma once

namespace hartree {

/// Physical configuration: spatial dimension d and inverse-square coupling a.
///
/// rho and nu are the exponents of the two power laws r^{-rho} and r^{nu}
/// that solve L_a f = 0 near the origin, with rho + nu = (d-2)/2.
struct ModelParams {
  int d = 3;
  double a = 0.0;
  double rho = 0.0;
  double nu = 0.5;

  /// Hardy threshold ((d-2)/2)^2; the operator is positive for a > -threshold.
  [[nodiscard]] double hardy_threshold() const;
  /// True in the focusing regime studied here: -threshold < a <= 0.
  [[nodiscard]] bool attractive() const { return a <= 0.0; }
};

/// Validates (d, a) and computes rho and nu. Throws std::invalid_argument for
/// d < 3 or a <= -((d-2)/2)^2.
ModelParams make_params(int d, double a);

/// Surface area of the unit sphere in R^d, 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

}  // namespace hartree
