#pragma once

#include <optional>

#include "hartree/field.hpp"
#include "hartree/model.hpp"
#include "hartree/potential.hpp"
#include "hartree/transform.hpp"

namespace hartree {

/// Model parameters bundled with the grid, transform plan and kernel matrix
/// built for them. Immutable and safe to share between threads.
class RadialModel {
 public:
  RadialModel(const ModelParams& params, GridPtr grid, const KernelOptions& kernel_options = {});

  /// Builds a grid whose origin exponent matches params.rho, so that the
  /// r^{-rho} behaviour of ground states is represented exactly.
  static RadialModel build(const ModelParams& params, int n, double r_max, double stretch = 0.0,
                           const KernelOptions& kernel_options = {});

  [[nodiscard]] const ModelParams& params() const { return params_; }
  [[nodiscard]] const RadialGrid& grid() const { return *grid_; }
  [[nodiscard]] const GridPtr& grid_ptr() const { return grid_; }
  [[nodiscard]] const TransformPlan& plan() const { return plan_; }
  [[nodiscard]] const KernelMatrix& kernel() const { return kernel_; }
  /// Surface area of the unit sphere; every radial integral carries it.
  [[nodiscard]] double omega() const { return omega_; }

 private:
  ModelParams params_;
  GridPtr grid_;
  TransformPlan plan_;
  KernelMatrix kernel_;
  double omega_;
};

/// Mass, quadratic energy, total energy, quartic term and Weinstein ratio.
struct Quantities {
  double M = 0.0;
  double H = 0.0;
  double E = 0.0;
  double LV = 0.0;
  /// M H / L_V; empty when L_V = 0.
  std::optional<double> J;
};

Quantities functionals(const RadialModel& model, const ComplexRadialField& u);
/// As above, additionally checking that `params` are the model's parameters.
Quantities functionals(const RadialModel& model, const ComplexRadialField& u, const ModelParams& params);

/// M(u) = (1/2) int |u|^2.
double mass(const RadialModel& model, const ComplexRadialField& u);
/// H(u) = (1/2) int |grad u|^2 + a |u|^2/|x|^2, from the spectral quadratic form.
double hamiltonian(const RadialModel& model, const ComplexRadialField& u);
/// int |grad u|^2.
double gradient_norm_sq(const RadialModel& model, const ComplexRadialField& u);
/// int |u|^2 / |x|^2.
double inverse_square_norm(const RadialModel& model, const ComplexRadialField& u);
/// (1/2) int_{|x| <= lambda} |u|^2, integrating the interpolated density
/// exactly up to lambda (equals M(u) for lambda >= r_max).
double partial_mass(const RadialModel& model, const ComplexRadialField& u, double lambda);
/// (int |u|^p)^{1/p} with the grid quadrature.
double lp_norm(const RadialModel& model, const ComplexRadialField& u, double p);

/// Ratio int |u|^2/|x|^2 over int |grad u|^2; bounded by (2/(d-2))^2.
double hardy_ratio(const RadialModel& model, const ComplexRadialField& u);

/// The rescaled field would leave the grid with more than the allowed mass.
class GridEscapeError : public Error {
 public:
  using Error::Error;
};

/// Returns mu * u(nu_s r) sampled through the spectral interpolant of u.
/// Throws GridEscapeError when the fraction of mass of u beyond nu_s r_max
/// (which the rescaled field would push outside the grid) exceeds tail_tolerance.
ComplexRadialField rescale(const RadialModel& model, const ComplexRadialField& u, double mu, double nu_s,
                           double tail_tolerance = 1e-10);

/// Radially non-increasing rearrangement of |u|.
///
/// The samples are treated as a step function on cells whose volumes are the
/// quadrature volumes. Sorting the cells by value gives the decreasing
/// rearrangement of that step function; each output cell receives the
/// root-mean-square of it over the cell's volume interval, which preserves
/// the discrete mass exactly and yields a non-increasing profile.
ComplexRadialField rearrange_decreasing(const ComplexRadialField& u);

/// The cell-level operation behind rearrange_decreasing: cells of the given
/// volumes hold the given magnitudes; returns the root-mean-square of the
/// decreasing rearrangement over each cell, in cell order.
RealVector rearrange_cells(const RealVector& magnitude, const RealVector& volumes);

}  // namespace hartree
