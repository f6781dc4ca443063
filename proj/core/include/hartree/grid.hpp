#pragma once

#include <memory>
#include <span>

#include "hartree/types.hpp"

namespace hartree {

/// Construction options for a radial grid.
struct GridOptions {
  /// Parameter beta of the map r = r_max * sinh(beta xi) / sinh(beta).
  /// Zero gives r = r_max * xi. Larger values refine the grid toward r = 0.
  double stretch = 0.0;
  /// Exponent rho_g of the origin factor. Samples u_j are interpreted as
  /// u = r^{-rho_g} v with v a polynomial in sigma = xi^2, so profiles that
  /// behave like r^{-rho_g} at the origin are represented exactly.
  double origin_exponent = 0.0;
};

/// Radial quadrature grid on (0, r_max].
///
/// The nodes are Gauss-Radau-Jacobi points in sigma = xi^2 for the weight
/// sigma^{nu_g}, nu_g = (d-2)/2 - rho_g, with the last node fixed at
/// r = r_max where the Dirichlet condition holds. The quadrature
/// sum_j w_j f(r_j) r_j^{d-1} integrates f r^{d-1} exactly whenever
/// f = r^{-2 rho_g} p(r^2) with p a polynomial of degree at most 2n-2 and
/// stretch = 0.
class RadialGrid {
 public:
  static std::shared_ptr<const RadialGrid> build(int d, int n, double r_max,
                                                 const GridOptions& options = {});

  [[nodiscard]] int dimension() const { return d_; }
  /// Number of nodes, including the boundary node r_max.
  [[nodiscard]] int size() const { return static_cast<int>(r_.size()); }
  /// Number of nodes strictly inside (0, r_max); the unknowns of a Dirichlet field.
  [[nodiscard]] int interior_size() const { return size() - 1; }
  [[nodiscard]] double r_max() const { return r_max_; }
  [[nodiscard]] double stretch() const { return stretch_; }
  [[nodiscard]] double origin_exponent() const { return rho_g_; }
  /// D = d - 2 rho_g, the dimension seen by the reduced profile v.
  [[nodiscard]] double reduced_dimension() const { return d_ - 2.0 * rho_g_; }
  /// nu_g = D/2 - 1.
  [[nodiscard]] double order() const { return 0.5 * reduced_dimension() - 1.0; }

  [[nodiscard]] const RealVector& nodes() const { return r_; }
  /// w_j: sum_j w_j f(r_j) r_j^{d-1} approximates int_0^{r_max} f(r) r^{d-1} dr.
  [[nodiscard]] const RealVector& weights() const { return w_; }
  /// w_j r_j^{d-1}: the cell volumes of the radial measure (without the sphere area).
  [[nodiscard]] const RealVector& volume_weights() const { return vol_; }
  /// W_j: sum_j W_j g(r_j) approximates int g(r) r^{D-1} dr for smooth g.
  [[nodiscard]] const RealVector& reduced_weights() const { return wred_; }
  /// r_j^{rho_g}, mapping samples u_j to reduced samples v_j.
  [[nodiscard]] const RealVector& origin_factor() const { return rpow_; }
  [[nodiscard]] const RealVector& sigma() const { return sigma_; }

  [[nodiscard]] double sigma_of(double r) const;
  [[nodiscard]] double radius_of(double sigma) const;
  /// d sigma / d r at radius r.
  [[nodiscard]] double dsigma_dr(double r) const;
  /// Density of r^{D-1-2k} dr relative to (r_max^{D-2k} / 2) sigma^{nu_g-k} d sigma.
  [[nodiscard]] double measure_density(double sigma, int k) const;

  /// Barycentric interpolation of reduced samples v_j (all nodes) at the given
  /// sigma values. Row i holds the weights for sigmas[i]; rows for sigma > 1
  /// are zero.
  [[nodiscard]] RealMatrix interpolation_matrix_sigma(std::span<const double> sigmas) const;
  /// Same as interpolation_matrix_sigma, addressed by radius.
  [[nodiscard]] RealMatrix interpolation_matrix(std::span<const double> radii) const;
  /// Writes one interpolation row for sigma into `row` (length size()).
  void interpolation_row(double sigma, std::span<double> row) const;
  /// Differentiation matrix d/d sigma acting on reduced samples (all nodes).
  [[nodiscard]] RealMatrix sigma_differentiation_matrix() const;

  /// Spectral interpolant of the samples u_j at radius r (zero beyond r_max).
  [[nodiscard]] Complex evaluate(const ComplexVector& samples, double r) const;

  /// Width of the grid cell that contains r.
  [[nodiscard]] double cell_size(double r) const;

  /// Same dimension, size, extent, stretch and origin exponent.
  [[nodiscard]] bool same_layout(const RadialGrid& other) const;

 private:
  RadialGrid() = default;
  double map(double xi) const;
  double map_derivative(double xi) const;

  int d_ = 0;
  double r_max_ = 0.0;
  double stretch_ = 0.0;
  double rho_g_ = 0.0;
  RealVector r_, w_, vol_, wred_, rpow_, sigma_;
  RealVector bary_;  // barycentric weights in sigma, scaled to max |b| = 1
};

using GridPtr = std::shared_ptr<const RadialGrid>;

}  // namespace hartree
