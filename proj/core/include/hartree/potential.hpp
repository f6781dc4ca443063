#pragma once

#include "hartree/field.hpp"

namespace hartree {

/// Average of |x - y|^{-2} over the sphere |y| = s, evaluated at |x| = r.
///
/// With h = min(r,s)/max(r,s) the average equals 2F1(1, 2 - d/2; d/2; h^2)
/// divided by max(r,s)^2. d = 3 uses the logarithmic closed form, d = 4 gives
/// 1/max(r,s)^2, even d >= 6 a terminating polynomial. Odd d >= 5 sums the
/// series for h <= 1/2 and otherwise integrates the Gegenbauer-type angular
/// integrand int (1-t^2)^{(d-3)/2} / (1 + h^2 - 2ht) dt in closed form by
/// polynomial division. Throws std::domain_error at r = s for d = 3.
double kernel(int d, double r, double s);

/// Sharp constant C of the Hardy-Littlewood-Sobolev inequality
///   int int f(x) f(y) / |x - y|^2 dx dy <= C ||f||_{d/(d-1)}^2
/// in dimension d (the case lambda = 2, p = q = d/(d-1)).
double sharp_hls_constant(int d);

struct KernelOptions {
  /// Gauss-Legendre points per panel between consecutive nodes.
  int panel_points = 10;
  /// Number of geometric refinement levels toward the logarithmic diagonal (d = 3).
  int grading_levels = 30;
  double grading_ratio = 0.3;
  /// Panels processed per matrix-product block.
  int block_panels = 48;
};

/// Discrete convolution |x|^{-2} * (.) on radial densities.
///
/// The reduced density q = |v|^2 = r^{2 rho_g}|u|^2 is interpolated as a
/// polynomial in sigma through all nodes and integrated against the kernel
/// panel by panel, with geometric grading into the logarithmic diagonal of the
/// d = 3 kernel. The interior block G is then symmetrized in the grid
/// measure, so that W G is exactly symmetric: the discrete quartic form is a
/// symmetric bilinear form and the semi-discrete flow is Hamiltonian.
class KernelMatrix {
 public:
  explicit KernelMatrix(GridPtr grid, const KernelOptions& options = {});

  [[nodiscard]] const RadialGrid& grid() const { return *grid_; }
  [[nodiscard]] const GridPtr& grid_ptr() const { return grid_; }
  /// Interior block G: Phi_i = sum_k G_ik q_k.
  [[nodiscard]] const RealMatrix& matrix() const { return g_; }
  /// W G with W the reduced weights; symmetric with positive entries.
  [[nodiscard]] RealMatrix symmetric_form() const;
  /// Relative Frobenius asymmetry of W G before symmetrization.
  [[nodiscard]] double assembly_asymmetry() const { return asymmetry_; }

  /// Phi at the interior nodes from the interior reduced density.
  [[nodiscard]] RealVector apply(const RealVector& reduced_density) const;
  /// Phi at all nodes, including r_max.
  [[nodiscard]] RealVector potential(const ComplexRadialField& u) const;
  /// L_V = (1/4) int Phi |u|^2.
  [[nodiscard]] double quartic(const ComplexRadialField& u) const;
  /// (1/4) int Phi[|u|^2] |f|^2, for bilinear checks.
  [[nodiscard]] double cross_quartic(const ComplexRadialField& u, const ComplexRadialField& f) const;

 private:
  void require_compatible(const ComplexRadialField& u) const;

  GridPtr grid_;
  RealMatrix g_;
  RealVector boundary_row_;
  double asymmetry_ = 0.0;
};

RealVector potential(const KernelMatrix& kernel, const ComplexRadialField& u);
double lv_value(const KernelMatrix& kernel, const ComplexRadialField& u);

}  // namespace hartree
