#pragma once

#include "hartree/field.hpp"
#include "hartree/model.hpp"

namespace hartree {

/// Spectral realization of L_a = -Delta + a/|x|^2 on radial Dirichlet fields.
///
/// With u = r^{-rho_g} v, the quadratic form of L_a becomes
///   int |v'|^2 r^{D-1} dr + (a - a_g) int |v|^2 r^{D-3} dr,
/// a_g = rho_g (rho_g - (d-2)). It is assembled on the polynomial space of
/// the grid, mass-lumped with the grid weights, and diagonalized once:
///   M^{-1/2} K M^{-1/2} = V diag(k^2) V^T.
/// The forward transform is c = V^T M^{1/2} v, the inverse v = M^{-1/2} V c,
/// so the pair is an exact inverse and sum |c_m|^2 = int |u|^2 r^{d-1} dr
/// (this equals int |w|^2 dr with w = r^{(d-1)/2} u).
class TransformPlan {
 public:
  TransformPlan(GridPtr grid, const ModelParams& params);

  [[nodiscard]] const RadialGrid& grid() const { return *grid_; }
  [[nodiscard]] const GridPtr& grid_ptr() const { return grid_; }
  [[nodiscard]] const ModelParams& params() const { return params_; }
  [[nodiscard]] int modes() const { return static_cast<int>(k2_.size()); }
  /// k_m^2, ascending.
  [[nodiscard]] const RealVector& eigenvalues() const { return k2_; }

  [[nodiscard]] ComplexVector forward(const ComplexRadialField& u) const;
  [[nodiscard]] ComplexRadialField inverse(const ComplexVector& coefficients) const;
  /// inverse(multiplier .* forward(u)).
  [[nodiscard]] ComplexRadialField apply_multiplier(const ComplexRadialField& u,
                                                    const ComplexVector& multiplier) const;
  [[nodiscard]] ComplexRadialField apply_La(const ComplexRadialField& u) const;
  /// Field of the m-th eigenmode (unit coefficient vector e_m).
  [[nodiscard]] ComplexRadialField mode(int m) const;

  /// d/dr u, from the exact derivative of the polynomial representation.
  [[nodiscard]] ComplexRadialField radial_derivative(const ComplexRadialField& u) const;

  /// sum_m k_m^2 |c_m|^2 = int (|u'|^2 + a |u|^2 / r^2) r^{d-1} dr.
  [[nodiscard]] double quadratic_form(const ComplexRadialField& u) const;
  /// int |u|^2 r^{d-3} dr, exact on the polynomial space.
  [[nodiscard]] double inverse_square_integral(const ComplexRadialField& u) const;
  /// int Re(conj(u) f) r^{d-1} dr with the grid quadrature.
  [[nodiscard]] double inner_product(const ComplexRadialField& u, const ComplexRadialField& f) const;

  /// Throws MismatchError unless the plan was built for (grid of u, params).
  void require_compatible(const ComplexRadialField& u) const;
  void require_compatible(const ModelParams& params) const;

 private:
  [[nodiscard]] ComplexVector to_reduced_interior(const ComplexRadialField& u) const;

  GridPtr grid_;
  ModelParams params_;
  RealMatrix basis_;        // V, columns are orthonormal eigenvectors
  RealVector k2_;           // eigenvalues
  RealVector sqrt_mass_;    // sqrt(W_j), interior nodes
  RealMatrix derivative_;   // d/dr on reduced samples: all nodes x interior nodes
  RealMatrix inverse_sq_;   // Gram matrix of r^{D-3} dr on interior reduced samples
};

/// apply_La with an explicit parameter check.
ComplexRadialField apply_La(const TransformPlan& plan, const ComplexRadialField& u, const ModelParams& params);

}  // namespace hartree
