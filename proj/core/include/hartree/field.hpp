#pragma once

#include <functional>
#include <string_view>

#include "hartree/grid.hpp"
#include "hartree/types.hpp"

namespace hartree {

/// Complex samples u(r_j) of a radial function on a RadialGrid.
///
/// The last node is the Dirichlet boundary r_max. Spectral operations ignore
/// the boundary sample and every state produced by them has a zero there; the
/// boundary sample of a radial derivative carries the derivative at r_max.
class ComplexRadialField {
 public:
  explicit ComplexRadialField(GridPtr grid);
  ComplexRadialField(GridPtr grid, ComplexVector values);

  /// Samples f at the interior nodes; the boundary sample is set to zero.
  static ComplexRadialField sample(GridPtr grid, const std::function<Complex(double)>& f);

  [[nodiscard]] const RadialGrid& grid() const { return *grid_; }
  [[nodiscard]] const GridPtr& grid_ptr() const { return grid_; }
  [[nodiscard]] const ComplexVector& values() const { return values_; }
  [[nodiscard]] ComplexVector& values() { return values_; }
  [[nodiscard]] Eigen::Index size() const { return values_.size(); }

  [[nodiscard]] bool all_finite() const;
  /// Throws NonFiniteError naming `context` if any sample is NaN or infinite.
  void require_finite(std::string_view context) const;
  /// Reduced density |v_j|^2 = r_j^{2 rho_g} |u_j|^2 at all nodes.
  [[nodiscard]] RealVector reduced_density() const;
  /// Spectral interpolant at radius r.
  [[nodiscard]] Complex operator()(double r) const { return grid_->evaluate(values_, r); }

  ComplexRadialField& operator+=(const ComplexRadialField& other);
  ComplexRadialField& operator-=(const ComplexRadialField& other);
  ComplexRadialField& operator*=(Complex s);

 private:
  void require_same_grid(const ComplexRadialField& other) const;

  GridPtr grid_;
  ComplexVector values_;
};

ComplexRadialField operator+(ComplexRadialField lhs, const ComplexRadialField& rhs);
ComplexRadialField operator-(ComplexRadialField lhs, const ComplexRadialField& rhs);
ComplexRadialField operator*(Complex s, ComplexRadialField u);

/// True when both fields live on grids with the same layout.
bool same_grid(const ComplexRadialField& a, const ComplexRadialField& b);

/// Resamples u onto another grid through its spectral interpolant.
ComplexRadialField resample(const ComplexRadialField& u, GridPtr target);

}  // namespace hartree
