#include "hartree/transform.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hartree/quadrature.hpp"

namespace hartree {
namespace {

using RowMajor2 = Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>;

// Views a complex vector as an (n x 2) real matrix of (re, im) rows.
Eigen::Map<const RowMajor2> as_real(const ComplexVector& v) {
  return {reinterpret_cast<const double*>(v.data()), v.size(), 2};
}
Eigen::Map<RowMajor2> as_real(ComplexVector& v) { return {reinterpret_cast<double*>(v.data()), v.size(), 2}; }

}  // namespace

TransformPlan::TransformPlan(GridPtr grid, const ModelParams& params) : grid_(std::move(grid)), params_(params) {
  if (!grid_) throw std::invalid_argument("transform plan requires a grid");
  if (grid_->dimension() != params.d) throw MismatchError("grid dimension differs from model dimension");
  const RadialGrid& g = *grid_;
  const int n = g.size();
  const int m = g.interior_size();
  const double rho_g = g.origin_exponent();
  const double nu_g = g.order();
  const double big_d = g.reduced_dimension();
  const double a_g = rho_g * (rho_g - (g.dimension() - 2));

  // d/dr of the reduced profile, Dirichlet column dropped
  RealMatrix dsig = g.sigma_differentiation_matrix();
  for (int j = 0; j < n; ++j) dsig.row(j) *= g.dsigma_dr(g.nodes()(j));
  derivative_ = dsig.leftCols(m);

  // stiffness of int |v'|^2 r^{D-1} dr with the full Radau quadrature
  const RealVector& wred = g.reduced_weights();
  RealMatrix stiffness = derivative_.transpose() * wred.asDiagonal() * derivative_;

  // Gram matrix of r^{D-3} dr: Gauss-Jacobi in t for the weight (1+t)^{nu_g-1}
  {
    const int q = n + 4;
    const quad::Rule rule = quad::gauss_jacobi(q, 0.0, nu_g - 1.0);
    std::vector<double> sig(static_cast<std::size_t>(q));
    RealVector z(q);
    const double scale = std::pow(g.r_max(), big_d - 2.0) * std::pow(2.0, -nu_g - 1.0);
    for (int i = 0; i < q; ++i) {
      sig[i] = 0.5 * (1.0 + rule.nodes[i]);
      z(i) = scale * rule.weights[i] * g.measure_density(sig[i], 1);
    }
    const RealMatrix interp = g.interpolation_matrix_sigma(sig).leftCols(m);
    inverse_sq_ = interp.transpose() * z.asDiagonal() * interp;
  }
  if (params.a != a_g) stiffness += (params.a - a_g) * inverse_sq_;

  sqrt_mass_ = wred.head(m).cwiseSqrt();
  const RealVector inv_sqrt = sqrt_mass_.cwiseInverse();
  RealMatrix sym = inv_sqrt.asDiagonal() * stiffness * inv_sqrt.asDiagonal();
  sym = 0.5 * (sym + sym.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("eigendecomposition of L_a failed");
  k2_ = solver.eigenvalues();
  basis_ = solver.eigenvectors();
  // one Newton-Schulz step: the solver's eigenvectors carry a systematic
  // norm excess of a few ulps, which a long unitary evolution would
  // accumulate into a visible mass drift
  {
    RealMatrix e = basis_.transpose() * basis_;
    e.diagonal().array() -= 1.0;
    basis_ -= 0.5 * basis_ * e;
  }
  // fix the sign of each mode so that it is positive near the origin
  for (int k = 0; k < m; ++k) {
    Eigen::Index idx = 0;
    basis_.col(k).cwiseAbs().maxCoeff(&idx);
    double first = 0.0;
    for (int j = 0; j < m && first == 0.0; ++j) {
      if (std::abs(basis_(j, k)) > 1e-8 * std::abs(basis_(idx, k))) first = basis_(j, k);
    }
    if (first < 0.0) basis_.col(k) *= -1.0;
  }
}

void TransformPlan::require_compatible(const ComplexRadialField& u) const {
  if (u.grid_ptr() != grid_ && !u.grid().same_layout(*grid_)) {
    throw MismatchError("field grid does not match the transform plan");
  }
}

void TransformPlan::require_compatible(const ModelParams& params) const {
  if (params.d != params_.d || params.a != params_.a) {
    throw MismatchError("transform plan was built for different model parameters");
  }
}

ComplexVector TransformPlan::to_reduced_interior(const ComplexRadialField& u) const {
  require_compatible(u);
  const int m = modes();
  return u.values().head(m).cwiseProduct(grid_->origin_factor().head(m).cast<Complex>());
}

ComplexVector TransformPlan::forward(const ComplexRadialField& u) const {
  ComplexVector v = to_reduced_interior(u);
  v.array() *= sqrt_mass_.array().cast<Complex>();
  ComplexVector c(modes());
  as_real(c).noalias() = basis_.transpose() * as_real(v);
  return c;
}

ComplexRadialField TransformPlan::inverse(const ComplexVector& coefficients) const {
  if (coefficients.size() != modes()) throw MismatchError("coefficient count does not match the plan");
  const int m = modes();
  ComplexVector v(m);
  as_real(v).noalias() = basis_ * as_real(coefficients);
  ComplexRadialField u(grid_);
  const RealVector& rp = grid_->origin_factor();
  for (int j = 0; j < m; ++j) u.values()(j) = v(j) / (sqrt_mass_(j) * rp(j));
  return u;
}

ComplexRadialField TransformPlan::apply_multiplier(const ComplexRadialField& u, const ComplexVector& multiplier) const {
  ComplexVector c = forward(u);
  c.array() *= multiplier.array();
  return inverse(c);
}

ComplexRadialField TransformPlan::apply_La(const ComplexRadialField& u) const {
  ComplexVector c = forward(u);
  c.array() *= k2_.array().cast<Complex>();
  return inverse(c);
}

ComplexRadialField TransformPlan::mode(int m) const {
  if (m < 0 || m >= modes()) throw std::out_of_range("mode index out of range");
  ComplexVector c = ComplexVector::Zero(modes());
  c(m) = 1.0;
  return inverse(c);
}

ComplexRadialField TransformPlan::radial_derivative(const ComplexRadialField& u) const {
  const ComplexVector v = to_reduced_interior(u);
  ComplexVector dv(grid_->size());
  as_real(dv).noalias() = derivative_ * as_real(v);
  const RadialGrid& g = *grid_;
  const double rho_g = g.origin_exponent();
  ComplexRadialField out(grid_);
  for (int j = 0; j < g.size(); ++j) {
    const double r = g.nodes()(j);
    const Complex vj = j < modes() ? v(j) : Complex{0.0, 0.0};
    out.values()(j) = (dv(j) - rho_g * vj / r) / g.origin_factor()(j);
  }
  return out;
}

double TransformPlan::quadratic_form(const ComplexRadialField& u) const {
  const ComplexVector c = forward(u);
  return (k2_.array() * c.cwiseAbs2().array()).sum();
}

double TransformPlan::inverse_square_integral(const ComplexRadialField& u) const {
  const ComplexVector v = to_reduced_interior(u);
  ComplexVector zv(modes());
  as_real(zv).noalias() = inverse_sq_ * as_real(v);
  return v.dot(zv).real();
}

double TransformPlan::inner_product(const ComplexRadialField& u, const ComplexRadialField& f) const {
  require_compatible(u);
  require_compatible(f);
  const RealVector& vol = grid_->volume_weights();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < vol.size(); ++j) acc += vol(j) * (std::conj(u.values()(j)) * f.values()(j)).real();
  return acc;
}

ComplexRadialField apply_La(const TransformPlan& plan, const ComplexRadialField& u, const ModelParams& params) {
  plan.require_compatible(params);
  return plan.apply_La(u);
}

}  // namespace hartree
