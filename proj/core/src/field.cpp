#include "hartree/field.hpp"

#include <cmath>
#include <string>

namespace hartree {

ComplexRadialField::ComplexRadialField(GridPtr grid)
    : grid_(std::move(grid)), values_(ComplexVector::Zero(grid_ ? grid_->size() : 0)) {
  if (!grid_) throw std::invalid_argument("field requires a grid");
}

ComplexRadialField::ComplexRadialField(GridPtr grid, ComplexVector values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("field requires a grid");
  if (values_.size() != grid_->size()) {
    throw MismatchError("field has " + std::to_string(values_.size()) + " samples but the grid has " +
                        std::to_string(grid_->size()) + " nodes");
  }
}

ComplexRadialField ComplexRadialField::sample(GridPtr grid, const std::function<Complex(double)>& f) {
  ComplexRadialField u(std::move(grid));
  const RealVector& r = u.grid().nodes();
  for (Eigen::Index j = 0; j + 1 < r.size(); ++j) u.values_(j) = f(r(j));
  return u;
}

bool ComplexRadialField::all_finite() const {
  for (Eigen::Index j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_(j).real()) || !std::isfinite(values_(j).imag())) return false;
  }
  return true;
}

void ComplexRadialField::require_finite(std::string_view context) const {
  if (!all_finite()) {
    throw NonFiniteError(std::string(context) + ": field contains non-finite samples");
  }
}

RealVector ComplexRadialField::reduced_density() const {
  const RealVector& rp = grid_->origin_factor();
  return (values_.cwiseAbs2().array() * rp.array().square()).matrix();
}

void ComplexRadialField::require_same_grid(const ComplexRadialField& other) const {
  if (grid_ != other.grid_ && !grid_->same_layout(*other.grid_)) {
    throw MismatchError("fields live on different grids");
  }
}

ComplexRadialField& ComplexRadialField::operator+=(const ComplexRadialField& other) {
  require_same_grid(other);
  values_ += other.values_;
  return *this;
}

ComplexRadialField& ComplexRadialField::operator-=(const ComplexRadialField& other) {
  require_same_grid(other);
  values_ -= other.values_;
  return *this;
}

ComplexRadialField& ComplexRadialField::operator*=(Complex s) {
  values_ *= s;
  return *this;
}

ComplexRadialField operator+(ComplexRadialField lhs, const ComplexRadialField& rhs) { return lhs += rhs; }
ComplexRadialField operator-(ComplexRadialField lhs, const ComplexRadialField& rhs) { return lhs -= rhs; }
ComplexRadialField operator*(Complex s, ComplexRadialField u) { return u *= s; }

bool same_grid(const ComplexRadialField& a, const ComplexRadialField& b) {
  return a.grid_ptr() == b.grid_ptr() || a.grid().same_layout(b.grid());
}

ComplexRadialField resample(const ComplexRadialField& u, GridPtr target) {
  const RadialGrid& src = u.grid();
  if (src.dimension() != target->dimension()) throw MismatchError("resample across dimensions");
  const RealVector& r = target->nodes();
  std::vector<double> radii(r.data(), r.data() + r.size() - 1);
  const RealMatrix interp = src.interpolation_matrix(radii);
  const ComplexVector v = u.values().cwiseProduct(src.origin_factor().cast<Complex>());
  const ComplexVector vt = interp * v;
  ComplexRadialField out(target);
  for (Eigen::Index j = 0; j + 1 < r.size(); ++j) {
    out.values()(j) = vt(j) * std::pow(r(j), -src.origin_exponent());
  }
  return out;
}

}  // namespace hartree
