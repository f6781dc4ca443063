#include "hartree/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hartree/quadrature.hpp"

namespace hartree {
namespace {
constexpr double kIdentityStretch = 1e-8;
}

std::shared_ptr<const RadialGrid> RadialGrid::build(int d, int n, double r_max,
                                                    const GridOptions& options) {
  if (d < 3) throw std::invalid_argument("grid dimension must be at least 3");
  if (n < 16) throw std::invalid_argument("grid needs at least 16 nodes, got " + std::to_string(n));
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw std::invalid_argument("r_max must be positive");
  if (!(options.stretch >= 0.0) || options.stretch > 50.0) {
    throw std::invalid_argument("grid stretch must lie in [0, 50]");
  }
  const double nu_g = 0.5 * (d - 2) - options.origin_exponent;
  if (!(nu_g > 0.0)) {
    std::ostringstream msg;
    msg << "origin exponent " << options.origin_exponent << " must be below (d-2)/2 = " << 0.5 * (d - 2);
    throw std::invalid_argument(msg.str());
  }

  auto grid = std::shared_ptr<RadialGrid>(new RadialGrid());
  grid->d_ = d;
  grid->r_max_ = r_max;
  grid->stretch_ = options.stretch < kIdentityStretch ? 0.0 : options.stretch;
  grid->rho_g_ = options.origin_exponent;

  const quad::Rule rule = quad::gauss_radau_jacobi(n, 0.0, nu_g);
  const double big_d = grid->reduced_dimension();
  // r^{D-1} dr = r_max^D 2^{-nu-2} (1+t)^nu g(sigma) dt with sigma = (1+t)/2
  const double scale = std::pow(r_max, big_d) * std::pow(2.0, -nu_g - 2.0);

  grid->r_.resize(n);
  grid->w_.resize(n);
  grid->vol_.resize(n);
  grid->wred_.resize(n);
  grid->rpow_.resize(n);
  grid->sigma_.resize(n);
  for (int j = 0; j < n; ++j) {
    const double sigma = j == n - 1 ? 1.0 : 0.5 * (1.0 + rule.nodes[j]);
    const double r = grid->radius_of(sigma);
    grid->sigma_(j) = sigma;
    grid->r_(j) = r;
    grid->wred_(j) = scale * rule.weights[j] * grid->measure_density(sigma, 0);
    grid->rpow_(j) = std::pow(r, grid->rho_g_);
    grid->vol_(j) = grid->wred_(j) * grid->rpow_(j) * grid->rpow_(j);
    grid->w_(j) = grid->vol_(j) / std::pow(r, d - 1);
  }
  for (int j = 1; j < n; ++j) {
    if (!(grid->r_(j) > grid->r_(j - 1))) throw std::runtime_error("grid nodes are not increasing");
  }

  // barycentric weights b_j = 1 / prod_{k != j} (sigma_j - sigma_k), in log form
  std::vector<long double> logb(static_cast<std::size_t>(n));
  long double max_log = -1e300L;
  for (int j = 0; j < n; ++j) {
    long double acc = 0.0L;
    for (int k = 0; k < n; ++k) {
      if (k != j) {
        acc -= std::log(std::fabs(static_cast<long double>(grid->sigma_(j)) - grid->sigma_(k)));
      }
    }
    logb[j] = acc;
    max_log = std::max(max_log, acc);
  }
  grid->bary_.resize(n);
  for (int j = 0; j < n; ++j) {
    const double sign = ((n - 1 - j) % 2 == 0) ? 1.0 : -1.0;
    grid->bary_(j) = sign * static_cast<double>(std::exp(logb[j] - max_log));
  }
  return grid;
}

double RadialGrid::map(double xi) const {
  if (stretch_ == 0.0) return xi;
  return std::sinh(stretch_ * xi) / std::sinh(stretch_);
}

double RadialGrid::map_derivative(double xi) const {
  if (stretch_ == 0.0) return 1.0;
  return stretch_ * std::cosh(stretch_ * xi) / std::sinh(stretch_);
}

double RadialGrid::sigma_of(double r) const {
  const double x = r / r_max_;
  const double xi = stretch_ == 0.0 ? x : std::asinh(x * std::sinh(stretch_)) / stretch_;
  return xi * xi;
}

double RadialGrid::radius_of(double sigma) const { return r_max_ * map(std::sqrt(sigma)); }

double RadialGrid::dsigma_dr(double r) const {
  const double xi = std::sqrt(sigma_of(r));
  return 2.0 * xi / (r_max_ * map_derivative(xi));
}

double RadialGrid::measure_density(double sigma, int k) const {
  if (stretch_ == 0.0) return 1.0;
  const double xi = std::sqrt(sigma);
  const double ratio = xi > 0.0 ? map(xi) / xi : stretch_ / std::sinh(stretch_);
  return std::pow(ratio, reduced_dimension() - 1.0 - 2.0 * k) * map_derivative(xi);
}

void RadialGrid::interpolation_row(double sigma, std::span<double> row) const {
  const Eigen::Index n = size();
  Eigen::Map<Eigen::ArrayXd> out(row.data(), n);
  if (sigma > 1.0) {
    out.setZero();
    return;
  }
  out = bary_.array() / (sigma - sigma_.array());
  if (!out.allFinite()) {
    // sigma coincides with a node
    Eigen::Index hit = 0;
    (sigma_.array() - sigma).abs().minCoeff(&hit);
    out.setZero();
    out(hit) = 1.0;
    return;
  }
  // a sequential sum keeps the row independent of the buffer's address
  out /= std::accumulate(row.begin(), row.end(), 0.0);
}

RealMatrix RadialGrid::interpolation_matrix_sigma(std::span<const double> sigmas) const {
  // filled row-major through a transposed buffer so each row is contiguous
  RealMatrix out_t(size(), static_cast<Eigen::Index>(sigmas.size()));
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    interpolation_row(sigmas[i], std::span<double>(out_t.col(static_cast<Eigen::Index>(i)).data(),
                                                   static_cast<std::size_t>(size())));
  }
  return out_t.transpose();
}

RealMatrix RadialGrid::interpolation_matrix(std::span<const double> radii) const {
  std::vector<double> sig(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0)) throw std::invalid_argument("interpolation radius must be non-negative");
    sig[i] = radii[i] > r_max_ ? 2.0 : sigma_of(radii[i]);
  }
  return interpolation_matrix_sigma(sig);
}

RealMatrix RadialGrid::sigma_differentiation_matrix() const {
  const int n = size();
  RealMatrix dm = RealMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double diag = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double v = (bary_(k) / bary_(j)) / (sigma_(j) - sigma_(k));
      dm(j, k) = v;
      diag -= v;
    }
    dm(j, j) = diag;
  }
  return dm;
}

Complex RadialGrid::evaluate(const ComplexVector& samples, double r) const {
  if (samples.size() != size()) throw MismatchError("sample count does not match the grid");
  if (r > r_max_) return {0.0, 0.0};
  if (!(r > 0.0)) throw std::invalid_argument("evaluation radius must be positive");
  std::vector<double> row(static_cast<std::size_t>(size()));
  interpolation_row(sigma_of(r), row);
  Complex v{0.0, 0.0};
  for (int k = 0; k < size(); ++k) v += row[k] * rpow_(k) * samples(k);
  return v / std::pow(r, rho_g_);
}

double RadialGrid::cell_size(double r) const {
  const auto* begin = r_.data();
  const auto* end = begin + r_.size();
  const auto* it = std::upper_bound(begin, end, r);
  if (it == begin) return r_(0);
  if (it == end) return r_(size() - 1) - r_(size() - 2);
  return *it - *(it - 1);
}

bool RadialGrid::same_layout(const RadialGrid& other) const {
  return d_ == other.d_ && size() == other.size() && r_max_ == other.r_max_ &&
         stretch_ == other.stretch_ && rho_g_ == other.rho_g_;
}

}  // namespace hartree
