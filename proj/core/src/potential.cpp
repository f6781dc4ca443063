#include "hartree/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hartree/model.hpp"
#include "hartree/quadrature.hpp"

namespace hartree {
namespace {

double series_2f1(double b, double c, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int j = 0; j < 400; ++j) {
    term *= (b + j) / (c + j) * x;
    sum += term;
    if (term == 0.0 || std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Sphere average for odd d >= 5 and h in (1/2, 1].
double odd_dimension_average(int d, double h) {
  const int k = (d - 3) / 2;
  // coefficients of (1 - t^2)^k in ascending powers
  std::vector<double> p(static_cast<std::size_t>(2 * k + 1), 0.0);
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    p[2 * j] = (j % 2 == 0 ? 1.0 : -1.0) * binom;
    binom = binom * (k - j) / (j + 1);
  }
  const double z = (1.0 + h * h) / (2.0 * h);
  // synthetic division p(t) = (t - z) q(t) + p(z)
  const int deg = 2 * k;
  std::vector<double> q(static_cast<std::size_t>(deg), 0.0);
  double carry = p[deg];
  for (int i = deg - 1; i >= 0; --i) {
    q[i] = carry;
    carry = p[i] + z * carry;
  }
  const double pz = carry;
  double q_int = 0.0;
  for (int i = 0; i < deg; i += 2) q_int += 2.0 * q[i] / (i + 1);
  const double log_term = (h == 1.0 || pz == 0.0) ? 0.0 : pz * std::log((z + 1.0) / (z - 1.0));
  const double integral = (log_term - q_int) / (2.0 * h);
  const double norm = std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (d - 1)) / std::tgamma(0.5 * d);
  return integral / norm;
}

struct QuadPoint {
  double s;
  double w;
};

void append_panel(std::vector<QuadPoint>& out, double a, double b, const quad::Rule& gl) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t q = 0; q < gl.nodes.size(); ++q) out.push_back({mid + half * gl.nodes[q], half * gl.weights[q]});
}

// Panel [0, r0] through s = r0 x^2; the endpoint behaviour s^{D-1} becomes x^{2D-1}.
void append_origin_panel(std::vector<QuadPoint>& out, double r0, double x0, double x1, const quad::Rule& gl) {
  const double half = 0.5 * (x1 - x0);
  const double mid = 0.5 * (x0 + x1);
  for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
    const double x = mid + half * gl.nodes[q];
    out.push_back({r0 * x * x, half * gl.weights[q] * 2.0 * r0 * x});
  }
}

// Geometric subdivision of [a, b] toward one endpoint: breakpoints at
// distances (b-a) ratio^k from it.
std::vector<std::pair<double, double>> graded_intervals(double a, double b, bool toward_b, int levels, double ratio) {
  std::vector<std::pair<double, double>> out;
  const double len = b - a;
  double outer = len;
  for (int k = 0; k < levels; ++k) {
    const double inner = outer * ratio;
    if (toward_b) {
      out.emplace_back(b - outer, b - inner);
    } else {
      out.emplace_back(a + inner, a + outer);
    }
    outer = inner;
  }
  if (toward_b) {
    out.emplace_back(b - outer, b);
  } else {
    out.emplace_back(a, a + outer);
  }
  return out;
}

}  // namespace

double sharp_hls_constant(int d) {
  if (d < 3) throw std::invalid_argument("HLS constant requires d >= 3");
  const double h = 0.5 * d;
  return std::numbers::pi * std::tgamma(h - 1.0) / std::tgamma(d - 1.0) *
         std::pow(std::tgamma(h) / std::tgamma(static_cast<double>(d)), -1.0 + 2.0 / d);
}

double kernel(int d, double r, double s) {
  if (d < 3) throw std::invalid_argument("kernel dimension must be at least 3");
  if (!(r > 0.0) || !(s > 0.0)) throw std::invalid_argument("kernel radii must be positive");
  const double mx = std::max(r, s);
  const double h = std::min(r, s) / mx;
  const double inv2 = 1.0 / (mx * mx);
  if (d == 3) {
    if (r == s) throw std::domain_error("d = 3 kernel is logarithmically singular at r = s");
    const double avg = h < 1e-8 ? 1.0 + h * h / 3.0 : std::atanh(h) / h;
    return avg * inv2;
  }
  if (d == 4) return inv2;
  const double b = 2.0 - 0.5 * d;
  const double c = 0.5 * d;
  if (d % 2 == 0 || h <= 0.5) return series_2f1(b, c, h * h) * inv2;
  return odd_dimension_average(d, h) * inv2;
}

KernelMatrix::KernelMatrix(GridPtr grid, const KernelOptions& options) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("kernel matrix requires a grid");
  if (options.panel_points < 2 || options.grading_levels < 1 || !(options.grading_ratio > 0.0) ||
      !(options.grading_ratio < 1.0) || options.block_panels < 1) {
    throw std::invalid_argument("invalid kernel quadrature options");
  }
  const RadialGrid& g = *grid_;
  const int d = g.dimension();
  const int n = g.size();
  const int m = g.interior_size();
  const double big_d = g.reduced_dimension();
  const RealVector& r = g.nodes();
  const quad::Rule gl = quad::gauss_legendre(options.panel_points);
  const bool log_diagonal = d == 3;

  auto panel_points = [&](int k, std::vector<QuadPoint>& pts) {
    if (k == 0) {
      append_origin_panel(pts, r(0), 0.0, 1.0, gl);
    } else {
      append_panel(pts, r(k - 1), r(k), gl);
    }
  };
  auto measure = [&](const QuadPoint& pt) { return std::pow(pt.s, big_d - 1.0) * pt.w; };

  RealMatrix raw = RealMatrix::Zero(n, n);
  std::vector<QuadPoint> pts;
  std::vector<int> owner;
  std::vector<double> sig;
  for (int k0 = 0; k0 < n; k0 += options.block_panels) {
    const int k1 = std::min(n, k0 + options.block_panels);
    pts.clear();
    owner.clear();
    for (int k = k0; k < k1; ++k) {
      panel_points(k, pts);
      owner.resize(pts.size(), k);
    }
    sig.resize(pts.size());
    for (std::size_t q = 0; q < pts.size(); ++q) sig[q] = g.sigma_of(pts[q].s);
    const RealMatrix interp = g.interpolation_matrix_sigma(sig);
    RealMatrix weights(n, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t q = 0; q < pts.size(); ++q) {
      const double mq = measure(pts[q]);
      for (int i = 0; i < n; ++i) {
        const bool adjacent = owner[q] == i || owner[q] == i + 1;
        weights(i, static_cast<Eigen::Index>(q)) = (log_diagonal && adjacent) ? 0.0 : kernel(d, r(i), pts[q].s) * mq;
      }
    }
    raw.noalias() += weights * interp;
  }

  if (log_diagonal) {
    std::vector<double> row(static_cast<std::size_t>(n));
    RealVector acc(n);
    for (int i = 0; i < n; ++i) {
      pts.clear();
      // left neighbour panel, singular at its right end r_i
      if (i == 0) {
        for (const auto& [x0, x1] : graded_intervals(0.0, 1.0, true, options.grading_levels, options.grading_ratio)) {
          append_origin_panel(pts, r(0), x0, x1, gl);
        }
      } else {
        for (const auto& [a, b] :
             graded_intervals(r(i - 1), r(i), true, options.grading_levels, options.grading_ratio)) {
          append_panel(pts, a, b, gl);
        }
      }
      if (i + 1 < n) {
        for (const auto& [a, b] :
             graded_intervals(r(i), r(i + 1), false, options.grading_levels, options.grading_ratio)) {
          append_panel(pts, a, b, gl);
        }
      }
      acc.setZero();
      for (const QuadPoint& pt : pts) {
        if (pt.s == r(i)) continue;
        g.interpolation_row(g.sigma_of(pt.s), row);
        acc += (kernel(d, r(i), pt.s) * measure(pt)) * Eigen::Map<const Eigen::VectorXd>(row.data(), n);
      }
      raw.row(i) += acc.transpose();
    }
  }
  raw *= sphere_area(d);

  const RealVector wred = g.reduced_weights().head(m);
  RealMatrix form = wred.asDiagonal() * raw.topLeftCorner(m, m);
  const double norm = form.norm();
  asymmetry_ = norm > 0.0 ? (form - form.transpose()).norm() / norm : 0.0;
  form = 0.5 * (form + form.transpose()).eval();
  g_ = wred.cwiseInverse().asDiagonal() * form;
  boundary_row_ = raw.row(n - 1).head(m).transpose();
}

void KernelMatrix::require_compatible(const ComplexRadialField& u) const {
  if (u.grid_ptr() != grid_ && !u.grid().same_layout(*grid_)) {
    throw MismatchError("field grid does not match the kernel matrix");
  }
}

RealMatrix KernelMatrix::symmetric_form() const {
  return grid_->reduced_weights().head(g_.rows()).asDiagonal() * g_;
}

RealVector KernelMatrix::apply(const RealVector& reduced_density) const {
  if (reduced_density.size() != g_.cols()) throw MismatchError("density size does not match the kernel");
  return g_ * reduced_density;
}

RealVector KernelMatrix::potential(const ComplexRadialField& u) const {
  require_compatible(u);
  const Eigen::Index m = g_.rows();
  const RealVector q = u.reduced_density().head(m);
  RealVector phi(m + 1);
  phi.head(m) = g_ * q;
  phi(m) = boundary_row_.dot(q);
  return phi;
}

double KernelMatrix::quartic(const ComplexRadialField& u) const { return cross_quartic(u, u); }

double KernelMatrix::cross_quartic(const ComplexRadialField& u, const ComplexRadialField& f) const {
  require_compatible(u);
  require_compatible(f);
  const Eigen::Index m = g_.rows();
  const RealVector q = u.reduced_density().head(m);
  const RealVector qf = f.reduced_density().head(m);
  const RealVector& wred = grid_->reduced_weights();
  const double omega = sphere_area(grid_->dimension());
  return 0.25 * omega * (wred.head(m).cwiseProduct(qf)).dot(g_ * q);
}

RealVector potential(const KernelMatrix& kernel, const ComplexRadialField& u) {
  u.require_finite("potential");
  return kernel.potential(u);
}

double lv_value(const KernelMatrix& kernel, const ComplexRadialField& u) {
  u.require_finite("lv_value");
  return kernel.quartic(u);
}

}  // namespace hartree
