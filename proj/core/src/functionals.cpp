#include "hartree/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "hartree/quadrature.hpp"

namespace hartree {

RadialModel::RadialModel(const ModelParams& params, GridPtr grid, const KernelOptions& kernel_options)
    : params_(params),
      grid_(std::move(grid)),
      plan_(grid_, params),
      kernel_(grid_, kernel_options),
      omega_(sphere_area(params.d)) {}

RadialModel RadialModel::build(const ModelParams& params, int n, double r_max, double stretch,
                               const KernelOptions& kernel_options) {
  GridOptions options;
  options.stretch = stretch;
  options.origin_exponent = params.rho;
  return {params, RadialGrid::build(params.d, n, r_max, options), kernel_options};
}

namespace {
void require_model_grid(const RadialModel& model, const ComplexRadialField& u) {
  model.plan().require_compatible(u);
  u.require_finite("functionals");
}
}  // namespace

double mass(const RadialModel& model, const ComplexRadialField& u) {
  require_model_grid(model, u);
  return 0.5 * model.omega() * model.grid().volume_weights().dot(u.values().cwiseAbs2());
}

double hamiltonian(const RadialModel& model, const ComplexRadialField& u) {
  require_model_grid(model, u);
  return 0.5 * model.omega() * model.plan().quadratic_form(u);
}

double inverse_square_norm(const RadialModel& model, const ComplexRadialField& u) {
  require_model_grid(model, u);
  return model.omega() * model.plan().inverse_square_integral(u);
}

double gradient_norm_sq(const RadialModel& model, const ComplexRadialField& u) {
  require_model_grid(model, u);
  const TransformPlan& plan = model.plan();
  return model.omega() * (plan.quadratic_form(u) - model.params().a * plan.inverse_square_integral(u));
}

Quantities functionals(const RadialModel& model, const ComplexRadialField& u) {
  Quantities q;
  q.M = mass(model, u);
  q.H = hamiltonian(model, u);
  q.LV = model.kernel().quartic(u);
  q.E = q.H - q.LV;
  if (q.LV > 0.0) q.J = q.M * q.H / q.LV;
  return q;
}

Quantities functionals(const RadialModel& model, const ComplexRadialField& u, const ModelParams& params) {
  model.plan().require_compatible(params);
  return functionals(model, u);
}

double partial_mass(const RadialModel& model, const ComplexRadialField& u, double lambda) {
  require_model_grid(model, u);
  if (!(lambda >= 0.0)) throw std::invalid_argument("window radius must be non-negative");
  const RadialGrid& g = model.grid();
  if (lambda >= g.r_max()) return mass(model, u);
  if (lambda == 0.0) return 0.0;
  // int_0^lambda |v|^2 r^{D-1} dr with sigma = s_l (1+t)/2 and weight (1+t)^nu
  const double nu = g.order();
  const double s_l = g.sigma_of(lambda);
  const int points = g.size() / 2 + 8;
  const quad::Rule rule = quad::gauss_jacobi(points, 0.0, nu);
  std::vector<double> sig(static_cast<std::size_t>(points));
  RealVector w(points);
  const double scale = 0.5 * std::pow(g.r_max(), g.reduced_dimension()) * std::pow(0.5 * s_l, nu + 1.0);
  for (int i = 0; i < points; ++i) {
    sig[i] = 0.5 * s_l * (1.0 + rule.nodes[i]);
    w(i) = scale * rule.weights[i] * g.measure_density(sig[i], 0);
  }
  const RealVector q = u.reduced_density();
  const RealVector q_at = g.interpolation_matrix_sigma(sig) * q;
  return 0.5 * model.omega() * w.dot(q_at);
}

double lp_norm(const RadialModel& model, const ComplexRadialField& u, double p) {
  require_model_grid(model, u);
  if (!(p >= 1.0)) throw std::invalid_argument("Lebesgue exponent must be at least 1");
  const RealVector& vol = model.grid().volume_weights();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < vol.size(); ++j) acc += vol(j) * std::pow(std::abs(u.values()(j)), p);
  return std::pow(model.omega() * acc, 1.0 / p);
}

double hardy_ratio(const RadialModel& model, const ComplexRadialField& u) {
  const double grad = gradient_norm_sq(model, u);
  const double inv = inverse_square_norm(model, u);
  if (u.values().cwiseAbs().maxCoeff() == 0.0 || !(grad > 0.0)) {
    throw std::invalid_argument("Hardy ratio is undefined for the zero field");
  }
  return inv / grad;
}

ComplexRadialField rescale(const RadialModel& model, const ComplexRadialField& u, double mu, double nu_s,
                           double tail_tolerance) {
  require_model_grid(model, u);
  if (!(mu > 0.0) || !(nu_s > 0.0)) throw std::invalid_argument("rescale factors must be positive");
  const RadialGrid& g = model.grid();
  if (nu_s < 1.0) {
    const double total = mass(model, u);
    if (total > 0.0) {
      const double escaped = 1.0 - partial_mass(model, u, nu_s * g.r_max()) / total;
      if (escaped > tail_tolerance) {
        std::ostringstream msg;
        msg << "rescaled field leaves the grid: escaped mass fraction " << escaped << " exceeds " << tail_tolerance;
        throw GridEscapeError(msg.str());
      }
    }
  }
  if (mu == 1.0 && nu_s == 1.0) return u;
  const RealVector& r = g.nodes();
  std::vector<double> radii(static_cast<std::size_t>(g.interior_size()));
  for (int j = 0; j < g.interior_size(); ++j) radii[j] = nu_s * r(j);
  const RealMatrix interp = g.interpolation_matrix(radii);
  const ComplexVector v = u.values().cwiseProduct(g.origin_factor().cast<Complex>());
  const ComplexVector vt = interp * v;
  ComplexRadialField out(u.grid_ptr());
  const double rho_g = g.origin_exponent();
  for (int j = 0; j < g.interior_size(); ++j) out.values()(j) = mu * vt(j) * std::pow(nu_s * r(j), -rho_g);
  return out;
}

RealVector rearrange_cells(const RealVector& magnitude, const RealVector& volumes) {
  if (magnitude.size() != volumes.size()) throw std::invalid_argument("rearrange_cells: size mismatch");
  const Eigen::Index n = volumes.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return magnitude(a) > magnitude(b); });

  // sorted step profile: value magnitude(order[k]) on [edge[k], edge[k+1])
  std::vector<double> edge(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index k = 0; k < n; ++k) edge[k + 1] = edge[k] + volumes(order[k]);

  RealVector out = RealVector::Zero(n);
  Eigen::Index k = 0;
  double left = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double right = j + 1 == n ? edge[n] : left + volumes(j);
    double acc = 0.0;
    while (k < n && edge[k] < right) {
      const double lo = std::max(left, edge[k]);
      const double hi = std::min(right, edge[k + 1]);
      const double m = magnitude(order[k]);
      if (hi > lo) acc += (hi - lo) * m * m;
      if (edge[k + 1] <= right) {
        ++k;
      } else {
        break;
      }
    }
    out(j) = volumes(j) > 0.0 ? std::sqrt(acc / volumes(j)) : 0.0;
    left = right;
  }
  return out;
}

ComplexRadialField rearrange_decreasing(const ComplexRadialField& u) {
  u.require_finite("rearrange_decreasing");
  const RealVector cells = rearrange_cells(u.values().cwiseAbs(), u.grid().volume_weights());
  return ComplexRadialField(u.grid_ptr(), cells.cast<Complex>());
}

}  // namespace hartree
