#include "hartree/ground_state.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "hartree/profiles.hpp"

namespace hartree {
namespace {

struct Iterate {
  ComplexRadialField u;
  Quantities q;
  double J = 0.0;
};

double weighted_norm(const RadialGrid& g, const ComplexVector& v) {
  return std::sqrt(g.volume_weights().dot(v.cwiseAbs2()));
}

void project_nonnegative(ComplexRadialField& u) {
  for (Eigen::Index j = 0; j < u.size(); ++j) u.values()(j) = std::max(u.values()(j).real(), 0.0);
}

// Rescales to M = H = 1: a dilation by sqrt(M/H), then the amplitude.
Iterate normalize(const RadialModel& model, ComplexRadialField u, double tail_tolerance) {
  double M = mass(model, u);
  const double H = hamiltonian(model, u);
  if (!(M > 0.0) || !(H > 0.0) || !std::isfinite(M) || !std::isfinite(H)) {
    throw Error("ground-state iterate collapsed (M = " + std::to_string(M) + ", H = " + std::to_string(H) + ")");
  }
  const double nu_s = std::sqrt(M / H);
  u = rescale(model, u, 1.0, nu_s, tail_tolerance);
  M = mass(model, u);
  u *= 1.0 / std::sqrt(M);
  Iterate it{std::move(u), {}, 0.0};
  it.q = functionals(model, it.u);
  if (!it.q.J) throw Error("ground-state iterate has vanishing quartic term");
  it.J = *it.q.J;
  return it;
}

ComplexRadialField pointwise(const RealVector& phi, const ComplexRadialField& u) {
  ComplexRadialField out(u.grid_ptr());
  const Eigen::Index m = phi.size() - 1;
  out.values().head(m) = u.values().head(m).cwiseProduct(phi.head(m).cast<Complex>());
  return out;
}

ComplexRadialField initial_field(const RadialModel& model, const GroundStateOptions& options) {
  if (options.custom_guess) {
    model.plan().require_compatible(*options.custom_guess);
    ComplexRadialField u = *options.custom_guess;
    project_nonnegative(u);
    return u;
  }
  const double rho = model.params().rho;
  switch (options.guess) {
    case InitialGuess::Sech:
      return profiles::sech(model.grid_ptr(), options.guess_width, 1.0, rho);
    case InitialGuess::Gaussian:
    default:
      return profiles::gaussian(model.grid_ptr(), options.guess_width, 1.0, rho);
  }
}

// Gradient of log J in the weighted L2 metric: u/M + L_a u / H - Phi u / L_V
// (up to the common factor omega).
ComplexRadialField log_j_gradient(const RadialModel& model, const Iterate& it) {
  const RealVector phi = model.kernel().potential(it.u);
  ComplexRadialField grad = model.plan().apply_La(it.u);
  grad *= 1.0 / it.q.H;
  ComplexRadialField mass_part = it.u;
  mass_part *= 1.0 / it.q.M;
  ComplexRadialField pot = pointwise(phi, it.u);
  pot *= 1.0 / it.q.LV;
  grad += mass_part;
  grad -= pot;
  return grad;
}

std::string format_residual(double r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

}  // namespace

double el_residual(const RadialModel& model, const ComplexRadialField& Q) {
  model.plan().require_compatible(Q);
  Q.require_finite("el_residual");
  const RealVector phi = model.kernel().potential(Q);
  ComplexRadialField r = model.plan().apply_La(Q);
  r += Q;
  r -= pointwise(phi, Q);
  r.values()(r.size() - 1) = 0.0;
  const double qn = weighted_norm(model.grid(), Q.values());
  if (qn == 0.0) return 0.0;
  return weighted_norm(model.grid(), r.values()) / qn;
}

PohozaevReport pohozaev(const Quantities& q, double M_gs) {
  return {std::abs(q.H - q.LV) / M_gs, std::abs(q.M - q.LV) / M_gs, std::abs(q.M - q.H) / M_gs};
}

GroundStateResult solve_ground_state(const ModelParams& params, const RadialModel& model,
                                     const GroundStateOptions& options) {
  model.plan().require_compatible(params);
  return solve_ground_state(model, options);
}

GroundStateResult solve_ground_state(const RadialModel& model, const GroundStateOptions& options) {
  if (model.params().a > 0.0) {
    throw std::invalid_argument("ground states exist only for a <= 0 (J has no minimizer for a > 0)");
  }
  if (!(options.initial_step > 0.0) || !(options.max_step >= options.initial_step) || options.max_iterations < 1) {
    throw std::invalid_argument("invalid ground-state step or iteration options");
  }
  const TransformPlan& plan = model.plan();
  const RealVector& k2 = plan.eigenvalues();
  std::vector<TraceEntry> trace;

  Iterate cur = normalize(model, initial_field(model, options), options.tail_tolerance);
  // residual of (L_a + alpha) u = beta Phi[u] u, the critical-point equation of J
  auto candidate_residual = [&](const Iterate& it) {
    const double alpha = it.q.H / it.q.M;
    const double beta = it.q.H / it.q.LV;
    const RealVector phi = model.kernel().potential(it.u);
    ComplexRadialField r = plan.apply_La(it.u);
    ComplexRadialField au = it.u;
    au *= alpha;
    r += au;
    ComplexRadialField nl = pointwise(phi, it.u);
    nl *= beta;
    r -= nl;
    r.values()(r.size() - 1) = 0.0;
    return weighted_norm(model.grid(), r.values()) / weighted_norm(model.grid(), au.values());
  };
  double residual = candidate_residual(cur);
  trace.push_back({0, cur.J, 0.0, residual, SolverPhase::Flow});

  double tau = options.initial_step;
  int iteration = 0;
  bool descent = false;
  double best_residual = residual;
  int best_iteration = 0;
  while (iteration < options.max_iterations && residual > options.flow_tolerance &&
         iteration - best_iteration < options.stagnation_window) {
    ++iteration;
    ComplexRadialField trial = cur.u;
    if (!descent) {
      const double alpha = cur.q.H / cur.q.M;
      const double beta = cur.q.H / cur.q.LV;
      const RealVector phi = model.kernel().potential(cur.u);
      const ComplexVector resolvent = (k2.array() + alpha).inverse().cast<Complex>().matrix();
      ComplexRadialField target = plan.apply_multiplier(pointwise(phi, cur.u), resolvent);
      target *= beta * tau;
      trial *= (1.0 - tau);
      trial += target;
    } else {
      ComplexRadialField grad = log_j_gradient(model, cur);
      grad *= tau;
      trial -= grad;
    }
    project_nonnegative(trial);
    Iterate trial_it = normalize(model, std::move(trial), options.tail_tolerance);
    if (trial_it.J <= cur.J * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
      cur = std::move(trial_it);
      residual = candidate_residual(cur);
      trace.push_back({iteration, cur.J, tau, residual, descent ? SolverPhase::Descent : SolverPhase::Flow});
      tau = std::min(options.max_step, tau * options.step_growth);
      if (residual < options.stagnation_factor * best_residual) {
        best_residual = residual;
        best_iteration = iteration;
      }
    } else {
      tau *= 0.5;
      if (tau < options.min_step) {
        if (descent) break;
        descent = true;
        tau = options.initial_step;
      }
    }
  }

  // On the grid J is dilation invariant only up to discretization error, so
  // the constrained flow levels off at a residual of that size; the polish
  // then converges to the discrete Euler-Lagrange solution.
  // (L_a + alpha) u = beta Phi[u] u turns into (L_a + 1) Q = Phi[Q] Q for
  // Q(r) = c u(r / sqrt(alpha)) with c^2 = beta alpha^{-d/2}.
  const double alpha = cur.q.H / cur.q.M;
  const double beta = cur.q.H / cur.q.LV;
  ComplexRadialField Q = rescale(model, cur.u, std::sqrt(beta * std::pow(alpha, -0.5 * model.params().d)),
                                 1.0 / std::sqrt(alpha), options.tail_tolerance);

  if (options.polish) {
    const ComplexVector resolvent = (k2.array() + 1.0).inverse().cast<Complex>().matrix();
    double best = el_residual(model, Q);
    for (int k = 0; k < options.max_polish_iterations && best > options.tolerance; ++k) {
      const RealVector phi = model.kernel().potential(Q);
      const ComplexRadialField nq = pointwise(phi, Q);
      const double num = plan.quadratic_form(Q) + plan.inner_product(Q, Q);
      const double den = plan.inner_product(Q, nq);
      ComplexRadialField next = plan.apply_multiplier(nq, resolvent);
      next *= std::pow(num / den, 1.5);
      project_nonnegative(next);
      const double res = el_residual(model, next);
      if (!(res < best)) break;
      Q = std::move(next);
      best = res;
      ++iteration;
      const Quantities q = functionals(model, Q);
      trace.push_back({iteration, q.J.value_or(0.0), 1.0, res, SolverPhase::Polish});
    }
  }

  GroundStateResult result{Q, 0.0, el_residual(model, Q), iteration, std::move(trace), {}};
  result.quantities = functionals(model, result.Q);
  if (!result.quantities.J) throw Error("ground state has vanishing quartic term");
  result.M_gs = *result.quantities.J;
  if (!(result.residual <= std::max(options.tolerance, options.flow_tolerance))) {
    throw ConvergenceError("ground-state solver stopped at residual " + format_residual(result.residual) +
                               " after " + std::to_string(iteration) + " iterations",
                           std::move(result.trace));
  }
  return result;
}

GnAuditReport gn_audit(const RadialModel& model, std::span<const ComplexRadialField> fields, double M_gs,
                       double tolerance) {
  if (!(M_gs > 0.0)) throw std::invalid_argument("M_gs must be positive");
  GnAuditReport report;
  report.min_ratio = std::numeric_limits<double>::infinity();
  for (const ComplexRadialField& u : fields) {
    const Quantities q = functionals(model, u);
    GnAuditEntry e;
    e.J = q.J.value_or(std::numeric_limits<double>::infinity());
    e.ratio = e.J / M_gs;
    e.violation = q.J.has_value() && e.J < M_gs * (1.0 - tolerance);
    report.violations += e.violation ? 1 : 0;
    report.min_ratio = std::min(report.min_ratio, e.ratio);
    report.entries.push_back(e);
  }
  return report;
}

void write_ground_state(std::ostream& out, const RadialModel& model, const GroundStateResult& result) {
  const RadialGrid& g = model.grid();
  const auto precision = out.precision(17);
  out << "# hartree ground state\n";
  out << "# d = " << model.params().d << "\n";
  out << "# a = " << model.params().a << "\n";
  out << "# n = " << g.size() << "\n";
  out << "# r_max = " << g.r_max() << "\n";
  out << "# stretch = " << g.stretch() << "\n";
  out << "# origin_exponent = " << g.origin_exponent() << "\n";
  out << "# M_gs = " << result.M_gs << "\n";
  out << "# residual = " << result.residual << "\n";
  out << "# columns: r Q\n";
  for (int j = 0; j < g.size(); ++j) out << g.nodes()(j) << ' ' << result.Q.values()(j).real() << '\n';
  out.precision(precision);
}

GroundStateFile read_ground_state(std::istream& in) {
  std::map<std::string, double> header;
  std::vector<std::pair<double, double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      try {
        header[key] = std::stod(line.substr(eq + 1));
      } catch (const std::exception&) {
        throw std::runtime_error("ground-state file line " + std::to_string(line_no) + ": bad header value");
      }
      continue;
    }
    std::istringstream row(line);
    double r = 0.0;
    double v = 0.0;
    if (!(row >> r >> v)) throw std::runtime_error("ground-state file line " + std::to_string(line_no) + ": bad row");
    rows.emplace_back(r, v);
  }
  for (const char* key : {"d", "a", "n", "r_max", "M_gs", "residual"}) {
    if (!header.count(key)) throw std::runtime_error(std::string("ground-state file lacks header key ") + key);
  }
  GroundStateFile f{make_params(static_cast<int>(header["d"]), header["a"]),
                    static_cast<int>(header["n"]),
                    header["r_max"],
                    header.count("stretch") ? header["stretch"] : 0.0,
                    header.count("origin_exponent") ? header["origin_exponent"] : 0.0,
                    header["M_gs"],
                    header["residual"],
                    ComplexRadialField(RadialGrid::build(static_cast<int>(header["d"]), static_cast<int>(header["n"]),
                                                         header["r_max"],
                                                         {header.count("stretch") ? header["stretch"] : 0.0,
                                                          header.count("origin_exponent") ? header["origin_exponent"]
                                                                                          : 0.0}))};
  const RadialGrid& g = f.Q.grid();
  if (static_cast<int>(rows.size()) != g.size()) {
    throw std::runtime_error("ground-state file has " + std::to_string(rows.size()) + " rows, header says " +
                             std::to_string(g.size()));
  }
  for (int j = 0; j < g.size(); ++j) {
    if (std::abs(rows[j].first - g.nodes()(j)) > 1e-9 * std::max(1.0, g.nodes()(j))) {
      throw std::runtime_error("ground-state file node " + std::to_string(j) + " does not match the grid");
    }
    f.Q.values()(j) = rows[j].second;
  }
  return f;
}

}  // namespace hartree
