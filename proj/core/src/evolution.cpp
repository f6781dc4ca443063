#include "hartree/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hartree {

std::string to_string(Scheme s) {
  return s == Scheme::StrangSplit ? "strang-split" : "midpoint-relaxation";
}

std::string to_string(StopReason s) {
  switch (s) {
    case StopReason::TEnd:
      return "t_end";
    case StopReason::HThreshold:
      return "h_threshold";
    case StopReason::ResolutionLimit:
      return "resolution_limit";
    case StopReason::NonFinite:
      return "non_finite";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "strang-split" || s == "strang") return Scheme::StrangSplit;
  if (s == "midpoint-relaxation" || s == "relaxation") return Scheme::MidpointRelaxation;
  throw std::invalid_argument("unknown scheme '" + s + "' (expected strang-split or midpoint-relaxation)");
}

WindowRule WindowRule::fixed(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("window radius must be positive");
  return {Kind::Fixed, radius, 0.0};
}

WindowRule WindowRule::sqrt_to_blowup(double t_star, double coefficient) {
  if (!(coefficient > 0.0)) throw std::invalid_argument("window coefficient must be positive");
  return {Kind::SqrtToBlowup, coefficient, t_star};
}

double WindowRule::radius(double t) const {
  if (kind == Kind::Fixed) return value;
  return value * std::sqrt(std::max(t_star - t, 0.0));
}

std::string WindowRule::label() const {
  std::ostringstream s;
  s.precision(12);
  if (kind == Kind::Fixed) {
    s << "conc@" << value;
  } else {
    s << "conc@" << value << "*sqrt(" << t_star << "-t)";
  }
  return s.str();
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive and finite");
  if (!(t_end >= t_start)) throw std::invalid_argument("t_end must not precede t_start");
  if (output_stride < 1) throw std::invalid_argument("output stride must be at least 1");
  if (!(h_threshold > 0.0)) throw std::invalid_argument("H threshold must be positive");
  if (!(resolution_cells >= 0.0)) throw std::invalid_argument("resolution cell count must be non-negative");
  if (!(phase_safety > 0.0)) throw std::invalid_argument("phase safety bound must be positive");
  if (snapshot_stride < 0) throw std::invalid_argument("snapshot stride must be non-negative");
  double previous = -std::numeric_limits<double>::infinity();
  for (const DtSegment& seg : dt_schedule) {
    if (!(seg.dt > 0.0)) throw std::invalid_argument("dt schedule entries must be positive");
    if (!(seg.t_from > previous)) throw std::invalid_argument("dt schedule must have increasing start times");
    previous = seg.t_from;
  }
}

double IntegratorConfig::dt_at(double t) const {
  double step = dt;
  for (const DtSegment& seg : dt_schedule) {
    if (t + 1e-12 * std::max(1.0, std::abs(t)) >= seg.t_from) step = seg.dt;
  }
  return step;
}

VirialValues virial(const RadialModel& model, const ComplexRadialField& u, double boundary_tolerance) {
  model.plan().require_compatible(u);
  const RadialGrid& g = model.grid();
  const ComplexRadialField du = model.plan().radial_derivative(u);
  const RealVector& r = g.nodes();
  const RealVector& vol = g.volume_weights();
  double gamma = 0.0;
  double gp = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    const Complex uj = u.values()(j);
    gamma += vol(j) * r(j) * r(j) * std::norm(uj);
    gp += vol(j) * r(j) * (std::conj(uj) * du.values()(j)).imag();
  }
  VirialValues out;
  out.gamma = model.omega() * gamma;
  out.gamma_prime = -4.0 * model.omega() * gp;
  const double total = mass(model, u);
  if (total > 0.0) out.boundary_fraction = std::max(0.0, 1.0 - partial_mass(model, u, 0.9 * g.r_max()) / total);
  out.boundary_flag = out.boundary_fraction > boundary_tolerance;
  return out;
}

double concentration(const RadialModel& model, const ComplexRadialField& u, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("concentration window must be positive");
  return partial_mass(model, u, lambda);
}

Integrator::Integrator(const RadialModel& model, IntegratorConfig config) : model_(&model), config_(std::move(config)) {
  config_.validate();
}

void Integrator::reset() {
  have_phi_ = false;
  have_half_ = false;
  last_dt_ = 0.0;
  guarded_ = 0;
}

namespace {

void rotate(ComplexRadialField& u, const RealVector& phi, double angle) {
  auto& v = u.values();
  for (Eigen::Index j = 0; j + 1 < v.size(); ++j) v(j) *= std::polar(1.0, -angle * phi(j));
}

}  // namespace

void Integrator::strang(ComplexRadialField& u, double dt) {
  const TransformPlan& plan = model_->plan();
  const ComplexVector propagator = (Complex(0.0, dt) * plan.eigenvalues().cast<Complex>()).array().exp().matrix();
  if (!config_.nonlinear) {
    u = plan.apply_multiplier(u, propagator);
    return;
  }
  if (!have_phi_) phi_ = model_->kernel().potential(u);
  rotate(u, phi_, 0.5 * dt);
  u = plan.apply_multiplier(u, propagator);
  phi_ = model_->kernel().potential(u);
  have_phi_ = true;
  rotate(u, phi_, 0.5 * dt);
}

void Integrator::relaxation(ComplexRadialField& u, double dt) {
  const TransformPlan& plan = model_->plan();
  const Eigen::Index m = u.size() - 1;
  RealVector phi_mid = RealVector::Zero(u.size());
  if (config_.nonlinear) {
    if (!have_phi_) phi_ = model_->kernel().potential(u);
    have_phi_ = false;
    if (!have_half_) {
      phi_mid = phi_;
    } else {
      phi_mid = phi_ + (dt / last_dt_) * (phi_ - phi_half_);
    }
    phi_half_ = phi_mid;
    have_half_ = true;
  }
  last_dt_ = dt;
  // (L_a + 2i/dt) w = (4i/dt) u + Phi w, with w = u_next + u
  const Complex shift(0.0, 2.0 / dt);
  const ComplexVector resolvent = (plan.eigenvalues().cast<Complex>().array() + shift).inverse().matrix();
  ComplexRadialField source = u;
  source *= Complex(0.0, 4.0 / dt);
  ComplexRadialField w = u;
  w *= 2.0;
  if (!config_.nonlinear) {
    w = plan.apply_multiplier(source, resolvent);
  } else {
    bool converged = false;
    for (int it = 0; it < config_.max_picard_iterations; ++it) {
      ComplexRadialField rhs = source;
      rhs.values().head(m) += w.values().head(m).cwiseProduct(phi_mid.head(m).cast<Complex>());
      ComplexRadialField next = plan.apply_multiplier(rhs, resolvent);
      const double change = (next.values() - w.values()).norm();
      const double scale = next.values().norm();
      w = std::move(next);
      if (change <= config_.picard_tolerance * std::max(scale, std::numeric_limits<double>::min())) {
        converged = true;
        break;
      }
    }
    if (!converged) throw Error("relaxation step did not converge; reduce dt");
  }
  w -= u;
  u = std::move(w);
}

void Integrator::single_step(ComplexRadialField& u, double dt) {
  if (config_.scheme == Scheme::StrangSplit) {
    strang(u, dt);
  } else {
    relaxation(u, dt);
  }
}

ComplexRadialField Integrator::step(const ComplexRadialField& u, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  model_->plan().require_compatible(u);
  ComplexRadialField out = u;
  int parts = 1;
  if (config_.nonlinear) {
    if (!have_phi_) {
      phi_ = model_->kernel().potential(out);
      have_phi_ = true;
    }
    const double peak = phi_.cwiseAbs().maxCoeff();
    if (std::isfinite(peak)) parts = std::max(1, static_cast<int>(std::ceil(dt * peak / config_.phase_safety)));
  }
  if (parts > 1) ++guarded_;
  for (int k = 0; k < parts; ++k) single_step(out, dt / parts);
  return out;
}

Sample Integrator::sample(double t, const ComplexRadialField& u) const {
  Sample s;
  s.t = t;
  s.q = functionals(*model_, u);
  s.virial = virial(*model_, u, config_.boundary_tolerance);
  for (const WindowRule& w : config_.windows) {
    const double lambda = w.radius(t);
    s.concentration.push_back(lambda > 0.0 ? concentration(*model_, u, lambda) : 0.0);
  }
  return s;
}

Trajectory Integrator::evolve(const ComplexRadialField& u0) {
  model_->plan().require_compatible(u0);
  u0.require_finite("initial data");
  reset();
  Trajectory traj;
  traj.windows = config_.windows;
  ComplexRadialField u = u0;
  double t = config_.t_start;
  traj.samples.push_back(sample(t, u));
  int outputs = 0;
  if (config_.snapshot_stride > 0) traj.snapshots.emplace_back(t, u);
  const double h0 = traj.samples.front().q.H;
  const double t_tol = 1e-12 * std::max(1.0, std::abs(config_.t_end));

  long k = 0;
  while (t < config_.t_end - t_tol) {
    double dt = config_.dt_at(t);
    if (t + dt > config_.t_end - 1e-9 * dt) dt = config_.t_end - t;
    ComplexRadialField next = step(u, dt);
    ++k;
    if (!next.all_finite()) {
      traj.steps = k;
      traj.guarded_steps = guarded_;
      traj.final_state = u;
      const double h_last = traj.samples.back().q.H;
      if (h_last > 10.0 * h0) {
        traj.stop = StopReason::NonFinite;
        return traj;
      }
      std::ostringstream msg;
      msg << "non-finite state at t = " << t + dt << " without blow-up growth of H (H = " << h_last << ", H(0) = " << h0
          << ")";
      throw StabilityError(msg.str(), std::move(traj));
    }
    u = std::move(next);
    t += dt;
    const bool at_end = !(t < config_.t_end - t_tol);
    if (k % config_.output_stride != 0 && !at_end) continue;
    Sample s = sample(t, u);
    ++outputs;
    if (config_.snapshot_stride > 0 && outputs % config_.snapshot_stride == 0) traj.snapshots.emplace_back(t, u);
    const double H = s.q.H;
    const bool finite = std::isfinite(H) && std::isfinite(s.q.E);
    traj.samples.push_back(std::move(s));
    if (!finite) {
      traj.stop = StopReason::NonFinite;
      break;
    }
    if (H > config_.h_threshold) {
      traj.stop = StopReason::HThreshold;
      break;
    }
    if (config_.resolution_cells > 0.0 && H > 0.0) {
      const double scale = 1.0 / std::sqrt(H);
      if (scale < config_.resolution_cells * model_->grid().cell_size(scale)) {
        traj.stop = StopReason::ResolutionLimit;
        break;
      }
    }
  }
  traj.steps = k;
  traj.guarded_steps = guarded_;
  traj.final_state = u;
  return traj;
}

ComplexRadialField step(const RadialModel& model, const ComplexRadialField& u, double dt,
                        const IntegratorConfig& config) {
  Integrator integrator(model, config);
  return integrator.step(u, dt);
}

Trajectory evolve(const RadialModel& model, const ComplexRadialField& u0, const IntegratorConfig& config) {
  Integrator integrator(model, config);
  return integrator.evolve(u0);
}

RadialProfile bump_profile(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
  RadialProfile p;
  p.value = [radius](double r) {
    const double x = r / radius;
    if (x >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
  };
  p.derivative = [radius](double r) {
    const double x = r / radius;
    if (x >= 1.0) return 0.0;
    const double q = 1.0 - x * x;
    return -std::exp(1.0 - 1.0 / q) * 2.0 * x / (q * q * radius);
  };
  return p;
}

RotatedEnergyReport rotated_energy_check(const RadialModel& model, const ComplexRadialField& u,
                                         const RadialProfile& theta, double s, std::optional<double> M_gs,
                                         double mass_tolerance, double discriminant_tolerance) {
  model.plan().require_compatible(u);
  u.require_finite("rotated_energy_check");
  const RadialGrid& g = model.grid();
  const RealVector& r = g.nodes();
  const RealVector& vol = g.volume_weights();
  const ComplexRadialField du = model.plan().radial_derivative(u);

  ComplexRadialField rotated = u;
  double lin = 0.0;
  double curv = 0.0;
  for (int j = 0; j < g.interior_size(); ++j) {
    const double th = theta.value(r(j));
    const double dth = theta.derivative(r(j));
    rotated.values()(j) *= std::polar(1.0, s * th);
    lin += vol(j) * dth * (std::conj(u.values()(j)) * du.values()(j)).imag();
    curv += vol(j) * dth * dth * std::norm(u.values()(j));
  }
  RotatedEnergyReport rep;
  rep.s = s;
  rep.energy = functionals(model, u).E;
  rep.direct = functionals(model, rotated).E;
  rep.linear = model.omega() * lin;
  rep.curvature = 0.5 * model.omega() * curv;
  rep.quadratic = rep.energy + s * rep.linear + s * s * rep.curvature;
  rep.mismatch = std::abs(rep.direct - rep.quadratic) / std::max(1.0, std::abs(rep.energy));
  rep.discriminant = rep.linear * rep.linear - 4.0 * rep.energy * rep.curvature;
  if (M_gs) {
    const double M = mass(model, u);
    rep.at_threshold = std::abs(M - *M_gs) <= mass_tolerance * *M_gs;
    if (rep.at_threshold) {
      const double scale = rep.linear * rep.linear + 4.0 * std::abs(rep.energy) * rep.curvature;
      rep.discriminant_ok = rep.discriminant <= discriminant_tolerance * scale;
    }
  }
  return rep;
}

ComplexRadialField pseudo_conformal_family(const RadialModel& model, const ComplexRadialField& Q, double t_star,
                                           double mu, double t, double tail_tolerance) {
  if (!(t < t_star)) throw std::invalid_argument("pseudo-conformal family requires t < T*");
  if (!(mu > 0.0)) throw std::invalid_argument("pseudo-conformal scale must be positive");
  model.plan().require_compatible(Q);
  const double tau = t_star - t;
  const double lambda = mu / tau;
  const int d = model.params().d;
  ComplexRadialField u = rescale(model, Q, std::pow(lambda, 0.5 * d), lambda, tail_tolerance);
  const RealVector& r = model.grid().nodes();
  const double internal = -mu * mu / tau;
  for (int j = 0; j < model.grid().interior_size(); ++j) {
    u.values()(j) *= std::polar(1.0, internal + r(j) * r(j) / (4.0 * tau));
  }
  return u;
}

}  // namespace hartree
