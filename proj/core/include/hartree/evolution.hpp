#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hartree/functionals.hpp"

namespace hartree {

// Time convention: i u_t = -L_a u + Phi[u] u, so a linear mode with
// eigenvalue k^2 evolves as exp(+i k^2 t), the nonlinear phase as exp(-i Phi t),
// and exp(-i t) Q is the standing wave of a ground state Q.

enum class Scheme { StrangSplit, MidpointRelaxation };
enum class StopReason { TEnd, HThreshold, ResolutionLimit, NonFinite };

std::string to_string(Scheme s);
std::string to_string(StopReason s);
/// Accepts "strang-split" and "midpoint-relaxation".
Scheme parse_scheme(const std::string& s);

/// Piecewise-constant time step: `dt` applies from `t_from` on.
struct DtSegment {
  double t_from = 0.0;
  double dt = 0.0;
};

/// Radius of a concentration window as a function of time.
struct WindowRule {
  enum class Kind { Fixed, SqrtToBlowup };
  Kind kind = Kind::Fixed;
  /// Fixed radius, or the coefficient c of lambda(t) = c sqrt(T* - t).
  double value = 1.0;
  double t_star = 0.0;

  static WindowRule fixed(double radius);
  static WindowRule sqrt_to_blowup(double t_star, double coefficient = 1.0);
  [[nodiscard]] double radius(double t) const;
  /// Column label, e.g. "conc@1" or "conc@1*sqrt(2-t)".
  [[nodiscard]] std::string label() const;
};

struct IntegratorConfig {
  double dt = 1e-3;
  double t_start = 0.0;
  double t_end = 1.0;
  Scheme scheme = Scheme::StrangSplit;
  /// Record diagnostics every `output_stride` steps (and at the final time).
  int output_stride = 1;
  /// Optional schedule overriding dt; segments must have increasing t_from.
  std::vector<DtSegment> dt_schedule;
  /// Stop once H exceeds this value.
  double h_threshold = std::numeric_limits<double>::infinity();
  /// Stop once the focusing scale 1/sqrt(H) is smaller than this many grid
  /// cells at that radius; zero disables the check.
  double resolution_cells = 4.0;
  /// Steps are subdivided so that dt * max|Phi| stays below this bound.
  double phase_safety = 0.5;
  std::vector<WindowRule> windows;
  /// Keep a copy of the field every this many output samples (0: none).
  int snapshot_stride = 0;
  /// Mass fraction beyond 0.9 r_max above which Gamma is flagged.
  double boundary_tolerance = 1e-8;
  /// Fixed-point tolerance and iteration cap of the relaxation scheme.
  double picard_tolerance = 1e-14;
  int max_picard_iterations = 200;
  /// Drop the nonlinearity (linear flow only).
  bool nonlinear = true;

  /// Throws std::invalid_argument on non-positive steps or inconsistent ranges.
  void validate() const;
  [[nodiscard]] double dt_at(double t) const;
};

struct VirialValues {
  /// int |x|^2 |u|^2.
  double gamma = 0.0;
  /// -4 Im int conj(u) (grad u . x).
  double gamma_prime = 0.0;
  /// Fraction of the mass beyond 0.9 r_max.
  double boundary_fraction = 0.0;
  bool boundary_flag = false;
};

VirialValues virial(const RadialModel& model, const ComplexRadialField& u, double boundary_tolerance = 1e-8);

/// (1/2) int_{|x| <= lambda} |u|^2.
double concentration(const RadialModel& model, const ComplexRadialField& u, double lambda);

struct Sample {
  double t = 0.0;
  Quantities q;
  VirialValues virial;
  std::vector<double> concentration;
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<std::pair<double, ComplexRadialField>> snapshots;
  std::vector<WindowRule> windows;
  StopReason stop = StopReason::TEnd;
  /// Field at the last accepted time.
  std::optional<ComplexRadialField> final_state;
  long steps = 0;
  /// Steps split because of the phase bound.
  long guarded_steps = 0;
};

/// A non-finite state appeared while H showed no blow-up growth.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, Trajectory partial) : Error(what), partial_(std::move(partial)) {}
  [[nodiscard]] const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Stateful integrator. Strang splitting reuses the potential of the last
/// half step, which the modulus-preserving phase rotation leaves unchanged,
/// so one potential evaluation is needed per step. The relaxation scheme
/// extrapolates the potential to the half step and solves the implicit
/// midpoint equation for the linear part by a preconditioned fixed point.
class Integrator {
 public:
  Integrator(const RadialModel& model, IntegratorConfig config);

  /// Advances by dt (subdivided when the phase bound requires it).
  ComplexRadialField step(const ComplexRadialField& u, double dt);
  Trajectory evolve(const ComplexRadialField& u0);

  [[nodiscard]] const IntegratorConfig& config() const { return config_; }

 private:
  void single_step(ComplexRadialField& u, double dt);
  void strang(ComplexRadialField& u, double dt);
  void relaxation(ComplexRadialField& u, double dt);
  [[nodiscard]] Sample sample(double t, const ComplexRadialField& u) const;
  void reset();

  const RadialModel* model_;
  IntegratorConfig config_;
  RealVector phi_;       // potential of the current state
  RealVector phi_half_;  // last half-step potential (relaxation)
  double last_dt_ = 0.0;
  bool have_phi_ = false;
  bool have_half_ = false;
  long guarded_ = 0;
};

/// One step of the configured scheme starting from a fresh state.
ComplexRadialField step(const RadialModel& model, const ComplexRadialField& u, double dt,
                        const IntegratorConfig& config = {});
Trajectory evolve(const RadialModel& model, const ComplexRadialField& u0, const IntegratorConfig& config);

/// Radial function together with its derivative.
struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// Smooth bump exp(1 - 1/(1 - (r/radius)^2)) supported in r < radius.
RadialProfile bump_profile(double radius);

struct RotatedEnergyReport {
  double s = 0.0;
  /// E(u e^{i s theta}) from the rotated samples.
  double direct = 0.0;
  /// E(u) + s B + s^2 C.
  double quadratic = 0.0;
  double mismatch = 0.0;  // |direct - quadratic| / max(1, |E(u)|)
  double energy = 0.0;    // E(u)
  /// B = int theta' Im(conj(u) u_r).
  double linear = 0.0;
  /// C = (1/2) int theta'^2 |u|^2.
  double curvature = 0.0;
  /// B^2 - 4 E C; non-positive when E(u e^{i s theta}) >= 0 for all s.
  double discriminant = 0.0;
  /// Set when a threshold mass was given and M(u) matches it.
  bool at_threshold = false;
  bool discriminant_ok = true;
};

/// Evaluates E(u e^{i s theta}) directly and through the quadratic identity.
/// With M_gs given and |M(u) - M_gs| <= mass_tolerance * M_gs, also checks
/// the discriminant B^2 <= 4 E C up to discriminant_tolerance * (B^2 + 4|E|C).
RotatedEnergyReport rotated_energy_check(const RadialModel& model, const ComplexRadialField& u,
                                         const RadialProfile& theta, double s,
                                         std::optional<double> M_gs = std::nullopt, double mass_tolerance = 1e-8,
                                         double discriminant_tolerance = 1e-9);

/// Minimal-mass blow-up solution at time t < T*:
///   lambda^{d/2} exp(-i mu^2 / (T* - t)) exp(i r^2 / (4 (T* - t))) Q(lambda r),
/// with lambda = mu / (T* - t). Its energy is Gamma(Q) / (8 mu^2) and
/// Gamma(t) = 8 E (T* - t)^2.
ComplexRadialField pseudo_conformal_family(const RadialModel& model, const ComplexRadialField& Q, double t_star,
                                           double mu, double t, double tail_tolerance = 1e-10);

}  // namespace hartree
