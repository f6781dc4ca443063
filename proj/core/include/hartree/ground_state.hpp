#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hartree/functionals.hpp"

namespace hartree {

enum class InitialGuess { Gaussian, Sech };

struct GroundStateOptions {
  InitialGuess guess = InitialGuess::Gaussian;
  /// Used instead of `guess` when set; must be non-negative and non-zero.
  std::optional<ComplexRadialField> custom_guess;
  /// Width of the Gaussian or sech guess.
  double guess_width = 1.0;
  double initial_step = 1e-2;
  double max_step = 1.0;
  double step_growth = 1.5;
  double min_step = 1e-10;
  int max_iterations = 4000;
  /// Iterations excluded from the monotonicity check of the J trace.
  int burn_in = 0;
  /// Gradient-flow phase stops once the residual falls below this value.
  double flow_tolerance = 1e-9;
  /// Final Euler-Lagrange residual target.
  double tolerance = 1e-9;
  /// Run the Petviashvili fixed-point polish after the flow.
  bool polish = true;
  int max_polish_iterations = 200;
  /// The flow also stops when its residual has not dropped below
  /// stagnation_factor times its best value for stagnation_window iterations.
  int stagnation_window = 60;
  double stagnation_factor = 0.9;
  /// Allowed escaped mass when the flow rescales iterates.
  double tail_tolerance = 1e-8;
};

enum class SolverPhase { Flow, Descent, Polish };

struct TraceEntry {
  int iteration = 0;
  double J = 0.0;
  double step = 0.0;
  double residual = 0.0;
  SolverPhase phase = SolverPhase::Flow;
};

struct GroundStateResult {
  /// Non-negative real ground state with M(Q) = H(Q) = L_V(Q) = M_gs.
  ComplexRadialField Q;
  double M_gs = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::vector<TraceEntry> trace;
  Quantities quantities;
};

/// Raised when the solver does not reach its tolerance; carries the trace.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<TraceEntry> trace)
      : Error(what), trace_(std::move(trace)) {}
  [[nodiscard]] const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  std::vector<TraceEntry> trace_;
};

/// Minimizes J = M H / L_V over non-negative radial fields.
///
/// Each flow step moves toward beta (L_a + alpha)^{-1} (Phi[u] u), where
/// alpha = H/M and beta = H/L_V make the fixed points exactly the critical
/// points of J. Negative samples are projected to zero and the iterate is
/// rescaled to M = H = 1 by dilation and amplitude. The step starts at
/// initial_step, is halved whenever J would increase (the step is then
/// rejected) and grows by step_growth after accepted steps, so the recorded J
/// values never increase. If the step underflows, a projected gradient descent
/// on log J with backtracking takes over. The result is polished with a
/// Petviashvili iteration on (L_a + 1) Q = Phi[Q] Q.
GroundStateResult solve_ground_state(const RadialModel& model, const GroundStateOptions& options = {});
/// As above, with a check that `params` are the model's parameters.
GroundStateResult solve_ground_state(const ModelParams& params, const RadialModel& model,
                                     const GroundStateOptions& options = {});

/// Weighted discrete L2 norm of L_a Q + Q - Phi[Q] Q divided by that of Q.
double el_residual(const RadialModel& model, const ComplexRadialField& Q);

/// Pohozaev-type identities of a ground state, each relative to M_gs.
struct PohozaevReport {
  double h_minus_lv = 0.0;  // |H - L_V| / M_gs
  double m_minus_lv = 0.0;  // |M - L_V| / M_gs
  double m_minus_h = 0.0;   // |M - H| / M_gs
};
PohozaevReport pohozaev(const Quantities& q, double M_gs);

struct GnAuditEntry {
  double J = 0.0;
  double ratio = 0.0;  // J / M_gs
  bool violation = false;
};

struct GnAuditReport {
  std::vector<GnAuditEntry> entries;
  int violations = 0;
  double min_ratio = 0.0;
};

/// Evaluates J for each field and flags J < M_gs (1 - tolerance).
/// Fields with L_V = 0 are reported with J = +inf and never flagged.
GnAuditReport gn_audit(const RadialModel& model, std::span<const ComplexRadialField> fields, double M_gs,
                       double tolerance = 1e-6);

/// Text serialization: '#'-prefixed `key = value` header lines (d, a, n,
/// r_max, stretch, origin_exponent, M_gs, residual) followed by rows "r_j Q_j".
void write_ground_state(std::ostream& out, const RadialModel& model, const GroundStateResult& result);

struct GroundStateFile {
  ModelParams params;
  int n = 0;
  double r_max = 0.0;
  double stretch = 0.0;
  double origin_exponent = 0.0;
  double M_gs = 0.0;
  double residual = 0.0;
  /// Samples on the grid described by the header.
  ComplexRadialField Q;
};

/// Parses the text format and rebuilds the grid from the header; throws
/// std::runtime_error on malformed input or when rows disagree with the grid.
GroundStateFile read_ground_state(std::istream& in);

}  // namespace hartree
