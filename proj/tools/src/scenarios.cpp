#include "hartree_cli/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "hartree/blowup.hpp"
#include "hartree/profiles.hpp"
#include "hartree/trajectory_io.hpp"
#include "hartree_cli/checks.hpp"

namespace hartree::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Gates shared by the scenario checks.
constexpr double kIdentityTolerance = 1e-6;
constexpr double kMassDriftTolerance = 1e-10;
constexpr double kEnergyDriftTolerance = 1e-6;
constexpr double kVirialTolerance = 1e-2;
constexpr double kGlobalBoundSlack = 1e-3;
constexpr double kExponentTolerance = 0.1;
constexpr double kBlowupTimeTolerance = 0.02;
constexpr double kGammaLawTolerance = 0.02;
constexpr double kConcentrationFraction = 0.95;
constexpr double kResolvedCells = 4.0;

struct Context {
  const RunConfig& cfg;
  fs::path dir;
  std::ostream& log;
  json results = json::object();
  json checks = json::array();
  json artifacts = json::array();

  void check(const std::string& name, bool pass, double value, double bound) {
    json c;
    c["name"] = name;
    c["pass"] = pass;
    c["value"] = value;
    c["bound"] = bound;
    checks.push_back(c);
    log << "  " << (pass ? "ok   " : "FAIL ") << name << ": " << value << " (bound " << bound << ")\n";
  }

  std::ofstream open(const std::string& name) {
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    artifacts.push_back(name);
    return out;
  }
};

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json quantities_json(const Quantities& q) {
  json j;
  j["M"] = q.M;
  j["H"] = q.H;
  j["E"] = q.E;
  j["L_V"] = q.LV;
  j["J"] = q.J ? json(*q.J) : json(nullptr);
  return j;
}

std::string phase_name(SolverPhase p) {
  switch (p) {
    case SolverPhase::Flow:
      return "flow";
    case SolverPhase::Descent:
      return "descent";
    case SolverPhase::Polish:
      return "polish";
  }
  return "unknown";
}

bool needs_ground_state(const RunConfig& cfg) {
  if (cfg.scenario != Scenario::Evolve) return true;
  const std::string& p = cfg.initial.profile;
  return p == "ground-state" || p == "pseudo-conformal" || cfg.initial.mass_fraction > 0.0 ||
         cfg.a <= 0.0;
}

GroundStateResult solve(Context& ctx, const RadialModel& model) {
  Stopwatch clock;
  GroundStateResult gs = solve_ground_state(model, ctx.cfg.ground_state);
  ctx.log << "ground state: M_gs = " << std::setprecision(15) << gs.M_gs << ", residual " << gs.residual << ", "
          << gs.iterations << " iterations, " << std::setprecision(3) << clock.seconds() << " s\n"
          << std::setprecision(6);
  ctx.results["M_gs"] = gs.M_gs;
  return gs;
}

RunMetadata metadata(const RunConfig& cfg, const IntegratorConfig& ic) {
  RunMetadata meta;
  meta.d = cfg.d;
  meta.a = cfg.a;
  meta.n = cfg.n;
  meta.r_max = cfg.r_max;
  meta.stretch = cfg.stretch;
  meta.dt = ic.dt;
  meta.scheme = ic.scheme;
  meta.config_hash = config_hash(cfg);
  return meta;
}

void write_trajectory(Context& ctx, const Trajectory& tr, const RunMetadata& meta) {
  {
    std::ofstream csv = ctx.open("trajectory.csv");
    write_trajectory_csv(csv, tr);
  }
  std::ofstream side = ctx.open("trajectory.json");
  write_trajectory_sidecar(side, tr, meta);
}

void write_snapshots(Context& ctx, const Trajectory& tr) {
  if (tr.snapshots.empty()) return;
  std::ofstream out = ctx.open("snapshots.csv");
  out << "t,r,re,im\n" << std::setprecision(17);
  for (const auto& [t, u] : tr.snapshots) {
    const RealVector& r = u.grid().nodes();
    for (Eigen::Index j = 0; j < r.size(); ++j) {
      out << t << ',' << r(j) << ',' << u.values()(j).real() << ',' << u.values()(j).imag() << '\n';
    }
  }
}

// Runs the integrator, writing the partial trajectory before re-raising a stability failure.
Trajectory integrate(Context& ctx, const RadialModel& model, const ComplexRadialField& u0, const IntegratorConfig& ic,
                     RunMetadata& meta) {
  Stopwatch clock;
  try {
    Trajectory tr = evolve(model, u0, ic);
    ctx.log << "evolution: " << tr.steps << " steps, " << tr.samples.size() << " samples, stop "
            << to_string(tr.stop) << ", " << std::setprecision(3) << clock.seconds() << " s\n"
            << std::setprecision(6);
    ctx.results["stop_reason"] = to_string(tr.stop);
    ctx.results["steps"] = tr.steps;
    ctx.results["final_time"] = tr.samples.back().t;
    return tr;
  } catch (const StabilityError& e) {
    write_trajectory(ctx, e.partial(), meta);
    throw;
  }
}

bool is_blowup_stop(StopReason s) {
  return s == StopReason::HThreshold || s == StopReason::ResolutionLimit || s == StopReason::NonFinite;
}

double resolution_cells(const RunConfig& cfg) {
  return cfg.integrator.resolution_cells > 0.0 ? cfg.integrator.resolution_cells : kResolvedCells;
}

// ---------------------------------------------------------------------------

void run_ground_state(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const RadialModel model = build_model(cfg);
  const GroundStateResult gs = solve(ctx, model);
  {
    std::ofstream out = ctx.open("ground_state.txt");
    write_ground_state(out, model, gs);
  }
  {
    std::ofstream out = ctx.open("ground_state_trace.csv");
    out << "iteration,J,step,residual,phase\n" << std::setprecision(17);
    for (const TraceEntry& e : gs.trace) {
      out << e.iteration << ',' << e.J << ',' << e.step << ',' << e.residual << ',' << phase_name(e.phase) << '\n';
    }
  }
  const PohozaevReport p = pohozaev(gs.quantities, gs.M_gs);
  ctx.results["residual"] = gs.residual;
  ctx.results["iterations"] = gs.iterations;
  ctx.results["quantities"] = quantities_json(gs.quantities);
  ctx.results["pohozaev"] = {{"m_minus_h", p.m_minus_h}, {"m_minus_lv", p.m_minus_lv}, {"h_minus_lv", p.h_minus_lv}};

  bool monotone = true;
  double previous = std::numeric_limits<double>::infinity();
  for (const TraceEntry& e : gs.trace) {
    if (e.phase == SolverPhase::Polish) continue;
    if (e.J > previous * (1.0 + 1e-12)) monotone = false;
    previous = e.J;
  }
  ctx.check("el_residual", gs.residual < kIdentityTolerance, gs.residual, kIdentityTolerance);
  ctx.check("pohozaev_m_minus_h", p.m_minus_h < kIdentityTolerance, p.m_minus_h, kIdentityTolerance);
  ctx.check("pohozaev_m_minus_lv", p.m_minus_lv < kIdentityTolerance, p.m_minus_lv, kIdentityTolerance);
  ctx.check("pohozaev_h_minus_lv", p.h_minus_lv < kIdentityTolerance, p.h_minus_lv, kIdentityTolerance);
  ctx.check("j_trace_monotone", monotone, monotone ? 1.0 : 0.0, 1.0);
}

void run_evolve(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const RadialModel model = build_model(cfg);
  std::optional<GroundStateResult> gs;
  if (needs_ground_state(cfg)) gs = solve(ctx, model);
  const ComplexRadialField u0 = make_initial(model, cfg, gs);
  const IntegratorConfig ic = resolve_integrator(cfg, model, u0);
  RunMetadata meta = metadata(cfg, ic);
  const Trajectory tr = integrate(ctx, model, u0, ic, meta);
  write_trajectory(ctx, tr, meta);
  write_snapshots(ctx, tr);

  const Quantities& q0 = tr.samples.front().q;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
  for (const Sample& s : tr.samples) {
    mass_drift = std::max(mass_drift, std::abs(s.q.M - q0.M) / q0.M);
    energy_drift = std::max(energy_drift, std::abs(s.q.E - q0.E) / std::max(std::abs(q0.E), 1e-300));
  }
  const long flags = std::count_if(tr.samples.begin(), tr.samples.end(),
                                   [](const Sample& s) { return s.virial.boundary_flag; });
  ctx.results["initial"] = quantities_json(q0);
  ctx.results["mass_drift"] = mass_drift;
  ctx.results["energy_drift"] = energy_drift;
  ctx.results["boundary_flags"] = flags;

  ctx.check("mass_drift", mass_drift < kMassDriftTolerance, mass_drift, kMassDriftTolerance);
  if (flags > 0) ctx.log << "  note: " << flags << " samples carry mass near r_max; Gamma is affected there\n";
  if (tr.stop == StopReason::TEnd) {
    ctx.check("energy_drift", energy_drift < kEnergyDriftTolerance, energy_drift, kEnergyDriftTolerance);
    if (tr.samples.size() >= 3) {
      const double dev = virial_deviation(tr, q0.E);
      ctx.results["virial_deviation"] = dev;
      ctx.check("virial_identity", dev < kVirialTolerance, dev, kVirialTolerance);
    }
  }
  if (gs && q0.M < gs->M_gs) {
    // H (1 - M/M_gs) <= E holds along the flow below the threshold mass
    const double factor = 1.0 - q0.M / gs->M_gs;
    double worst = -std::numeric_limits<double>::infinity();
    for (const Sample& s : tr.samples) worst = std::max(worst, s.q.H * factor / q0.E);
    ctx.results["global_bound_ratio"] = worst;
    ctx.check("global_bound", worst <= 1.0 + kGlobalBoundSlack, worst, 1.0 + kGlobalBoundSlack);
  }
}

struct BlowupRun {
  std::optional<GroundStateResult> gs;
  Trajectory trajectory;
  double E0 = 0.0;
  double t_star = 0.0;  // constructed blow-up time, or the fitted one
  std::optional<BlowupFit> fit;
};

// Shared by blowup-demo and concentration: evolve, fit, and check the blow-up law.
BlowupRun blowup_common(Context& ctx, const RadialModel& model, bool with_windows) {
  const RunConfig& cfg = ctx.cfg;
  BlowupRun run;
  run.gs = solve(ctx, model);
  const ComplexRadialField u0 = make_initial(model, cfg, run.gs);
  IntegratorConfig ic = resolve_integrator(cfg, model, u0);
  if (with_windows && ic.windows.empty()) ic.windows.push_back(WindowRule::sqrt_to_blowup(cfg.initial.t_star));
  RunMetadata meta = metadata(cfg, ic);
  run.trajectory = integrate(ctx, model, u0, ic, meta);
  const Trajectory& tr = run.trajectory;
  run.E0 = tr.samples.front().q.E;
  ctx.results["initial"] = quantities_json(tr.samples.front().q);

  const bool constructed = cfg.initial.profile == "pseudo-conformal";
  ctx.check("blowup_stop", is_blowup_stop(tr.stop), is_blowup_stop(tr.stop) ? 1.0 : 0.0, 1.0);
  try {
    run.fit = fit_blowup(tr);
    const BlowupFit& f = *run.fit;
    ctx.results["fit"] = {{"t_star", f.t_star},
                          {"exponent", f.exponent},
                          {"log_c", f.log_c},
                          {"log_rms", f.log_rms},
                          {"decades", f.decades},
                          {"samples", f.samples},
                          {"gamma_coefficient", f.gamma_coefficient},
                          {"gamma_rms", f.gamma_rms},
                          {"eight_E0", 8.0 * run.E0}};
    meta.extra["fit_t_star"] = f.t_star;
    meta.extra["fit_exponent"] = f.exponent;
    meta.extra["fit_decades"] = f.decades;
    meta.extra["gamma_coefficient"] = f.gamma_coefficient;
  } catch (const FitRejected& e) {
    ctx.results["fit_error"] = e.what();
    ctx.log << "fit rejected: " << e.what() << '\n';
  }
  write_trajectory(ctx, tr, meta);
  write_snapshots(ctx, tr);

  run.t_star = constructed ? cfg.initial.t_star : (run.fit ? run.fit->t_star : std::nan(""));
  if (run.fit) {
    const BlowupFit& f = *run.fit;
    ctx.check("exponent_minus_2", std::abs(f.exponent - 2.0) <= kExponentTolerance, std::abs(f.exponent - 2.0),
              kExponentTolerance);
    ctx.check("decades", f.decades >= cfg.blowup_min_decades, f.decades, cfg.blowup_min_decades);
    if (constructed) {
      const double err = std::abs(f.t_star - cfg.initial.t_star) / std::abs(cfg.initial.t_star);
      ctx.check("t_star", err <= kBlowupTimeTolerance, err, kBlowupTimeTolerance);
    }
  } else {
    ctx.check("fit", false, 0.0, 1.0);
  }

  // Gamma(t) = 8 E(u0) (T* - t)^2 on the samples whose focusing scale is resolved
  if (std::isfinite(run.t_star)) {
    const double cells = resolution_cells(cfg);
    double worst = 0.0;
    int used = 0;
    for (const Sample& s : tr.samples) {
      const double tau = run.t_star - s.t;
      if (!(tau > 0.0) || !resolved(model, s.q.H, cells)) continue;
      worst = std::max(worst, std::abs(s.virial.gamma / (8.0 * run.E0 * tau * tau) - 1.0));
      ++used;
    }
    ctx.results["gamma_law_deviation"] = worst;
    ctx.results["gamma_law_samples"] = used;
    ctx.check("gamma_law", used > 0 && worst <= kGammaLawTolerance, worst, kGammaLawTolerance);
  }
  return run;
}

void run_blowup(Context& ctx) {
  const RadialModel model = build_model(ctx.cfg);
  const BlowupRun run = blowup_common(ctx, model, false);
  if (run.fit) {
    std::ofstream out = ctx.open("fit.json");
    out << ctx.results["fit"].dump(2) << '\n';
  }
}

void run_concentration(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const RadialModel model = build_model(cfg);
  const BlowupRun run = blowup_common(ctx, model, true);
  const Trajectory& tr = run.trajectory;
  const double M_gs = run.gs->M_gs;
  const double cells = resolution_cells(cfg);

  {
    std::ofstream out = ctx.open("concentration.csv");
    out << "t,H";
    for (const WindowRule& w : tr.windows) out << ",lambda:" << w.label() << ',' << w.label() << ",ratio:" << w.label();
    out << ",resolved\n" << std::setprecision(17);
    for (const Sample& s : tr.samples) {
      out << s.t << ',' << s.q.H;
      for (std::size_t k = 0; k < tr.windows.size(); ++k) {
        out << ',' << tr.windows[k].radius(s.t) << ',' << s.concentration[k] << ',' << s.concentration[k] / M_gs;
      }
      out << ',' << (resolved(model, s.q.H, cells) ? 1 : 0) << '\n';
    }
  }

  const Sample* last = nullptr;
  for (const Sample& s : tr.samples) {
    if (resolved(model, s.q.H, cells)) last = &s;
  }
  if (last == nullptr) {
    ctx.check("concentration", false, 0.0, kConcentrationFraction);
    return;
  }
  json windows = json::array();
  for (std::size_t k = 0; k < tr.windows.size(); ++k) {
    const double ratio = last->concentration[k] / M_gs;
    windows.push_back({{"window", tr.windows[k].label()}, {"t", last->t}, {"ratio", ratio}});
    if (tr.windows[k].kind == WindowRule::Kind::SqrtToBlowup) {
      ctx.check("concentration " + tr.windows[k].label(), ratio >= kConcentrationFraction, ratio,
                kConcentrationFraction);
    }
  }
  ctx.results["concentration"] = windows;
}

void run_verify(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const RadialModel model = build_model(cfg);
  const GroundStateResult gs = solve(ctx, model);
  const std::vector<ComplexRadialField> fields = seeded_fields(model, cfg.verify.fields, cfg.seed);

  const GnAuditReport gn = gn_audit(model, fields, gs.M_gs, cfg.verify.gn_tolerance);
  const HardyReport hardy = hardy_suite(model, fields);
  const RearrangementReport rearr = rearrangement_suite(model, fields);
  const HlsReport hls = hls_suite(model, fields);
  const RotationReport rot =
      rotation_suite(model, fields, gs.M_gs, cfg.verify.theta_radius, cfg.verify.rotation_s);

  {
    std::ofstream out = ctx.open("verify_fields.csv");
    out << "index,M,H,L_V,J_over_Mgs,hardy_ratio\n" << std::setprecision(17);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const Quantities q = functionals(model, fields[i]);
      out << i << ',' << q.M << ',' << q.H << ',' << q.LV << ',' << gn.entries[i].ratio << ','
          << hardy_ratio(model, fields[i]) << '\n';
    }
  }
  ctx.results["fields"] = fields.size();
  ctx.results["gn"] = {{"violations", gn.violations}, {"min_ratio", gn.min_ratio}};
  ctx.results["hardy"] = {{"violations", hardy.violations}, {"max_ratio", hardy.max_ratio}, {"bound", hardy.bound}};
  ctx.results["rearrangement"] = {{"violations", rearr.violations},
                                  {"max_mass_error", rearr.max_mass_error},
                                  {"max_gradient_ratio", rearr.max_gradient_ratio},
                                  {"min_lv_ratio", rearr.min_lv_ratio}};
  ctx.results["hls"] = {{"violations", hls.violations}, {"max_ratio", hls.max_ratio}};
  ctx.results["rotated_energy"] = {{"checked", rot.checked},
                                   {"violations", rot.violations},
                                   {"max_mismatch", rot.max_mismatch},
                                   {"max_discriminant_ratio", rot.max_discriminant_ratio}};

  ctx.check("gn_violations", gn.violations == 0, gn.violations, 0);
  ctx.check("hardy_violations", hardy.violations == 0, hardy.violations, 0);
  ctx.check("rearrangement_violations", rearr.violations == 0, rearr.violations, 0);
  ctx.check("hls_violations", hls.violations == 0, hls.violations, 0);
  ctx.check("rotated_energy_violations", rot.violations == 0, rot.violations, 0);
}

}  // namespace

RadialModel build_model(const RunConfig& cfg) {
  return RadialModel::build(make_params(cfg.d, cfg.a), cfg.n, cfg.r_max, cfg.stretch, cfg.kernel);
}

ComplexRadialField make_initial(const RadialModel& model, const RunConfig& cfg,
                                const std::optional<GroundStateResult>& gs) {
  const InitialData& in = cfg.initial;
  const double env = in.envelope ? model.params().rho : 0.0;
  auto require_gs = [&]() -> const GroundStateResult& {
    if (!gs) throw std::invalid_argument("initial profile '" + in.profile + "' needs the ground state");
    return *gs;
  };
  std::optional<ComplexRadialField> u;
  if (in.profile == "gaussian") {
    u = profiles::gaussian(model.grid_ptr(), in.width, in.amplitude, env);
  } else if (in.profile == "sech") {
    u = profiles::sech(model.grid_ptr(), in.width, in.amplitude, env);
  } else if (in.profile == "shell") {
    u = profiles::shell(model.grid_ptr(), in.center, in.width, in.amplitude, env);
  } else if (in.profile == "ground-state") {
    u = rescale(model, require_gs().Q, in.mu, in.nu);
  } else if (in.profile == "pseudo-conformal") {
    u = pseudo_conformal_family(model, require_gs().Q, in.t_star, in.scale, in.t0);
    *u *= std::polar(1.0, in.theta);
  } else if (in.profile == "file") {
    std::ifstream file(in.file);
    if (!file) throw std::runtime_error("cannot open initial.file '" + in.file + "'");
    GroundStateFile f = read_ground_state(file);
    if (f.params.d != cfg.d) throw std::invalid_argument("initial.file was written for a different dimension");
    u = model.grid().same_layout(f.Q.grid()) ? ComplexRadialField(model.grid_ptr(), f.Q.values())
                                             : resample(f.Q, model.grid_ptr());
    *u *= in.amplitude;
  } else {
    throw std::invalid_argument("unknown initial profile '" + in.profile + "'");
  }
  if (in.mass_fraction > 0.0) {
    const double m = mass(model, *u);
    if (!(m > 0.0)) throw std::invalid_argument("initial data has zero mass and cannot be rescaled");
    *u *= std::sqrt(in.mass_fraction * require_gs().M_gs / m);
  }
  u->require_finite("initial data");
  return *u;
}

IntegratorConfig resolve_integrator(const RunConfig& cfg, const RadialModel& model, const ComplexRadialField& u0) {
  IntegratorConfig ic = cfg.integrator;
  if (cfg.initial.profile == "pseudo-conformal") ic.t_start = cfg.initial.t0;
  if (cfg.integrator_h_growth > 0.0) {
    ic.h_threshold = std::min(ic.h_threshold, cfg.integrator_h_growth * hamiltonian(model, u0));
  }
  ic.validate();
  return ic;
}

ScenarioReport run_scenario(const RunConfig& cfg, std::ostream& log) {
  Context ctx{cfg, fs::path(cfg.output_dir), log};
  fs::create_directories(ctx.dir);
  {
    std::ofstream out = ctx.open("config.txt");
    out << canonical_text(cfg);
  }
  log << "scenario " << to_string(cfg.scenario) << " -> " << ctx.dir.string() << '\n';

  json error = nullptr;
  try {
    switch (cfg.scenario) {
      case Scenario::GroundState:
        run_ground_state(ctx);
        break;
      case Scenario::Evolve:
        run_evolve(ctx);
        break;
      case Scenario::BlowupDemo:
        run_blowup(ctx);
        break;
      case Scenario::Concentration:
        run_concentration(ctx);
        break;
      case Scenario::VerifySuite:
        run_verify(ctx);
        break;
    }
  } catch (const std::exception& e) {
    std::string type = "error";
    if (dynamic_cast<const ConvergenceError*>(&e)) {
      type = "convergence";
    } else if (dynamic_cast<const StabilityError*>(&e)) {
      type = "stability";
    } else if (dynamic_cast<const GridEscapeError*>(&e)) {
      type = "grid-escape";
    } else if (dynamic_cast<const std::invalid_argument*>(&e)) {
      type = "invalid-argument";
    }
    error = {{"type", type}, {"message", e.what()}, {"scenario", to_string(cfg.scenario)}};
    log << "error (" << type << "): " << e.what() << '\n';
  }

  bool pass = error.is_null() && !ctx.checks.empty();
  for (const auto& c : ctx.checks) pass = pass && c["pass"].get<bool>();

  ScenarioReport report;
  report.pass = pass;
  json& s = report.summary;
  s["scenario"] = to_string(cfg.scenario);
  s["config_hash"] = config_hash(cfg);
  s["config"] = cfg.resolved;
  s["results"] = ctx.results;
  s["checks"] = ctx.checks;
  ctx.artifacts.push_back("summary.json");
  s["artifacts"] = ctx.artifacts;
  s["error"] = error;
  s["pass"] = pass;
  std::ofstream out(ctx.dir / "summary.json");
  out << s.dump(2) << '\n';
  log << (pass ? "PASS" : "FAIL") << '\n';
  return report;
}

}  // namespace hartree::cli
