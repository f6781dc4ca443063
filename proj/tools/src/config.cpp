#include "hartree_cli/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "hartree/model.hpp"

namespace hartree::cli {
namespace {

using Errors = std::vector<std::string>;
// Applies a raw value to the config; returns the normalized text or nullopt on error.
using Apply = std::function<std::optional<std::string>(RunConfig&, const std::string&, Errors&)>;

struct Entry {
  KeyInfo info;
  Apply apply;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::optional<double> to_double(const std::string& key, const std::string& text, Errors& errors) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    errors.push_back(key + ": '" + text + "' is not a finite number");
    return std::nullopt;
  }
  return v;
}

struct Bound {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  bool hi_open = false;
};

Bound positive() { return {0.0, std::numeric_limits<double>::infinity(), true, false}; }
Bound non_negative() { return {0.0, std::numeric_limits<double>::infinity(), false, false}; }
Bound closed(double lo, double hi) { return {lo, hi, false, false}; }
Bound any() { return {}; }

bool check_bound(const std::string& key, double v, const Bound& b, Errors& errors) {
  const bool lo_ok = b.lo_open ? v > b.lo : v >= b.lo;
  const bool hi_ok = b.hi_open ? v < b.hi : v <= b.hi;
  if (lo_ok && hi_ok) return true;
  std::ostringstream msg;
  msg << key << " = " << format_double(v) << " violates ";
  if (!lo_ok) {
    msg << key << (b.lo_open ? " > " : " >= ") << format_double(b.lo);
  } else {
    msg << key << (b.hi_open ? " < " : " <= ") << format_double(b.hi);
  }
  errors.push_back(msg.str());
  return false;
}

Entry real(std::string key, std::string def, std::string desc, Bound bound, std::function<void(RunConfig&, double)> set,
           bool allow_inf = false) {
  Apply apply = [key, bound, set, allow_inf](RunConfig& c, const std::string& text,
                                             Errors& errors) -> std::optional<std::string> {
    if (text == "inf" && !allow_inf) {
      errors.push_back(key + ": 'inf' is not allowed");
      return std::nullopt;
    }
    const auto v = to_double(key, text, errors);
    if (!v || !check_bound(key, *v, bound, errors)) return std::nullopt;
    set(c, *v);
    return format_double(*v);
  };
  return {{key, def, desc}, apply};
}

Entry integer(std::string key, std::string def, std::string desc, long lo, long hi,
              std::function<void(RunConfig&, long)> set) {
  Apply apply = [key, lo, hi, set](RunConfig& c, const std::string& text, Errors& errors) -> std::optional<std::string> {
    long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      errors.push_back(key + ": '" + text + "' is not an integer");
      return std::nullopt;
    }
    if (v < lo || v > hi) {
      errors.push_back(key + " = " + text + " violates " + std::to_string(lo) + " <= " + key + " <= " +
                       std::to_string(hi));
      return std::nullopt;
    }
    set(c, v);
    return std::to_string(v);
  };
  return {{key, def, desc}, apply};
}

Entry unsigned64(std::string key, std::string def, std::string desc, std::function<void(RunConfig&, std::uint64_t)> set) {
  Apply apply = [key, set](RunConfig& c, const std::string& text, Errors& errors) -> std::optional<std::string> {
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      errors.push_back(key + ": '" + text + "' is not a non-negative integer");
      return std::nullopt;
    }
    set(c, v);
    return std::to_string(v);
  };
  return {{key, def, desc}, apply};
}

Entry boolean(std::string key, std::string def, std::string desc, std::function<void(RunConfig&, bool)> set) {
  Apply apply = [key, set](RunConfig& c, const std::string& text, Errors& errors) -> std::optional<std::string> {
    if (text == "true" || text == "1" || text == "yes") {
      set(c, true);
      return "true";
    }
    if (text == "false" || text == "0" || text == "no") {
      set(c, false);
      return "false";
    }
    errors.push_back(key + ": '" + text + "' is not a boolean (true/false)");
    return std::nullopt;
  };
  return {{key, def, desc}, apply};
}

Entry choice(std::string key, std::string def, std::string desc, std::vector<std::string> options,
             std::function<void(RunConfig&, const std::string&)> set) {
  Apply apply = [key, options, set](RunConfig& c, const std::string& text,
                                    Errors& errors) -> std::optional<std::string> {
    if (std::find(options.begin(), options.end(), text) == options.end()) {
      std::string list;
      for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
      errors.push_back(key + ": '" + text + "' is not one of " + list);
      return std::nullopt;
    }
    set(c, text);
    return text;
  };
  return {{key, def, desc}, apply};
}

Entry text(std::string key, std::string def, std::string desc, std::function<void(RunConfig&, const std::string&)> set) {
  Apply apply = [set](RunConfig& c, const std::string& value, Errors&) -> std::optional<std::string> {
    set(c, value);
    return value;
  };
  return {{key, def, desc}, apply};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "t:dt, t:dt, ..." with increasing t.
Entry schedule_entry() {
  Apply apply = [](RunConfig& c, const std::string& value, Errors& errors) -> std::optional<std::string> {
    const std::string key = "integrator.dt_schedule";
    std::vector<DtSegment> segs;
    std::string normalized;
    for (const std::string& item : split_list(value)) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        errors.push_back(key + ": entry '" + item + "' is not of the form t:dt");
        return std::nullopt;
      }
      const auto t = to_double(key, trim(item.substr(0, colon)), errors);
      const auto dt = to_double(key, trim(item.substr(colon + 1)), errors);
      if (!t || !dt) return std::nullopt;
      if (!(*dt > 0.0)) {
        errors.push_back(key + ": step " + format_double(*dt) + " violates dt > 0");
        return std::nullopt;
      }
      if (!segs.empty() && !(*t > segs.back().t_from)) {
        errors.push_back(key + ": start times must increase");
        return std::nullopt;
      }
      segs.push_back({*t, *dt});
      normalized += (normalized.empty() ? "" : ",") + format_double(*t) + ":" + format_double(*dt);
    }
    c.integrator.dt_schedule = segs;
    return normalized;
  };
  return {{"integrator.dt_schedule", "", "piecewise-constant steps 't:dt, t:dt, ...' overriding integrator.dt"},
          apply};
}

// "r" for a fixed radius, "sqrt:c" for c sqrt(T* - t) with T* = initial.t_star.
Entry windows_entry() {
  Apply apply = [](RunConfig& c, const std::string& value, Errors& errors) -> std::optional<std::string> {
    const std::string key = "concentration.windows";
    std::string normalized;
    c.integrator.windows.clear();
    for (const std::string& item : split_list(value)) {
      if (item.rfind("sqrt:", 0) == 0) {
        const auto coeff = to_double(key, trim(item.substr(5)), errors);
        if (!coeff || !check_bound(key, *coeff, positive(), errors)) return std::nullopt;
        // t_star is filled in once initial.t_star is known
        c.integrator.windows.push_back({WindowRule::Kind::SqrtToBlowup, *coeff, 0.0});
        normalized += (normalized.empty() ? "" : ",") + std::string("sqrt:") + format_double(*coeff);
      } else {
        const auto r = to_double(key, item, errors);
        if (!r || !check_bound(key, *r, positive(), errors)) return std::nullopt;
        c.integrator.windows.push_back(WindowRule::fixed(*r));
        normalized += (normalized.empty() ? "" : ",") + format_double(*r);
      }
    }
    return normalized;
  };
  return {{"concentration.windows", "", "windows: radius 'r' or 'sqrt:c' for c*sqrt(T*-t), comma separated"}, apply};
}

Entry rotation_entry() {
  Apply apply = [](RunConfig& c, const std::string& value, Errors& errors) -> std::optional<std::string> {
    const std::string key = "verify.rotation_s";
    std::vector<double> vals;
    std::string normalized;
    for (const std::string& item : split_list(value)) {
      const auto v = to_double(key, item, errors);
      if (!v) return std::nullopt;
      vals.push_back(*v);
      normalized += (normalized.empty() ? "" : ",") + format_double(*v);
    }
    if (vals.empty()) {
      errors.push_back(key + ": at least one rotation value is required");
      return std::nullopt;
    }
    c.verify.rotation_s = vals;
    return normalized;
  };
  return {{"verify.rotation_s", "-1,-0.3,0.4,1.5", "rotation strengths s of the rotated-energy check"}, apply};
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    e.push_back(choice("scenario", "ground-state", "ground-state | evolve | blowup-demo | verify-suite | concentration",
                       {"ground-state", "evolve", "blowup-demo", "verify-suite", "concentration"},
                       [](RunConfig& c, const std::string& v) {
                         static const std::map<std::string, Scenario> m{{"ground-state", Scenario::GroundState},
                                                                        {"evolve", Scenario::Evolve},
                                                                        {"blowup-demo", Scenario::BlowupDemo},
                                                                        {"verify-suite", Scenario::VerifySuite},
                                                                        {"concentration", Scenario::Concentration}};
                         c.scenario = m.at(v);
                       }));
    e.push_back(integer("model.d", "3", "spatial dimension", 3, 16, [](RunConfig& c, long v) { c.d = int(v); }));
    e.push_back(real("model.a", "-0.1", "inverse-square coupling (must exceed -((d-2)/2)^2)", any(),
                     [](RunConfig& c, double v) { c.a = v; }));
    e.push_back(integer("grid.n", "512", "number of radial nodes", 16, 8192, [](RunConfig& c, long v) { c.n = int(v); }));
    e.push_back(real("grid.r_max", "20", "outer radius (Dirichlet)", positive(), [](RunConfig& c, double v) { c.r_max = v; }));
    e.push_back(real("grid.stretch", "3", "origin refinement of the sinh map", closed(0.0, 50.0),
                     [](RunConfig& c, double v) { c.stretch = v; }));
    e.push_back(integer("kernel.panel_points", "10", "Gauss-Legendre points per kernel panel", 2, 64,
                        [](RunConfig& c, long v) { c.kernel.panel_points = int(v); }));
    e.push_back(integer("kernel.grading_levels", "30", "geometric refinement levels at the d=3 diagonal", 0, 200,
                        [](RunConfig& c, long v) { c.kernel.grading_levels = int(v); }));
    e.push_back(real("kernel.grading_ratio", "0.3", "geometric refinement ratio", {0.0, 1.0, true, true},
                     [](RunConfig& c, double v) { c.kernel.grading_ratio = v; }));
    e.push_back(choice("gs.guess", "gaussian", "initial guess: gaussian | sech", {"gaussian", "sech"},
                       [](RunConfig& c, const std::string& v) {
                         c.ground_state.guess = v == "sech" ? InitialGuess::Sech : InitialGuess::Gaussian;
                       }));
    e.push_back(real("gs.width", "1", "width of the initial guess", positive(),
                     [](RunConfig& c, double v) { c.ground_state.guess_width = v; }));
    e.push_back(real("gs.initial_step", "0.01", "initial flow step", {0.0, 1.0, true, false},
                     [](RunConfig& c, double v) { c.ground_state.initial_step = v; }));
    e.push_back(integer("gs.max_iterations", "4000", "iteration cap of the flow", 1, 10000000,
                        [](RunConfig& c, long v) { c.ground_state.max_iterations = int(v); }));
    e.push_back(real("gs.tolerance", "1e-9", "target Euler-Lagrange residual", positive(),
                     [](RunConfig& c, double v) { c.ground_state.tolerance = v; }));
    e.push_back(boolean("gs.polish", "true", "run the fixed-point polish after the flow",
                        [](RunConfig& c, bool v) { c.ground_state.polish = v; }));
    e.push_back(real("integrator.dt", "0.001", "time step", positive(), [](RunConfig& c, double v) { c.integrator.dt = v; }));
    e.push_back(real("integrator.t_end", "1", "final time", any(), [](RunConfig& c, double v) { c.integrator.t_end = v; }));
    e.push_back(choice("integrator.scheme", "strang-split", "strang-split | midpoint-relaxation",
                       {"strang-split", "midpoint-relaxation"},
                       [](RunConfig& c, const std::string& v) { c.integrator.scheme = parse_scheme(v); }));
    e.push_back(integer("integrator.output_stride", "10", "steps between recorded samples", 1, 100000000,
                        [](RunConfig& c, long v) { c.integrator.output_stride = int(v); }));
    e.push_back(schedule_entry());
    e.push_back(real("integrator.h_threshold", "inf", "stop once H exceeds this value", positive(),
                     [](RunConfig& c, double v) { c.integrator.h_threshold = v; }, true));
    e.push_back(real("integrator.h_growth", "0", "stop once H exceeds this multiple of H(u0); 0 disables",
                     non_negative(), [](RunConfig& c, double v) { c.integrator_h_growth = v; }));
    e.push_back(real("integrator.resolution_cells", "4", "stop when 1/sqrt(H) spans fewer cells; 0 disables",
                     non_negative(), [](RunConfig& c, double v) { c.integrator.resolution_cells = v; }));
    e.push_back(real("integrator.phase_safety", "0.5", "bound on dt * max Phi per substep", positive(),
                     [](RunConfig& c, double v) { c.integrator.phase_safety = v; }));
    e.push_back(integer("integrator.snapshot_stride", "0", "keep a field every this many samples (0: none)", 0,
                        100000000, [](RunConfig& c, long v) { c.integrator.snapshot_stride = int(v); }));
    e.push_back(windows_entry());
    e.push_back(choice("initial.profile", "gaussian", "gaussian | sech | shell | ground-state | pseudo-conformal | file",
                       {"gaussian", "sech", "shell", "ground-state", "pseudo-conformal", "file"},
                       [](RunConfig& c, const std::string& v) { c.initial.profile = v; }));
    e.push_back(real("initial.width", "1", "profile width", positive(), [](RunConfig& c, double v) { c.initial.width = v; }));
    e.push_back(real("initial.amplitude", "1", "profile amplitude", any(),
                     [](RunConfig& c, double v) { c.initial.amplitude = v; }));
    e.push_back(real("initial.mass_fraction", "0", "scale the data to this fraction of M_gs; 0 keeps the amplitude",
                     non_negative(), [](RunConfig& c, double v) { c.initial.mass_fraction = v; }));
    e.push_back(boolean("initial.envelope", "true", "multiply analytic profiles by r^{-rho}",
                        [](RunConfig& c, bool v) { c.initial.envelope = v; }));
    e.push_back(real("initial.center", "2", "shell centre", non_negative(), [](RunConfig& c, double v) { c.initial.center = v; }));
    e.push_back(real("initial.mu", "1", "ground-state profile amplitude factor", positive(),
                     [](RunConfig& c, double v) { c.initial.mu = v; }));
    e.push_back(real("initial.nu", "1", "ground-state profile dilation rate", positive(),
                     [](RunConfig& c, double v) { c.initial.nu = v; }));
    e.push_back(real("initial.t_star", "1", "blow-up time of the pseudo-conformal family", any(),
                     [](RunConfig& c, double v) { c.initial.t_star = v; }));
    e.push_back(real("initial.theta", "0", "constant phase of the pseudo-conformal family", any(),
                     [](RunConfig& c, double v) { c.initial.theta = v; }));
    e.push_back(real("initial.t0", "0", "time at which the family is sampled", any(),
                     [](RunConfig& c, double v) { c.initial.t0 = v; }));
    e.push_back(real("initial.scale", "2", "scale mu of the family, lambda = mu/(T*-t)", positive(),
                     [](RunConfig& c, double v) { c.initial.scale = v; }));
    e.push_back(text("initial.file", "", "ground-state text file used by profile = file",
                     [](RunConfig& c, const std::string& v) { c.initial.file = v; }));
    e.push_back(integer("verify.fields", "100", "number of seeded random fields", 1, 1000000,
                        [](RunConfig& c, long v) { c.verify.fields = int(v); }));
    e.push_back(real("verify.gn_tolerance", "1e-6", "relative tolerance of the GN audit", non_negative(),
                     [](RunConfig& c, double v) { c.verify.gn_tolerance = v; }));
    e.push_back(real("verify.theta_radius", "3", "support radius of the rotation bump", positive(),
                     [](RunConfig& c, double v) { c.verify.theta_radius = v; }));
    e.push_back(rotation_entry());
    e.push_back(real("blowup.min_decades", "1", "decades of H growth the blow-up fit must cover", non_negative(),
                     [](RunConfig& c, double v) { c.blowup_min_decades = v; }));
    e.push_back(text("output.dir", "out", "directory for artifacts",
                     [](RunConfig& c, const std::string& v) { c.output_dir = v; }));
    e.push_back(unsigned64("seed", "1", "random seed", [](RunConfig& c, std::uint64_t v) { c.seed = v; }));
    std::sort(e.begin(), e.end(), [](const Entry& x, const Entry& y) { return x.info.key < y.info.key; });
    return e;
  }();
  return entries;
}

void parse_line(const std::string& raw, int line_no, std::map<std::string, std::string>& values, Errors& errors,
                const std::string& origin) {
  std::string line = raw;
  const auto hash = line.find('#');
  if (hash != std::string::npos) line = line.substr(0, hash);
  line = trim(line);
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    errors.push_back(origin + (line_no > 0 ? " line " + std::to_string(line_no) : "") + ": expected 'key = value'");
    return;
  }
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  const auto& reg = registry();
  const bool known = std::any_of(reg.begin(), reg.end(), [&](const Entry& e) { return e.info.key == key; });
  if (!known) {
    errors.push_back("unknown key '" + key + "'" + (line_no > 0 ? " (line " + std::to_string(line_no) + ")" : ""));
    return;
  }
  values[key] = value;
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::GroundState:
      return "ground-state";
    case Scenario::Evolve:
      return "evolve";
    case Scenario::BlowupDemo:
      return "blowup-demo";
    case Scenario::VerifySuite:
      return "verify-suite";
    case Scenario::Concentration:
      return "concentration";
  }
  return "unknown";
}

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys = [] {
    std::vector<KeyInfo> out;
    for (const Entry& e : registry()) out.push_back(e.info);
    return out;
  }();
  return keys;
}

ParseResult parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  Errors errors;
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  int line_no = 0;
  for (std::string line; std::getline(in, line);) parse_line(line, ++line_no, values, errors, "config");
  for (const std::string& o : overrides) parse_line(o, 0, values, errors, "override '" + o + "'");

  RunConfig cfg;
  for (const Entry& e : registry()) {
    const auto it = values.find(e.info.key);
    const std::string raw = it == values.end() ? e.info.default_value : it->second;
    if (auto normalized = e.apply(cfg, raw, errors)) cfg.resolved[e.info.key] = *normalized;
  }

  // cross-field constraints
  const double threshold = -0.25 * (cfg.d - 2.0) * (cfg.d - 2.0);
  if (!(cfg.a > threshold)) {
    errors.push_back("model.a = " + format_double(cfg.a) + " violates model.a > " + format_double(threshold) +
                     " (Hardy threshold for d = " + std::to_string(cfg.d) + ")");
  }
  if (!(cfg.integrator.t_end >= cfg.integrator.t_start)) {
    errors.push_back("integrator.t_end = " + format_double(cfg.integrator.t_end) + " violates integrator.t_end >= 0");
  }
  if (cfg.initial.profile == "file") {
    if (cfg.initial.file.empty()) {
      errors.push_back("initial.file must be set when initial.profile = file");
    } else if (!std::filesystem::exists(cfg.initial.file)) {
      errors.push_back("initial.file '" + cfg.initial.file + "' does not exist");
    }
  }
  if (cfg.initial.profile == "pseudo-conformal" && !(cfg.initial.t0 < cfg.initial.t_star)) {
    errors.push_back("initial.t0 = " + format_double(cfg.initial.t0) + " violates initial.t0 < initial.t_star = " +
                     format_double(cfg.initial.t_star));
  }
  for (WindowRule& w : cfg.integrator.windows) {
    if (w.kind == WindowRule::Kind::SqrtToBlowup) w.t_star = cfg.initial.t_star;
  }
  if (cfg.ground_state.initial_step > cfg.ground_state.max_step) {
    errors.push_back("gs.initial_step violates gs.initial_step <= 1");
  }
  if (!errors.empty()) return errors;
  return cfg;
}

std::string canonical_text(const RunConfig& cfg) {
  std::string out;
  for (const auto& [key, value] : cfg.resolved) out += key + " = " + value + "\n";
  return out;
}

std::string git_blob_sha1(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr) != 1) {
    throw std::runtime_error("SHA-1 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

std::string config_hash(const RunConfig& cfg) {
  // the output location does not change what is computed
  RunConfig copy = cfg;
  copy.resolved.erase("output.dir");
  return git_blob_sha1(canonical_text(copy));
}

}  // namespace hartree::cli
