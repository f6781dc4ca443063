#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "hartree/evolution.hpp"
#include "hartree/ground_state.hpp"
#include "hartree/potential.hpp"

namespace hartree::cli {

enum class Scenario { GroundState, Evolve, BlowupDemo, VerifySuite, Concentration };

std::string to_string(Scenario s);

/// Initial data: a named profile with its parameters, or a field file.
struct InitialData {
  /// gaussian | sech | shell | ground-state | pseudo-conformal | file
  std::string profile = "gaussian";
  double width = 1.0;
  double amplitude = 1.0;
  /// When positive, the profile is scaled to this fraction of M_gs.
  double mass_fraction = 0.0;
  /// Multiply profiles by r^{-rho} so that they share the ground-state behaviour at 0.
  bool envelope = true;
  double center = 2.0;
  /// ground-state profile: mu Q(nu_s r).
  double mu = 1.0;
  double nu = 1.0;
  /// pseudo-conformal profile: family(t0) * e^{i theta} with blow-up time t_star and scale.
  double t_star = 1.0;
  double theta = 0.0;
  double t0 = 0.0;
  double scale = 2.0;
  std::string file;
};

struct VerifyOptions {
  int fields = 100;
  double gn_tolerance = 1e-6;
  double theta_radius = 3.0;
  std::vector<double> rotation_s{-1.0, -0.3, 0.4, 1.5};
};

struct RunConfig {
  Scenario scenario = Scenario::GroundState;
  int d = 3;
  double a = -0.1;
  int n = 512;
  double r_max = 20.0;
  double stretch = 3.0;
  KernelOptions kernel;
  GroundStateOptions ground_state;
  IntegratorConfig integrator;
  InitialData initial;
  VerifyOptions verify;
  /// Stop once H exceeds this multiple of H(u0); zero disables.
  double integrator_h_growth = 0.0;
  /// Minimum decades of H growth a blow-up fit must cover.
  double blowup_min_decades = 1.0;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  /// All keys with their effective values (defaults included), sorted by key.
  std::map<std::string, std::string> resolved;
};

/// Either a validated configuration or every validation error found.
using ParseResult = std::variant<RunConfig, std::vector<std::string>>;

/// Parses flat `key = value` text ('#' starts a comment). `overrides` are
/// `key=value` strings applied after the text. Unknown keys, malformed values
/// and out-of-range values are all reported.
ParseResult parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

/// Documented keys with default values and one-line descriptions.
struct KeyInfo {
  std::string key;
  std::string default_value;
  std::string description;
};
const std::vector<KeyInfo>& config_keys();

/// Canonical text of the resolved configuration: sorted `key = value` lines.
std::string canonical_text(const RunConfig& cfg);

/// Git blob hash (SHA-1 of "blob <len>\0" + canonical text) in hex, with
/// output.dir left out of the text.
std::string config_hash(const RunConfig& cfg);
std::string git_blob_sha1(const std::string& content);

}  // namespace hartree::cli
