#pragma once

#include <iosfwd>
#include <optional>

#include "json.hpp"

#include "hartree/ground_state.hpp"
#include "hartree_cli/config.hpp"

namespace hartree::cli {

struct ScenarioReport {
  bool pass = false;
  /// Keys: scenario, config_hash, config, results, checks, artifacts, error, pass.
  nlohmann::ordered_json summary;
};

/// Builds the model described by the configuration.
RadialModel build_model(const RunConfig& cfg);

/// Initial data of the configuration. Profiles that refer to the ground state
/// (ground-state, pseudo-conformal, or a positive mass fraction) need `gs`.
ComplexRadialField make_initial(const RadialModel& model, const RunConfig& cfg,
                                const std::optional<GroundStateResult>& gs);

/// Integrator settings with the run-dependent parts resolved: the start time
/// of the pseudo-conformal profile and the H-growth threshold.
IntegratorConfig resolve_integrator(const RunConfig& cfg, const RadialModel& model, const ComplexRadialField& u0);

/// Runs the scenario, writes its artifacts and summary.json into
/// cfg.output_dir and returns the summary. Module errors are recorded in the
/// summary (pass = false) instead of propagating. Progress goes to `log`.
ScenarioReport run_scenario(const RunConfig& cfg, std::ostream& log);

}  // namespace hartree::cli
