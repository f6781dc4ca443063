#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hartree_cli/scenarios.hpp"

namespace fs = std::filesystem;
using namespace hartree::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hartree_cli_tests" / name;
  fs::remove_all(dir);
  return dir;
}

RunConfig config(const std::string& text, const fs::path& out) {
  auto result = parse_config(text, {"output.dir=" + out.string()});
  if (auto* errors = std::get_if<std::vector<std::string>>(&result)) {
    ADD_FAILURE() << errors->front();
    return {};
  }
  return std::get<RunConfig>(result);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSmallEvolve =
    "scenario = evolve\ngrid.n = 128\ngrid.r_max = 15\ninitial.mass_fraction = 0.5\n"
    "integrator.dt = 1e-3\nintegrator.t_end = 0.2\nintegrator.output_stride = 20\n"
    "concentration.windows = 1, 2\n";

}  // namespace

TEST(Scenario, GroundStateWritesFileAndSummary) {
  const fs::path out = scratch("gs");
  const RunConfig cfg = config("scenario = ground-state\ngrid.n = 256\n", out);
  std::ostringstream log;
  const ScenarioReport report = run_scenario(cfg, log);
  EXPECT_TRUE(report.pass) << log.str();
  EXPECT_TRUE(fs::exists(out / "ground_state.txt"));
  EXPECT_TRUE(fs::exists(out / "ground_state_trace.csv"));
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  EXPECT_EQ(summary["scenario"], "ground-state");
  EXPECT_TRUE(summary["pass"].get<bool>());
  EXPECT_GT(summary["results"]["M_gs"].get<double>(), 1.0);
  EXPECT_TRUE(summary["results"]["pohozaev"].contains("m_minus_h"));
  // the full resolved configuration, defaults included
  EXPECT_EQ(summary["config"]["grid.n"], "256");
  EXPECT_EQ(summary["config"]["integrator.scheme"], "strang-split");
  EXPECT_EQ(summary["config_hash"], config_hash(cfg));
}

TEST(Scenario, EvolveIsBitReproducible) {
  std::string csv[2], json[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path out = scratch("evolve" + std::to_string(i));
    std::ostringstream log;
    const ScenarioReport report = run_scenario(config(kSmallEvolve, out), log);
    EXPECT_TRUE(report.pass) << log.str();
    csv[i] = slurp(out / "trajectory.csv");
    json[i] = slurp(out / "summary.json");
  }
  EXPECT_EQ(csv[0], csv[1]);
  // the summaries differ only in output.dir
  auto a = nlohmann::json::parse(json[0]);
  auto b = nlohmann::json::parse(json[1]);
  a["config"].erase("output.dir");
  b["config"].erase("output.dir");
  EXPECT_EQ(a, b);
  EXPECT_NE(csv[0].find("conc@1,conc@2"), std::string::npos);
}

TEST(Scenario, ModuleErrorsAreCapturedInTheSummary) {
  const fs::path out = scratch("error");
  // a repulsive coupling has no ground state to scale the data by
  const RunConfig cfg =
      config("scenario = evolve\nmodel.a = 0.2\ngrid.n = 64\ninitial.profile = ground-state\n", out);
  std::ostringstream log;
  const ScenarioReport report = run_scenario(cfg, log);
  EXPECT_FALSE(report.pass);
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  EXPECT_FALSE(summary["pass"].get<bool>());
  EXPECT_EQ(summary["error"]["type"], "invalid-argument");
  EXPECT_EQ(summary["error"]["scenario"], "evolve");
}

TEST(Scenario, InitialProfilesFromTheConfiguration) {
  const RunConfig base = config("grid.n = 128\ngrid.r_max = 15\n", scratch("profiles"));
  const hartree::RadialModel model = build_model(base);
  const hartree::GroundStateResult gs = hartree::solve_ground_state(model);
  for (const std::string profile : {"gaussian", "sech", "shell", "ground-state", "pseudo-conformal"}) {
    RunConfig cfg = base;
    cfg.initial.profile = profile;
    cfg.initial.mass_fraction = 0.7;
    const auto u = make_initial(model, cfg, gs);
    EXPECT_NEAR(hartree::mass(model, u), 0.7 * gs.M_gs, 1e-12 * gs.M_gs) << profile;
  }
  RunConfig cfg = base;
  cfg.initial.profile = "ground-state";
  EXPECT_THROW(make_initial(model, cfg, std::nullopt), std::invalid_argument);
}

TEST(Scenario, GroundStateFileAsInitialData) {
  const fs::path out = scratch("file");
  std::ostringstream log;
  const RunConfig gs_cfg = config("scenario = ground-state\ngrid.n = 256\ngrid.r_max = 15\n", out);
  ASSERT_TRUE(run_scenario(gs_cfg, log).pass) << log.str();
  const std::string text = "scenario = evolve\ngrid.n = 320\ngrid.r_max = 15\ninitial.profile = file\ninitial.file = " +
                           (out / "ground_state.txt").string() + "\ninitial.amplitude = 0.5\n";
  const RunConfig cfg = config(text, scratch("file_evolve"));
  const hartree::RadialModel model = build_model(cfg);
  const auto u = make_initial(model, cfg, std::nullopt);
  const hartree::RadialModel source = build_model(gs_cfg);
  const hartree::GroundStateResult gs = hartree::solve_ground_state(source);
  EXPECT_NEAR(hartree::mass(model, u), 0.25 * gs.M_gs, 1e-6 * gs.M_gs);
}
