#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "hartree_cli/config.hpp"
#include "hartree_cli/scenarios.hpp"

namespace {

namespace fs = std::filesystem;
using hartree::cli::RunConfig;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "configuration file (flat 'key = value' lines)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "output directory (overrides output.dir)");
  cmd->add_option("--seed", opts.seed, "random seed (overrides seed)");
  cmd->add_option("--override", opts.overrides, "key=value applied after the file (repeatable)")
      ->allow_extra_args(false);
}

std::string read_file(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<std::string> collect_overrides(const CommonOptions& opts, const std::string& scenario) {
  std::vector<std::string> out;
  if (!scenario.empty()) out.push_back("scenario=" + scenario);
  out.insert(out.end(), opts.overrides.begin(), opts.overrides.end());
  if (!opts.out_dir.empty()) out.push_back("output.dir=" + opts.out_dir);
  if (opts.seed) out.push_back("seed=" + std::to_string(*opts.seed));
  return out;
}

std::optional<RunConfig> parse_or_report(const std::string& text, const std::vector<std::string>& overrides) {
  auto result = hartree::cli::parse_config(text, overrides);
  if (auto* errors = std::get_if<std::vector<std::string>>(&result)) {
    std::cerr << "configuration rejected (" << errors->size() << " error" << (errors->size() == 1 ? "" : "s")
              << "):\n";
    for (const auto& e : *errors) std::cerr << "  " << e << '\n';
    return std::nullopt;
  }
  return std::get<RunConfig>(std::move(result));
}

int run_single(const CommonOptions& opts, const std::string& scenario) {
  const auto cfg = parse_or_report(read_file(opts.config_path), collect_overrides(opts, scenario));
  if (!cfg) return kExitUsage;
  const auto report = hartree::cli::run_scenario(*cfg, std::cerr);
  return report.pass ? 0 : kExitFail;
}

struct Variation {
  std::string key;
  std::vector<std::string> values;
};

std::optional<Variation> parse_variation(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) return std::nullopt;
  Variation v{arg.substr(0, eq), {}};
  std::istringstream in(arg.substr(eq + 1));
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) v.values.push_back(item);
  }
  if (v.values.empty()) return std::nullopt;
  return v;
}

int run_sweep(const CommonOptions& opts, const std::vector<std::string>& vary_args, unsigned threads) {
  std::vector<Variation> vary;
  for (const auto& arg : vary_args) {
    const auto v = parse_variation(arg);
    if (!v) {
      std::cerr << "--vary expects key=v1,v2,...; got '" << arg << "'\n";
      return kExitUsage;
    }
    vary.push_back(*v);
  }
  // Cartesian product of the variations, last key varying fastest.
  std::vector<std::vector<std::string>> combos{{}};
  for (const Variation& v : vary) {
    std::vector<std::vector<std::string>> next;
    for (const auto& c : combos) {
      for (const auto& value : v.values) {
        auto extended = c;
        extended.push_back(v.key + "=" + value);
        next.push_back(std::move(extended));
      }
    }
    combos = std::move(next);
  }

  const std::string text = read_file(opts.config_path);
  const auto base = parse_or_report(text, collect_overrides(opts, ""));
  if (!base) return kExitUsage;
  const fs::path root = base->output_dir;

  std::vector<RunConfig> configs;
  bool valid = true;
  for (std::size_t i = 0; i < combos.size(); ++i) {
    std::ostringstream name;
    name << "run_" << std::setw(3) << std::setfill('0') << i;
    auto overrides = collect_overrides(opts, "");
    overrides.insert(overrides.end(), combos[i].begin(), combos[i].end());
    overrides.push_back("output.dir=" + (root / name.str()).string());
    auto cfg = parse_or_report(text, overrides);
    if (!cfg) {
      valid = false;
      continue;
    }
    configs.push_back(std::move(*cfg));
  }
  if (!valid) return kExitUsage;

  std::vector<int> passed(configs.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      std::ostringstream log;
      const auto report = hartree::cli::run_scenario(configs[i], log);
      passed[i] = report.pass ? 1 : 0;
      const std::lock_guard<std::mutex> lock(log_mutex);
      std::cerr << log.str();
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  fs::create_directories(root);
  std::ofstream index(root / "sweep.csv");
  index << "run,output_dir,config_hash,overrides,pass\n";
  bool all = true;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::string joined;
    for (const auto& o : combos[i]) joined += (joined.empty() ? "" : ";") + o;
    index << i << ',' << configs[i].output_dir << ',' << hartree::cli::config_hash(configs[i]) << ",\"" << joined
          << "\"," << (passed[i] ? "true" : "false") << '\n';
    all = all && passed[i];
  }
  std::cerr << "sweep: " << configs.size() << " runs, " << (all ? "all passed" : "some failed") << '\n';
  return all ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial Hartree equation with an inverse-square potential: ground states, evolution, blow-up"};
  app.require_subcommand(0, 1);
  bool list_keys = false;
  app.add_flag("--list-keys", list_keys, "print every configuration key with its default and exit");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"ground-state", "ground-state"}, {"evolve", "evolve"},       {"blowup", "blowup-demo"},
      {"verify", "verify-suite"},       {"concentrate", "concentration"}};
  CommonOptions opts;
  std::map<CLI::App*, std::string> scenario_of;
  for (const auto& [name, scenario] : commands) {
    CLI::App* cmd = app.add_subcommand(name, "run the " + scenario + " scenario");
    add_common(cmd, opts);
    scenario_of[cmd] = scenario;
  }
  CLI::App* sweep = app.add_subcommand("sweep", "run the configured scenario over a grid of parameter values");
  add_common(sweep, opts);
  std::vector<std::string> vary;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  sweep->add_option("--vary", vary, "key=v1,v2,... (repeatable; runs the Cartesian product)")->required();
  sweep->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (list_keys) {
    for (const auto& k : hartree::cli::config_keys()) {
      std::cout << k.key << " = " << k.default_value << "    # " << k.description << '\n';
    }
    return 0;
  }
  if (sweep->parsed()) return run_sweep(opts, vary, threads);
  for (const auto& [cmd, scenario] : scenario_of) {
    if (cmd->parsed()) return run_single(opts, scenario);
  }
  std::cerr << app.help();
  return kExitUsage;
}
