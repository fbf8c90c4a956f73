// Command-line entry point: run, sweep, trajectory and baseline experiments.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "uavmec/agents/checkpoint.hpp"
#include "uavmec/error.hpp"
#include "uavmec/harness/config_io.hpp"
#include "uavmec/harness/experiment.hpp"

namespace {

void report(const std::string& code, const std::string& field, const std::string& message) {
  nlohmann::json line{{"error", {{"code", code}, {"field", field}, {"message", message}}}};
  std::cerr << line.dump() << '\n';
}

void print_artifacts(const uavmec::harness::RunArtifacts& art) {
  std::cout << art.directory.string() << '\n';
  for (const auto& f : art.files) std::cout << "  " << f.filename().string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  using namespace uavmec;
  CLI::App app{"UAV-assisted video offloading experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string axis;
  std::string checkpoint_path;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "train every configured algorithm for every seed");
  run->add_option("config", config_path, "experiment config (JSON)")->required();

  auto* sweep = app.add_subcommand("sweep", "converged return across one sweep axis");
  sweep->add_option("config", config_path, "experiment config (JSON)")->required();
  sweep->add_option("--axis", axis, "n_uav, n_idle, n_busy or f_uav_max_ghz")->required();

  auto* traj = app.add_subcommand("trajectory", "noise-free rollout of a saved actor");
  traj->add_option("checkpoint", checkpoint_path, "actor checkpoint")->required();
  traj->add_option("config", config_path, "experiment config (JSON)")->required();
  traj->add_option("--seed", seed, "episode seed (default: first configured seed)");

  auto* baseline = app.add_subcommand("baseline", "greedy grid-search baseline");
  baseline->add_option("config", config_path, "experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("usage", "", e.what());
    return 64;
  }

  try {
    const harness::ExperimentConfig cfg = harness::load_config(config_path);
    const std::string root = harness::output_root_from_env();
    if (*run) {
      print_artifacts(harness::run_experiment(cfg, root));
    } else if (*sweep) {
      print_artifacts(harness::sweep_experiment(cfg, axis, root));
    } else if (*traj) {
      const agents::Mlp actor = agents::load_checkpoint(checkpoint_path);
      print_artifacts(harness::trajectory_experiment(actor, cfg, seed.value_or(cfg.seeds.front()), root));
    } else if (*baseline) {
      print_artifacts(harness::baseline_experiment(cfg, root));
    }
  } catch (const ConfigError& e) {
    report(e.code(), e.field(), e.what());
    return 2;
  } catch (const Error& e) {
    report(e.code(), "", e.what());
    return 1;
  } catch (const std::exception& e) {
    report("internal", "", e.what());
    return 1;
  }
  return 0;
}
