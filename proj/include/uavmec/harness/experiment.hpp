#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "uavmec/agents/mlp.hpp"
#include "uavmec/agents/training.hpp"
#include "uavmec/harness/config_io.hpp"
#include "uavmec/harness/csv.hpp"

namespace uavmec::harness {

inline constexpr const char* kOutputRootEnv = "UAVMEC_OUTPUT_ROOT";

// $UAVMEC_OUTPUT_ROOT, or "." when unset or empty.
std::string output_root_from_env();
std::filesystem::path run_directory(const ExperimentConfig& cfg, const std::string& root);

agents::EnvFactory env_factory(const EnvConfig& cfg);

struct AlgorithmRun {
  std::vector<agents::EpisodeLog> log;
  agents::Mlp actor;  // empty for the greedy baseline
  CsvTable ledger;    // per-slot ledger rows, when requested
};

CsvTable ledger_table(std::size_t n_uav);
void append_ledger_row(CsvTable& table, std::size_t episode, const LedgerEntry& e);
CsvTable convergence_table(const std::vector<agents::EpisodeLog>& log);

// Trains (or, for greedy, rolls out) one algorithm for one seed. Episode e
// always starts from reset(derive_seed(seed, 1000 + e)).
AlgorithmRun run_algorithm(const ExperimentConfig& cfg, const EnvConfig& env, Algorithm algo,
                           std::uint64_t seed, bool record_ledger);

// Axis names: n_uav, n_idle, n_busy, f_uav_max_ghz.
std::vector<double> axis_values(const ExperimentConfig& cfg, const std::string& axis);
EnvConfig apply_axis(EnvConfig env, const std::string& axis, double value);

struct SweepCell {
  double axis_value = 0.0;
  Algorithm algorithm = Algorithm::kTd3;
  std::uint64_t seed = 0;
  double converged_return = 0.0;
};
struct SweepSummaryRow {
  double axis_value = 0.0;
  Algorithm algorithm = Algorithm::kTd3;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single seed
  std::size_t n = 0;
};

// Cells are ordered by axis value, then algorithm, then seed, and are
// computed in parallel; each cell is internally serial.
std::vector<SweepCell> sweep_cells(const ExperimentConfig& cfg, const std::string& axis);
std::vector<SweepSummaryRow> summarise(const std::vector<SweepCell>& cells);

struct TrajectoryResult {
  double episode_return = 0.0;
  WorldState start;
  std::vector<std::vector<Position>> uav_positions;  // per slot, after the move
  std::vector<LedgerEntry> ledger;
};

// Noise-free rollout: the actor's output is applied directly every slot.
TrajectoryResult rollout_policy(const agents::Mlp& actor, const EnvConfig& env, std::uint64_t seed);
CsvTable trajectory_table(const TrajectoryResult& t);

struct RunArtifacts {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> files;
};

// Each writes resolved_config.json and metadata.json next to its outputs.
RunArtifacts run_experiment(const ExperimentConfig& cfg, const std::string& root);
RunArtifacts sweep_experiment(const ExperimentConfig& cfg, const std::string& axis,
                              const std::string& root);
RunArtifacts baseline_experiment(const ExperimentConfig& cfg, const std::string& root);
RunArtifacts trajectory_experiment(const agents::Mlp& actor, const ExperimentConfig& cfg,
                                   std::uint64_t seed, const std::string& root);

}  // namespace uavmec::harness
