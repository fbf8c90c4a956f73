#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uavmec/agents/ppo.hpp"
#include "uavmec/agents/td3.hpp"
#include "uavmec/env.hpp"

namespace uavmec::harness {

inline constexpr int kSchemaVersion = 1;

enum class Algorithm { kTd3, kDdpg, kPpo, kGreedy };

const char* algorithm_name(Algorithm a);
// Throws ConfigError(field) for an unknown name.
Algorithm parse_algorithm(const std::string& name, const std::string& field);

struct SweepAxes {
  std::vector<std::size_t> n_uav{1, 2, 3};
  std::vector<std::size_t> n_idle{1, 2, 4};
  std::vector<std::size_t> n_busy{4, 8, 12};
  std::vector<double> f_uav_max_ghz{10.0, 20.0, 30.0};
};

struct BaselineConfig {
  std::size_t episodes = 1;  // greedy episodes per seed
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::string output_dir = "runs";
  bool write_ledger = true;  // per-slot ledger CSV for every run
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::vector<Algorithm> algorithms{Algorithm::kTd3, Algorithm::kDdpg, Algorithm::kPpo};
  EnvConfig env;
  agents::Td3Config td3;
  agents::PpoConfig ppo;
  BaselineConfig baseline;
  SweepAxes sweep;
};

// Throws ConfigError naming the offending dotted field.
void validate(const ExperimentConfig& cfg);

// JSON schema: "schema_version" is required, every other field defaults.
// Unknown keys, wrong types and invalid values raise ConfigError. Frequencies
// may be given as "<name>_ghz" instead of "<name>_hz" and noise as
// "noise_dbm" instead of "noise_power_w"; the resolved form always uses the
// SI fields so it round-trips exactly.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string to_json(const ExperimentConfig& cfg);

}  // namespace uavmec::harness
