#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uavmec/agents/kernels.hpp"
#include "uavmec/env.hpp"

namespace uavmec::harness {

// Unit-speed-safe heading for every UAV: toward the centroid of the busy UDs
// it currently serves, at h_min, never overshooting, with speed below v_max.
// A UAV serving nobody hovers.
std::vector<Vec3> centroid_velocities(const OffloadingEnv& env);

// RL-free baseline. The candidate grid takes raw values {-1, 0, 1} for every
// scalar action entry (split and weight logits, three frequencies, two
// prices, transcode selector); logit triples that decode to the same simplex
// point are kept once. Each slot every candidate is evaluated with the
// centroid velocities and the best reward is committed. Ties go to the
// earliest candidate in enumeration order (weights vary fastest).
class GreedyPolicy {
 public:
  explicit GreedyPolicy(const EnvConfig& cfg);

  // Candidates without weights or velocities; weights_grid() is crossed with them.
  const std::vector<DecodedAction>& candidates() const { return candidates_; }
  const std::vector<Weights>& weight_grid() const { return weights_; }
  std::size_t grid_size() const { return candidates_.size() * weights_.size(); }

  // Best action for the env's current slot.
  DecodedAction choose(const OffloadingEnv& env,
                       kernels::Backend backend = kernels::Backend::kParallel) const;

 private:
  std::vector<DecodedAction> candidates_;
  std::vector<Weights> weights_;
};

struct EpisodeResult {
  double episode_return = 0.0;
  std::vector<LedgerEntry> ledger;
};

// One greedy episode from env.reset(seed).
EpisodeResult greedy_episode(const EnvConfig& cfg, std::uint64_t seed,
                             kernels::Backend backend = kernels::Backend::kParallel);

// One episode repeating the same raw action every slot.
EpisodeResult fixed_action_episode(const EnvConfig& cfg, std::uint64_t seed,
                                   std::span<const double> raw);

}  // namespace uavmec::harness
