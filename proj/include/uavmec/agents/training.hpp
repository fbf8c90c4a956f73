#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "uavmec/agents/mlp.hpp"
#include "uavmec/environment.hpp"

namespace uavmec::agents {

using EnvFactory = std::function<std::unique_ptr<Environment>()>;

// One row of the training log. Loss columns are means over the updates made
// during the episode and stay 0 when no update ran.
struct EpisodeLog {
  std::size_t episode = 0;
  double episode_return = 0.0;  // unscaled environment reward
  double critic1_loss = 0.0;
  double critic2_loss = 0.0;
  double actor_objective = 0.0;
  std::array<double, 4> penalties{};  // F1..F4 totals
  std::size_t steps = 0;
  std::size_t updates = 0;
};

struct TrainResult {
  std::vector<EpisodeLog> log;
  Mlp actor;  // maps state to an action in [-1, 1]^dim
};

// Mean of the final `fraction` of episode returns (at least one episode).
double converged_return(const std::vector<EpisodeLog>& log, double fraction = 0.1);

}  // namespace uavmec::agents
