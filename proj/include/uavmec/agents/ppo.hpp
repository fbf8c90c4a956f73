#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uavmec/agents/optimizer.hpp"
#include "uavmec/agents/training.hpp"

namespace uavmec::agents {

struct PpoConfig {
  double gamma = 0.98;
  double actor_lr = 3e-4;
  double critic_lr = 1e-3;
  double clip_ratio = 0.2;
  double gae_lambda = 0.95;
  std::size_t epochs = 10;
  std::size_t minibatch_size = 64;
  std::size_t rollout_episodes = 4;  // episodes collected per policy update
  std::size_t episodes = 200;
  std::size_t max_episode_steps = 600;
  double init_log_std = -0.5;
  std::vector<std::size_t> hidden{256, 256};
  OptimizerKind optimizer = OptimizerKind::kAdam;
  double reward_scale = 1e-3;
};

void validate(const PpoConfig& cfg);

// Generalized advantage estimates for one trajectory. `values` has one more
// entry than `rewards` (bootstrap value of the state after the last step,
// ignored where done).
std::vector<double> gae_advantages(std::span<const double> rewards, std::span<const double> values,
                                   std::span<const double> dones, double gamma, double lambda);

// Log density of a diagonal Gaussian.
double gaussian_log_prob(std::span<const double> x, std::span<const double> mean,
                         std::span<const double> log_std);

// Clipped surrogate for one sample and its derivative w.r.t. the new log prob.
struct SurrogateTerm {
  double value = 0.0;
  double d_log_prob = 0.0;
};
SurrogateTerm clipped_surrogate(double log_prob_new, double log_prob_old, double advantage,
                                double clip_ratio);

// On-policy clipped-surrogate training with a Gaussian head whose mean is a
// tanh actor and whose log standard deviation is a learned vector. The
// returned actor is the mean network. critic1_loss logs the value loss and
// actor_objective the surrogate.
TrainResult ppo_train(const EnvFactory& make_env, const PpoConfig& cfg, std::uint64_t seed);

}  // namespace uavmec::agents
