#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uavmec/agents/mlp.hpp"
#include "uavmec/agents/optimizer.hpp"
#include "uavmec/agents/replay_buffer.hpp"
#include "uavmec/agents/training.hpp"
#include "uavmec/rng.hpp"

namespace uavmec::agents {

struct Td3Config {
  double gamma = 0.98;
  double actor_lr = 0.005;
  double critic_lr = 0.005;
  double tau = 0.05;
  std::size_t policy_delay = 2;
  double target_noise_sigma = 0.2;
  double target_noise_clip = 0.5;
  double exploration_noise_sigma = 0.1;
  std::size_t batch_size = 256;
  std::size_t buffer_capacity = 100000;
  std::size_t episodes = 200;
  std::size_t warmup_steps = 1000;
  std::size_t max_episode_steps = 600;
  std::vector<std::size_t> hidden{256, 256};
  OptimizerKind optimizer = OptimizerKind::kAdam;
  double reward_scale = 1e-3;  // applied to rewards stored for learning only
  bool twin_critics = true;
  bool target_smoothing = true;
};

void validate(const Td3Config& cfg);

// DDPG as a TD3 variant: one critic, no target smoothing, policy_delay 1.
Td3Config ddpg_variant(Td3Config cfg);

// Clipped Gaussian noise draw, clamp(N(0, sigma^2), -clip, clip).
double clipped_noise(double sigma, double clip, Rng& rng);

// Target-policy smoothing: actor_target(s') plus clipped noise per entry,
// re-clipped to [-1, 1].
Matrix smoothed_target_action(const Mlp& actor_target, const Matrix& next_states, double sigma,
                              double clip, Rng& rng);

// y = r + gamma * (1 - done) * min(q1, q2), elementwise.
std::vector<double> td_target(std::span<const double> rewards, std::span<const double> dones,
                              std::span<const double> q1_next, std::span<const double> q2_next,
                              double gamma);

// One gradient step of a critic on mean squared error to `targets`.
// Returns the loss before the step.
double critic_update(Mlp& critic, Optimizer& opt, const Matrix& states, const Matrix& actions,
                     std::span<const double> targets);

// One ascent step of the actor on mean critic(s, actor(s)). Returns the
// objective before the step.
double actor_update(Mlp& actor, Optimizer& opt, const Mlp& critic, const Matrix& states);

struct UpdateStats {
  double critic1_loss = 0.0;
  double critic2_loss = 0.0;
  bool actor_updated = false;
  double actor_objective = 0.0;
};

class Td3Agent {
 public:
  Td3Agent(std::size_t state_dim, std::size_t action_dim, const Td3Config& cfg, std::uint64_t seed);

  std::vector<double> act(std::span<const double> state) const;
  UpdateStats update(const Batch& batch);

  const Mlp& actor() const { return actor_; }
  const Mlp& critic1() const { return critic1_; }
  const Mlp& critic2() const { return critic2_; }
  const Mlp& actor_target() const { return actor_t_; }
  const Mlp& critic1_target() const { return critic1_t_; }
  const Mlp& critic2_target() const { return critic2_t_; }
  std::size_t critic_updates() const { return critic_updates_; }
  std::size_t actor_updates() const { return actor_updates_; }
  bool all_finite() const;

 private:
  Td3Config cfg_;
  Mlp actor_, critic1_, critic2_;
  Mlp actor_t_, critic1_t_, critic2_t_;
  Optimizer actor_opt_, critic1_opt_, critic2_opt_;
  Rng noise_rng_;
  std::size_t critic_updates_ = 0;
  std::size_t actor_updates_ = 0;
};

// Off-policy training loop: warmup with uniform actions, then actor output
// plus exploration noise; one update per environment step.
// Throws Error("divergence") if any parameter becomes non-finite.
TrainResult td3_train(const EnvFactory& make_env, const Td3Config& cfg, std::uint64_t seed);
TrainResult ddpg_train(const EnvFactory& make_env, const Td3Config& cfg, std::uint64_t seed);

}  // namespace uavmec::agents
