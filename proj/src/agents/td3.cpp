#include "uavmec/agents/td3.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavmec/error.hpp"

namespace uavmec::agents {

namespace {

std::vector<std::size_t> net_sizes(std::size_t in, const std::vector<std::size_t>& hidden,
                                   std::size_t out) {
  std::vector<std::size_t> sizes{in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

void require(bool ok, const char* field, const char* msg) {
  if (!ok) throw ConfigError(std::string("td3.") + field, msg);
}

}  // namespace

double converged_return(const std::vector<EpisodeLog>& log, double fraction) {
  if (log.empty()) return 0.0;
  auto n = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(log.size())));
  n = std::clamp<std::size_t>(n, 1, log.size());
  double sum = 0.0;
  for (std::size_t i = log.size() - n; i < log.size(); ++i) sum += log[i].episode_return;
  return sum / static_cast<double>(n);
}

void validate(const Td3Config& c) {
  require(c.gamma > 0.0 && c.gamma < 1.0, "gamma", "must lie in (0, 1)");
  require(c.actor_lr > 0.0, "actor_lr", "must be positive");
  require(c.critic_lr > 0.0, "critic_lr", "must be positive");
  require(c.tau > 0.0 && c.tau <= 1.0, "tau", "must lie in (0, 1]");
  require(c.policy_delay >= 1, "policy_delay", "must be at least 1");
  require(c.target_noise_sigma >= 0.0, "target_noise_sigma", "must be non-negative");
  require(c.target_noise_clip > 0.0, "target_noise_clip", "must be positive");
  require(c.exploration_noise_sigma >= 0.0, "exploration_noise_sigma", "must be non-negative");
  require(c.batch_size >= 1, "batch_size", "must be at least 1");
  require(c.buffer_capacity >= c.batch_size, "buffer_capacity", "must be at least batch_size");
  require(c.episodes >= 1, "episodes", "must be at least 1");
  require(c.max_episode_steps >= 1, "max_episode_steps", "must be at least 1");
  require(!c.hidden.empty() && std::all_of(c.hidden.begin(), c.hidden.end(),
                                            [](std::size_t h) { return h > 0; }),
          "hidden", "needs at least one positive layer width");
  require(c.reward_scale > 0.0 && std::isfinite(c.reward_scale), "reward_scale", "must be positive");
}

Td3Config ddpg_variant(Td3Config cfg) {
  cfg.twin_critics = false;
  cfg.target_smoothing = false;
  cfg.policy_delay = 1;
  return cfg;
}

double clipped_noise(double sigma, double clip, Rng& rng) {
  if (sigma == 0.0) return 0.0;
  const double n = std::normal_distribution<double>(0.0, sigma)(rng);
  return std::clamp(n, -clip, clip);
}

Matrix smoothed_target_action(const Mlp& actor_target, const Matrix& next_states, double sigma,
                              double clip, Rng& rng) {
  Matrix a = actor_target.forward(next_states);
  for (double& v : a.data) v = std::clamp(v + clipped_noise(sigma, clip, rng), -1.0, 1.0);
  return a;
}

std::vector<double> td_target(std::span<const double> rewards, std::span<const double> dones,
                              std::span<const double> q1_next, std::span<const double> q2_next,
                              double gamma) {
  const std::size_t n = rewards.size();
  if (dones.size() != n || q1_next.size() != n || q2_next.size() != n) {
    throw Error("shape", "td_target: length mismatch");
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = rewards[i] + gamma * (1.0 - dones[i]) * std::min(q1_next[i], q2_next[i]);
  }
  return y;
}

double critic_update(Mlp& critic, Optimizer& opt, const Matrix& states, const Matrix& actions,
                     std::span<const double> targets) {
  const Matrix sa = hconcat(states, actions);
  if (targets.size() != sa.rows) throw Error("shape", "critic_update: target count mismatch");
  Mlp::Tape tape;
  const Matrix q = critic.forward(sa, tape);
  const double inv_b = 1.0 / static_cast<double>(sa.rows);
  Matrix d_q(sa.rows, 1);
  double loss = 0.0;
  for (std::size_t i = 0; i < sa.rows; ++i) {
    const double err = q.data[i] - targets[i];
    loss += err * err;
    d_q.data[i] = 2.0 * err * inv_b;
  }
  std::vector<double> grad(critic.num_params(), 0.0);
  critic.backward(tape, d_q, grad);
  opt.step(critic.params(), grad);
  return loss * inv_b;
}

double actor_update(Mlp& actor, Optimizer& opt, const Mlp& critic, const Matrix& states) {
  Mlp::Tape actor_tape;
  const Matrix a = actor.forward(states, actor_tape);
  Mlp::Tape critic_tape;
  const Matrix q = critic.forward(hconcat(states, a), critic_tape);
  const double inv_b = 1.0 / static_cast<double>(states.rows);
  double objective = 0.0;
  for (double v : q.data) objective += v;
  objective *= inv_b;

  // Descend on -J: dL/dQ = -1/B per sample.
  Matrix d_q(states.rows, 1, -inv_b);
  std::vector<double> critic_scratch(critic.num_params(), 0.0);
  Matrix d_sa;
  critic.backward(critic_tape, d_q, critic_scratch, &d_sa);
  Matrix d_a(states.rows, a.cols);
  for (std::size_t r = 0; r < states.rows; ++r) {
    for (std::size_t c = 0; c < a.cols; ++c) d_a(r, c) = d_sa(r, states.cols + c);
  }
  std::vector<double> grad(actor.num_params(), 0.0);
  actor.backward(actor_tape, d_a, grad);
  opt.step(actor.params(), grad);
  return objective;
}

Td3Agent::Td3Agent(std::size_t state_dim, std::size_t action_dim, const Td3Config& cfg,
                   std::uint64_t seed)
    : cfg_(cfg), noise_rng_(derive_seed(seed, 4)) {
  validate(cfg_);
  Rng init(derive_seed(seed, 1));
  actor_ = Mlp(net_sizes(state_dim, cfg_.hidden, action_dim), Activation::kRelu, Activation::kTanh, init);
  const auto critic_sizes = net_sizes(state_dim + action_dim, cfg_.hidden, 1);
  critic1_ = Mlp(critic_sizes, Activation::kRelu, Activation::kIdentity, init);
  if (cfg_.twin_critics) critic2_ = Mlp(critic_sizes, Activation::kRelu, Activation::kIdentity, init);
  actor_t_ = actor_;
  critic1_t_ = critic1_;
  critic2_t_ = critic2_;
  actor_opt_ = Optimizer(cfg_.optimizer, actor_.num_params(), cfg_.actor_lr);
  critic1_opt_ = Optimizer(cfg_.optimizer, critic1_.num_params(), cfg_.critic_lr);
  critic2_opt_ = Optimizer(cfg_.optimizer, critic2_.num_params(), cfg_.critic_lr);
}

std::vector<double> Td3Agent::act(std::span<const double> state) const {
  return actor_.forward(state);
}

bool Td3Agent::all_finite() const {
  return actor_.all_finite() && critic1_.all_finite() && critic2_.all_finite();
}

UpdateStats Td3Agent::update(const Batch& batch) {
  UpdateStats stats;
  ++critic_updates_;
  const Matrix a_next =
      cfg_.target_smoothing
          ? smoothed_target_action(actor_t_, batch.next_states, cfg_.target_noise_sigma,
                                   cfg_.target_noise_clip, noise_rng_)
          : actor_t_.forward(batch.next_states);
  const Matrix sa_next = hconcat(batch.next_states, a_next);
  const Matrix q1 = critic1_t_.forward(sa_next);
  const Matrix q2 = cfg_.twin_critics ? critic2_t_.forward(sa_next) : q1;
  const std::vector<double> y = td_target(batch.rewards, batch.dones, q1.data, q2.data, cfg_.gamma);

  stats.critic1_loss = critic_update(critic1_, critic1_opt_, batch.states, batch.actions, y);
  if (cfg_.twin_critics) {
    stats.critic2_loss = critic_update(critic2_, critic2_opt_, batch.states, batch.actions, y);
  }
  if (critic_updates_ % cfg_.policy_delay == 0) {
    stats.actor_updated = true;
    stats.actor_objective = actor_update(actor_, actor_opt_, critic1_, batch.states);
    soft_update(actor_t_.params(), actor_.params(), cfg_.tau);
    soft_update(critic1_t_.params(), critic1_.params(), cfg_.tau);
    if (cfg_.twin_critics) soft_update(critic2_t_.params(), critic2_.params(), cfg_.tau);
    ++actor_updates_;
  }
  return stats;
}

TrainResult td3_train(const EnvFactory& make_env, const Td3Config& cfg, std::uint64_t seed) {
  validate(cfg);
  auto env = make_env();
  const std::size_t sd = env->state_dim();
  const std::size_t ad = env->action_dim();
  Td3Agent agent(sd, ad, cfg, seed);
  ReplayBuffer buffer(cfg.buffer_capacity, sd, ad);
  Rng explore(derive_seed(seed, 2));
  Rng sampler(derive_seed(seed, 3));
  std::normal_distribution<double> noise(0.0, cfg.exploration_noise_sigma);

  TrainResult result;
  std::size_t total_steps = 0;
  for (std::size_t ep = 0; ep < cfg.episodes; ++ep) {
    EpisodeLog row;
    row.episode = ep;
    std::size_t actor_updates = 0;
    std::vector<double> state = env->reset(derive_seed(seed, 1000 + ep));
    for (std::size_t t = 0; t < cfg.max_episode_steps; ++t) {
      std::vector<double> action(ad);
      if (total_steps < cfg.warmup_steps) {
        for (double& a : action) a = uniform(explore, -1.0, 1.0);
      } else {
        action = agent.act(state);
        for (double& a : action) {
          const double n = cfg.exploration_noise_sigma > 0.0 ? noise(explore) : 0.0;
          a = std::clamp(a + n, -1.0, 1.0);
        }
      }
      Environment::Step step = env->step(action);
      row.episode_return += step.reward;
      for (std::size_t f = 0; f < 4; ++f) row.penalties[f] += step.penalties[f];
      buffer.push({state, action, step.reward * cfg.reward_scale, step.state, step.done});
      ++total_steps;
      ++row.steps;

      if (total_steps > cfg.warmup_steps && buffer.size() >= cfg.batch_size) {
        const UpdateStats s = agent.update(buffer.sample(cfg.batch_size, sampler));
        ++row.updates;
        row.critic1_loss += s.critic1_loss;
        row.critic2_loss += s.critic2_loss;
        if (s.actor_updated) {
          ++actor_updates;
          row.actor_objective += s.actor_objective;
        }
        if (!agent.all_finite()) {
          throw Error("divergence", "non-finite parameter after environment step " +
                                        std::to_string(total_steps));
        }
      }
      state = std::move(step.state);
      if (step.done) break;
    }
    if (row.updates > 0) {
      row.critic1_loss /= static_cast<double>(row.updates);
      row.critic2_loss /= static_cast<double>(row.updates);
    }
    if (actor_updates > 0) row.actor_objective /= static_cast<double>(actor_updates);
    result.log.push_back(row);
  }
  result.actor = agent.actor();
  return result;
}

TrainResult ddpg_train(const EnvFactory& make_env, const Td3Config& cfg, std::uint64_t seed) {
  return td3_train(make_env, ddpg_variant(cfg), seed);
}

}  // namespace uavmec::agents
