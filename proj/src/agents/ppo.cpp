#include "uavmec/agents/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "uavmec/error.hpp"
#include "uavmec/rng.hpp"

namespace uavmec::agents {

namespace {

void require(bool ok, const char* field, const char* msg) {
  if (!ok) throw ConfigError(std::string("ppo.") + field, msg);
}

std::vector<std::size_t> net_sizes(std::size_t in, const std::vector<std::size_t>& hidden,
                                   std::size_t out) {
  std::vector<std::size_t> sizes{in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

struct Rollout {
  std::vector<std::vector<double>> states;
  std::vector<std::vector<double>> actions;  // sampled, before clipping
  std::vector<double> log_probs;
  std::vector<double> advantages;
  std::vector<double> returns;
};

Matrix gather(const std::vector<std::vector<double>>& rows, std::span<const std::size_t> idx) {
  Matrix m(idx.size(), rows[idx[0]].size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    std::copy(rows[idx[r]].begin(), rows[idx[r]].end(), m.row(r).begin());
  }
  return m;
}

}  // namespace

void validate(const PpoConfig& c) {
  require(c.gamma > 0.0 && c.gamma < 1.0, "gamma", "must lie in (0, 1)");
  require(c.actor_lr > 0.0, "actor_lr", "must be positive");
  require(c.critic_lr > 0.0, "critic_lr", "must be positive");
  require(c.clip_ratio > 0.0 && c.clip_ratio < 1.0, "clip_ratio", "must lie in (0, 1)");
  require(c.gae_lambda >= 0.0 && c.gae_lambda <= 1.0, "gae_lambda", "must lie in [0, 1]");
  require(c.epochs >= 1, "epochs", "must be at least 1");
  require(c.minibatch_size >= 1, "minibatch_size", "must be at least 1");
  require(c.rollout_episodes >= 1, "rollout_episodes", "must be at least 1");
  require(c.episodes >= 1, "episodes", "must be at least 1");
  require(c.max_episode_steps >= 1, "max_episode_steps", "must be at least 1");
  require(std::isfinite(c.init_log_std), "init_log_std", "must be finite");
  require(!c.hidden.empty() && std::all_of(c.hidden.begin(), c.hidden.end(),
                                            [](std::size_t h) { return h > 0; }),
          "hidden", "needs at least one positive layer width");
  require(c.reward_scale > 0.0 && std::isfinite(c.reward_scale), "reward_scale", "must be positive");
}

std::vector<double> gae_advantages(std::span<const double> rewards, std::span<const double> values,
                                   std::span<const double> dones, double gamma, double lambda) {
  const std::size_t n = rewards.size();
  if (values.size() != n + 1 || dones.size() != n) throw Error("shape", "gae_advantages: length mismatch");
  std::vector<double> adv(n);
  double running = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    const double live = 1.0 - dones[t];
    const double delta = rewards[t] + gamma * live * values[t + 1] - values[t];
    running = delta + gamma * lambda * live * running;
    adv[t] = running;
  }
  return adv;
}

double gaussian_log_prob(std::span<const double> x, std::span<const double> mean,
                         std::span<const double> log_std) {
  if (x.size() != mean.size() || x.size() != log_std.size()) {
    throw Error("shape", "gaussian_log_prob: length mismatch");
  }
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  double lp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = (x[i] - mean[i]) * std::exp(-log_std[i]);
    lp += -0.5 * z * z - log_std[i] - half_log_2pi;
  }
  return lp;
}

SurrogateTerm clipped_surrogate(double log_prob_new, double log_prob_old, double advantage,
                                double clip_ratio) {
  const double ratio = std::exp(log_prob_new - log_prob_old);
  const double clipped = std::clamp(ratio, 1.0 - clip_ratio, 1.0 + clip_ratio);
  SurrogateTerm out;
  if (ratio * advantage <= clipped * advantage) {
    out.value = ratio * advantage;
    out.d_log_prob = ratio * advantage;
  } else {
    out.value = clipped * advantage;
    out.d_log_prob = 0.0;
  }
  return out;
}

TrainResult ppo_train(const EnvFactory& make_env, const PpoConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  auto env = make_env();
  const std::size_t sd = env->state_dim();
  const std::size_t ad = env->action_dim();
  Rng init(derive_seed(seed, 1));
  Mlp actor(net_sizes(sd, cfg.hidden, ad), Activation::kRelu, Activation::kTanh, init);
  Mlp value(net_sizes(sd, cfg.hidden, 1), Activation::kRelu, Activation::kIdentity, init);
  std::vector<double> log_std(ad, cfg.init_log_std);
  Optimizer actor_opt(cfg.optimizer, actor.num_params(), cfg.actor_lr);
  Optimizer std_opt(cfg.optimizer, ad, cfg.actor_lr);
  Optimizer value_opt(cfg.optimizer, value.num_params(), cfg.critic_lr);
  Rng explore(derive_seed(seed, 2));
  Rng shuffler(derive_seed(seed, 3));
  std::normal_distribution<double> unit(0.0, 1.0);

  TrainResult result;
  std::size_t ep = 0;
  while (ep < cfg.episodes) {
    Rollout ro;
    const std::size_t first_row = result.log.size();
    const std::size_t batch_eps = std::min(cfg.rollout_episodes, cfg.episodes - ep);
    for (std::size_t b = 0; b < batch_eps; ++b, ++ep) {
      EpisodeLog row;
      row.episode = ep;
      std::vector<double> rewards, dones, values;
      std::vector<double> state = env->reset(derive_seed(seed, 1000 + ep));
      bool done = false;
      for (std::size_t t = 0; t < cfg.max_episode_steps && !done; ++t) {
        const std::vector<double> mean = actor.forward(state);
        std::vector<double> sample(ad), applied(ad);
        for (std::size_t i = 0; i < ad; ++i) {
          sample[i] = mean[i] + std::exp(log_std[i]) * unit(explore);
          applied[i] = std::clamp(sample[i], -1.0, 1.0);
        }
        values.push_back(value.forward(state)[0]);
        Environment::Step step = env->step(applied);
        row.episode_return += step.reward;
        for (std::size_t f = 0; f < 4; ++f) row.penalties[f] += step.penalties[f];
        ++row.steps;
        ro.states.push_back(state);
        ro.actions.push_back(sample);
        ro.log_probs.push_back(gaussian_log_prob(sample, mean, log_std));
        rewards.push_back(step.reward * cfg.reward_scale);
        done = step.done;
        dones.push_back(done ? 1.0 : 0.0);
        state = std::move(step.state);
      }
      values.push_back(done ? 0.0 : value.forward(state)[0]);
      const std::vector<double> adv = gae_advantages(rewards, values, dones, cfg.gamma, cfg.gae_lambda);
      for (std::size_t t = 0; t < adv.size(); ++t) {
        ro.advantages.push_back(adv[t]);
        ro.returns.push_back(adv[t] + values[t]);
      }
      result.log.push_back(row);
    }

    // Normalised advantages for the policy step.
    const std::size_t n = ro.advantages.size();
    const double mean_adv = std::accumulate(ro.advantages.begin(), ro.advantages.end(), 0.0) /
                            static_cast<double>(n);
    double var = 0.0;
    for (double a : ro.advantages) var += (a - mean_adv) * (a - mean_adv);
    const double sd_adv = std::sqrt(var / static_cast<double>(n)) + 1e-8;
    std::vector<double> norm_adv(n);
    for (std::size_t i = 0; i < n; ++i) norm_adv[i] = (ro.advantages[i] - mean_adv) / sd_adv;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    double value_loss_sum = 0.0, surrogate_sum = 0.0;
    std::size_t updates = 0;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), shuffler);
      for (std::size_t start = 0; start < n; start += cfg.minibatch_size) {
        const std::size_t end = std::min(n, start + cfg.minibatch_size);
        const std::span<const std::size_t> idx(order.data() + start, end - start);
        const double inv_b = 1.0 / static_cast<double>(idx.size());
        const Matrix states = gather(ro.states, idx);

        // Policy: descend on -(mean clipped surrogate).
        Mlp::Tape tape;
        const Matrix mean = actor.forward(states, tape);
        Matrix d_mean(idx.size(), ad);
        std::vector<double> d_log_std(ad, 0.0);
        double surrogate = 0.0;
        for (std::size_t r = 0; r < idx.size(); ++r) {
          const std::vector<double>& a = ro.actions[idx[r]];
          const double lp = gaussian_log_prob(a, mean.row(r), log_std);
          const SurrogateTerm term = clipped_surrogate(lp, ro.log_probs[idx[r]], norm_adv[idx[r]],
                                                       cfg.clip_ratio);
          surrogate += term.value * inv_b;
          const double g = -term.d_log_prob * inv_b;
          for (std::size_t i = 0; i < ad; ++i) {
            const double inv_var = std::exp(-2.0 * log_std[i]);
            const double diff = a[i] - mean(r, i);
            d_mean(r, i) = g * diff * inv_var;
            d_log_std[i] += g * (diff * diff * inv_var - 1.0);
          }
        }
        std::vector<double> actor_grad(actor.num_params(), 0.0);
        actor.backward(tape, d_mean, actor_grad);
        actor_opt.step(actor.params(), actor_grad);
        std_opt.step(log_std, d_log_std);

        // Value: mean squared error to the GAE returns.
        Mlp::Tape vtape;
        const Matrix v = value.forward(states, vtape);
        Matrix d_v(idx.size(), 1);
        double vloss = 0.0;
        for (std::size_t r = 0; r < idx.size(); ++r) {
          const double err = v.data[r] - ro.returns[idx[r]];
          vloss += err * err * inv_b;
          d_v.data[r] = 2.0 * err * inv_b;
        }
        std::vector<double> value_grad(value.num_params(), 0.0);
        value.backward(vtape, d_v, value_grad);
        value_opt.step(value.params(), value_grad);

        value_loss_sum += vloss;
        surrogate_sum += surrogate;
        ++updates;
        const bool finite = actor.all_finite() && value.all_finite() &&
                            std::all_of(log_std.begin(), log_std.end(), [](double x) { return std::isfinite(x); });
        if (!finite) {
          throw Error("divergence", "non-finite parameter after episode " + std::to_string(ep));
        }
      }
    }
    // Loss columns are shared by every episode of the rollout that fed the update.
    for (std::size_t r = first_row; r < result.log.size(); ++r) {
      result.log[r].updates = updates;
      result.log[r].critic1_loss = value_loss_sum / static_cast<double>(updates);
      result.log[r].actor_objective = surrogate_sum / static_cast<double>(updates);
    }
  }
  result.actor = std::move(actor);
  return result;
}

}  // namespace uavmec::agents
