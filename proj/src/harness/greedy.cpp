#include "uavmec/harness/greedy.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>

#include <omp.h>

namespace uavmec::harness {

namespace {

constexpr std::array<double, 3> kLevels{-1.0, 0.0, 1.0};

// Logit triples over kLevels, one per distinct softmax output.
std::vector<std::array<double, 3>> distinct_logit_triples() {
  std::vector<std::array<double, 3>> out;
  std::set<std::array<double, 3>> seen;
  for (double a : kLevels) {
    for (double b : kLevels) {
      for (double c : kLevels) {
        const double m = std::max({a, b, c});
        if (seen.insert({a - m, b - m, c - m}).second) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

struct Best {
  double reward = -std::numeric_limits<double>::infinity();
  std::size_t weight = 0;
};

Best best_over_weights(const OffloadingEnv& env, const DecodedAction& a,
                       const std::vector<Weights>& weights, LedgerEntry& scratch) {
  env.evaluate(a, scratch);
  Best best;
  for (std::size_t w = 0; w < weights.size(); ++w) {
    const double q = system_revenue(scratch.u_uav, scratch.u_idle, scratch.u_busy, weights[w]);
    const double r = q - scratch.penalty;
    if (r > best.reward) best = {r, w};
  }
  return best;
}

}  // namespace

std::vector<Vec3> centroid_velocities(const OffloadingEnv& env) {
  const WorldConfig& w = env.config().world;
  const WorldState& world = env.world();
  const AssociationMap& assoc = env.slot_context().assoc;
  // Keep the commanded speed a hair under v_max so decoding noise never trips F3.
  const double cap = w.v_max * (1.0 - 1e-9);
  std::vector<Vec3> vel(world.uavs.size(), Vec3{0.0, 0.0, 0.0});
  for (std::size_t k = 0; k < world.uavs.size(); ++k) {
    Vec3 sum{0.0, 0.0, 0.0};
    std::size_t n = 0;
    for (std::size_t i = 0; i < world.busy.size(); ++i) {
      if (assoc.uav[i] && *assoc.uav[i] == k) {
        sum = sum + world.busy[i];
        ++n;
      }
    }
    if (n == 0) continue;
    Vec3 target = sum / static_cast<double>(n);
    target.z = w.h_min;
    const Vec3 delta = target - world.uavs[k].pos;
    const double dist = norm(delta);
    if (dist == 0.0) continue;
    const double speed = std::min(cap, dist / w.slot_seconds);
    vel[k] = delta * (speed / dist);
  }
  return vel;
}

GreedyPolicy::GreedyPolicy(const EnvConfig& cfg) {
  namespace L = action_layout;
  const auto triples = distinct_logit_triples();
  for (const auto& t : triples) {
    const DecodedAction probe = [&] {
      std::vector<double> raw(action_dim(cfg), 0.0);
      for (std::size_t i = 0; i < 3; ++i) raw[L::kWeights + i] = t[i];
      return decode(raw, cfg);
    }();
    weights_.push_back(probe.weights);
  }
  std::vector<double> raw(action_dim(cfg), 0.0);
  const std::size_t sel = L::transcode(cfg.world.n_uav);
  for (const auto& split : triples) {
    for (std::size_t i = 0; i < 3; ++i) raw[L::kSplit + i] = split[i];
    for (double fb : kLevels) {
      raw[L::kFBusy] = fb;
      for (double fi : kLevels) {
        raw[L::kFIdle] = fi;
        for (double fu : kLevels) {
          raw[L::kFUav] = fu;
          for (double pu : kLevels) {
            raw[L::kPUav] = pu;
            for (double pi : kLevels) {
              raw[L::kPIdle] = pi;
              for (double b : kLevels) {
                raw[sel] = b;
                candidates_.push_back(decode(raw, cfg));
              }
            }
          }
        }
      }
    }
  }
}

DecodedAction GreedyPolicy::choose(const OffloadingEnv& env, kernels::Backend backend) const {
  const std::vector<Vec3> vel = centroid_velocities(env);
  const std::size_t n = candidates_.size();
  std::vector<Best> best(n);
  const bool parallel = backend == kernels::Backend::kParallel && !omp_in_parallel();
#pragma omp parallel if (parallel)
  {
    DecodedAction a;
    LedgerEntry scratch;
#pragma omp for schedule(static)
    for (std::size_t c = 0; c < n; ++c) {
      a = candidates_[c];
      a.commanded_velocity = vel;
      best[c] = best_over_weights(env, a, weights_, scratch);
    }
  }
  std::size_t arg = 0;
  for (std::size_t c = 1; c < n; ++c) {
    if (best[c].reward > best[arg].reward) arg = c;
  }
  DecodedAction out = candidates_[arg];
  out.commanded_velocity = vel;
  out.weights = weights_[best[arg].weight];
  return out;
}

EpisodeResult greedy_episode(const EnvConfig& cfg, std::uint64_t seed, kernels::Backend backend) {
  const GreedyPolicy policy(cfg);
  OffloadingEnv env(cfg);
  env.reset(seed);
  EpisodeResult result;
  std::vector<double> rewards;
  while (!env.done()) {
    const Environment::Step s = env.step(policy.choose(env, backend));
    rewards.push_back(s.reward);
    result.ledger.push_back(env.last_ledger());
  }
  result.episode_return = episode_return(rewards);
  return result;
}

EpisodeResult fixed_action_episode(const EnvConfig& cfg, std::uint64_t seed,
                                   std::span<const double> raw) {
  OffloadingEnv env(cfg);
  env.reset(seed);
  EpisodeResult result;
  std::vector<double> rewards;
  while (!env.done()) {
    const Environment::Step s = env.step(raw);
    rewards.push_back(s.reward);
    result.ledger.push_back(env.last_ledger());
  }
  result.episode_return = episode_return(rewards);
  return result;
}

}  // namespace uavmec::harness
