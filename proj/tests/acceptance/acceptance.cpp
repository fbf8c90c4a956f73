// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "uavmec/agents/mlp.hpp"
#include "uavmec/agents/td3.hpp"
#include "uavmec/channel.hpp"
#include "uavmec/compute_energy.hpp"
#include "uavmec/env.hpp"
#include "uavmec/harness/config_io.hpp"
#include "uavmec/harness/experiment.hpp"
#include "uavmec/rng.hpp"
#include "uavmec/world.hpp"

using namespace uavmec;
using namespace uavmec::agents;
using namespace uavmec::harness;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<double> random_raw(std::size_t dim, Rng& rng, double lo, double hi) {
  std::vector<double> a(dim);
  for (double& v : a) v = uniform(rng, lo, hi);
  return a;
}

EnvConfig desk_env() {
  EnvConfig c;
  c.world.n_busy = 6;
  c.world.n_idle = 3;
  c.world.n_uav = 2;
  c.world.n_slots = 20;
  return c;
}

// --- 1 ------------------------------------------------------------------

Verdict formula_oracles() {
  const EnergyParams ep;
  double worst = 0.0;
  auto track = [&worst](double got, double want) { worst = std::max(worst, oracle::relative_error(got, want)); };

  const double hover = flight_power(0.0, ep);
  const bool hover_ok = std::fabs(hover - 138.10) <= 1e-6;
  const double ck = transcode_cycles_per_bit(TranscodeLevel{4}, ep);
  const bool ck_ok = std::fabs(ck - 1.54 * std::pow(2.3, 0.08)) <= 1e-9;

  Rng rng(101);
  const ChannelParams ch;
  for (int n = 0; n < 100; ++n) {
    const double D = uniform(rng, 1.5e6, 3.5e6), C = uniform(rng, 700, 1500);
    const double e1 = uniform(rng, 0, 1), e2 = uniform(rng, 0, 1 - e1), e3 = 1 - e1 - e2;
    const double f = uniform(rng, 1e7, 1.5e9);
    track(local_delay({D, C}, {e1, e2, e3}, f), e3 * D * C / f);
    track(local_energy({D, C}, {e1, e2, e3}, f, 1e-27), 1e-27 * f * f * e3 * D * C);
    const double d = uniform(rng, 1, 300), g = uniform(rng, 0.05, 3);
    const double gain = ch.uav.beta0 * std::pow(d, -ch.uav.path_loss_exponent);
    track(path_gain(ch.uav, d), gain);
    track(rate(ch.uav.bandwidth_hz, 0.5, gain * g, ch.noise_power_w),
          ch.uav.bandwidth_hz * std::log2(1 + 0.5 * gain * g / ch.noise_power_w));
  }

  // Full slot evaluation on 100 random slot states.
  const EnvConfig cfg = desk_env();
  OffloadingEnv env(cfg);
  std::size_t slots = 0;
  bool penalties_ok = true;
  for (int ep_i = 0; slots < 100; ++ep_i) {
    env.reset(derive_seed(102, ep_i));
    for (int s = 0; s < 5 && !env.done() && slots < 100; ++s, ++slots) {
      const auto raw = random_raw(action_dim(cfg), rng, -1.0, 1.0);
      const oracle::SlotInputs in = oracle::capture(env);
      const oracle::SlotOutcome want = oracle::evaluate(cfg, in, raw);
      env.step(raw);
      const LedgerEntry& got = env.last_ledger();
      track(got.u_uav, want.u_uav);
      track(got.u_idle, want.u_idle);
      track(got.u_busy, want.u_busy);
      track(got.q, want.q);
      track(got.reward, want.reward);
      penalties_ok = penalties_ok && got.f1 == want.f1 && got.f2 == want.f2 && got.f3 == want.f3;
    }
  }
  return {hover_ok && ck_ok && penalties_ok && worst <= 1e-9,
          "hover " + fmt("%.6f W", hover) + ", C_k(2.3) " + fmt("%.12f", ck) + ", max rel err " +
              fmt("%.2e", worst) + " over 100 scalar draws and 100 slots"};
}

// --- 2 ------------------------------------------------------------------

Verdict constraint_fuzzing() {
  const EnvConfig cfg = desk_env();
  const WorldConfig& w = cfg.world;
  Rng rng(201);
  std::size_t box_violations = 0;
  double simplex_err = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const auto raw = random_raw(action_dim(cfg), rng, -2.0, 2.0);
    const DecodedAction a = decode(raw, cfg);
    const OffloadSplit& s = a.split;
    for (double e : {s.eps1, s.eps2, s.eps3, a.weights.w1, a.weights.w2, a.weights.w3}) {
      if (!(e >= 0.0 && e <= 1.0)) ++box_violations;
    }
    simplex_err = std::max(simplex_err, std::fabs(s.eps1 + s.eps2 + s.eps3 - 1.0));
    simplex_err = std::max(simplex_err, std::fabs(a.weights.w1 + a.weights.w2 + a.weights.w3 - 1.0));
    const auto in_box = [&](double v, double lo, double hi) { if (!(v >= lo && v <= hi)) ++box_violations; };
    in_box(a.f_busy, 0.0, cfg.resources.f_busy_max_hz);
    in_box(a.f_idle, 0.0, cfg.resources.f_idle_max_hz);
    in_box(a.f_uav, 0.0, cfg.resources.f_uav_max_hz);
    in_box(a.prices.p_uav, cfg.economics.p_uav_min, cfg.economics.p_uav_max);
    in_box(a.prices.p_idle, cfg.economics.p_idle_min, cfg.economics.p_idle_max);
    in_box(cfg.resources.tx_power_w, 0.0, 0.5);
    if (a.level.index >= kBitrateLadderMbps.size()) ++box_violations;
    // Altitude band and speed after the kinematic update from a random state.
    UavState u;
    u.pos = {uniform(rng, 0, w.area_side), uniform(rng, 0, w.area_side), uniform(rng, w.h_min, w.h_max)};
    u.vel = clamp_speed({uniform(rng, -25, 25), uniform(rng, -25, 25), uniform(rng, -25, 25)}, w.v_max);
    const UavState next = advance_uav(u, a.commanded_velocity[n % w.n_uav], w.slot_seconds, w);
    in_box(next.pos.z, w.h_min, w.h_max);
    in_box(next.pos.x, 0.0, w.area_side);
    in_box(next.pos.y, 0.0, w.area_side);
    if (norm(next.vel) > w.v_max * (1 + 1e-12)) ++box_violations;
  }
  return {simplex_err < 1e-9 && box_violations == 0,
          "1e5 actions in [-2,2]^" + std::to_string(action_dim(cfg)) + ": simplex err " +
              fmt("%.2e", simplex_err) + ", box violations " + std::to_string(box_violations)};
}

// --- 3 ------------------------------------------------------------------

Verdict reward_identity() {
  const EnvConfig cfg = desk_env();
  OffloadingEnv env(cfg);
  Rng rng(301);
  std::size_t mismatches = 0, slots = 0;
  double worst_closure = 0.0;
  for (int ep = 0; ep < 100; ++ep) {
    env.reset(derive_seed(302, ep));
    while (!env.done()) {
      env.step(random_raw(action_dim(cfg), rng, -1.0, 1.0));
      const LedgerEntry& l = env.last_ledger();
      const double f = l.f1 + l.f2 + l.f3 + l.f4;
      if (l.reward != l.q - f || l.penalty != f) ++mismatches;
      worst_closure = std::max(worst_closure, std::fabs(l.reward + f - l.q) / std::max(1.0, std::fabs(l.q)));
      ++slots;
    }
  }
  return {mismatches == 0, std::to_string(slots) + " slots, bitwise mismatches " + std::to_string(mismatches) +
                               ", max |r + F - Q| / max(1,|Q|) " + fmt("%.1e", worst_closure)};
}

// --- 4 ------------------------------------------------------------------

Verdict brute_force_oracle() {
  EnvConfig cfg;
  cfg.world.n_busy = cfg.world.n_idle = cfg.world.n_uav = 1;
  cfg.world.n_slots = 1;
  const std::size_t dim = action_dim(cfg);
  std::vector<double> grid(10);
  for (int k = 0; k < 10; ++k) grid[k] = -1.0 + 2.0 * k / 9.0;

  OffloadingEnv env(cfg);
  Rng rng(401);
  double worst = 0.0;
  std::size_t points = 0;
  LedgerEntry out;
  auto check = [&](const std::vector<double>& raw, const oracle::SlotInputs& in) {
    const oracle::SlotOutcome want = oracle::evaluate(cfg, in, raw);
    const double got = env.evaluate(decode(raw, cfg), out);
    worst = std::max(worst, oracle::relative_error(got, want.reward));
    ++points;
  };
  for (int inst = 0; inst < 10; ++inst) {
    env.reset(derive_seed(402, inst));
    const oracle::SlotInputs in = oracle::capture(env);
    // Every grid value on every axis, with the other axes at random grid values.
    for (int base = 0; base < 10; ++base) {
      std::vector<double> raw(dim);
      for (double& v : raw) v = grid[rng() % 10];
      for (std::size_t axis = 0; axis < dim; ++axis) {
        std::vector<double> r = raw;
        for (double g : grid) {
          r[axis] = g;
          check(r, in);
        }
      }
    }
    for (int n = 0; n < 2000; ++n) {
      std::vector<double> raw(dim);
      for (double& v : raw) v = grid[rng() % 10];
      check(raw, in);
    }
  }
  return {worst <= 1e-9, std::to_string(points) + " grid points on 10 instances, max rel err " + fmt("%.2e", worst)};
}

// --- 5 ------------------------------------------------------------------

Verdict gradient_check() {
  Rng rng(501);
  const Activation acts[] = {Activation::kRelu, Activation::kTanh, Activation::kIdentity};
  double worst = 0.0;
  const double h = 1e-5;
  for (int net_i = 0; net_i < 20; ++net_i) {
    const std::size_t depth = 1 + rng() % 3;
    std::vector<std::size_t> sizes{1 + rng() % 5};
    for (std::size_t d = 0; d < depth; ++d) sizes.push_back(1 + rng() % 6);
    Mlp net(sizes, acts[rng() % 3], acts[rng() % 3], rng);
    const std::size_t batch = 1 + rng() % 4;
    Matrix x(batch, sizes.front());
    for (double& v : x.data) v = uniform(rng, -1, 1);
    Matrix wts(batch, sizes.back());
    for (double& v : wts.data) v = uniform(rng, -1, 1);
    auto loss = [&](const Mlp& m, const Matrix& in) {
      const Matrix y = m.forward(in);
      double l = 0.0;
      for (std::size_t n = 0; n < y.data.size(); ++n) l += wts.data[n] * y.data[n];
      return l;
    };
    Mlp::Tape tape;
    net.forward(x, tape);
    std::vector<double> grad(net.num_params(), 0.0);
    Matrix dx;
    net.backward(tape, wts, grad, &dx);
    auto rel = [](double a, double b) { return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-7}); };
    for (std::size_t p = 0; p < net.num_params(); ++p) {
      const double keep = net.params()[p];
      net.params()[p] = keep + h;
      const double up = loss(net, x);
      net.params()[p] = keep - h;
      const double down = loss(net, x);
      net.params()[p] = keep;
      worst = std::max(worst, rel(grad[p], (up - down) / (2 * h)));
    }
    for (std::size_t n = 0; n < x.data.size(); ++n) {
      Matrix xp = x;
      xp.data[n] += h;
      const double up = loss(net, xp);
      xp.data[n] -= 2 * h;
      const double down = loss(net, xp);
      worst = std::max(worst, rel(dx.data[n], (up - down) / (2 * h)));
    }
  }
  return {worst < 1e-4, "20 random nets, max rel err " + fmt("%.2e", worst)};
}

// --- 6 ------------------------------------------------------------------

Verdict td3_mechanics() {
  std::vector<std::string> failures;
  const std::vector<double> r{1.0, -2.0, 0.5}, d{0.0, 0.0, 1.0};
  const std::vector<double> q1{3.0, -1.0, 9.0}, q2{2.0, 4.0, -9.0};
  const auto y = td_target(r, d, q1, q2, 0.98);
  const auto y_swapped = td_target(r, d, q2, q1, 0.98);
  if (y[0] != 1.0 + 0.98 * 2.0 || y[1] != -2.0 + 0.98 * -1.0 || y[2] != 0.5) failures.push_back("td_target min");
  if (y != y_swapped) failures.push_back("td_target symmetry");
  if (!(y[0] < 1.0 + 0.98 * 3.0)) failures.push_back("td_target strict");

  Td3Config cfg;
  Rng rng(601);
  double max_noise = 0.0;
  for (int n = 0; n < 100000; ++n) max_noise = std::max(max_noise, std::fabs(clipped_noise(cfg.target_noise_sigma, cfg.target_noise_clip, rng)));
  const Mlp actor({4, 8, 3}, Activation::kRelu, Activation::kTanh, rng);
  Matrix s(200, 4);
  for (double& v : s.data) v = uniform(rng, -3, 3);
  const Matrix clean = actor.forward(s);
  for (int rep = 0; rep < 50; ++rep) {
    const Matrix a = smoothed_target_action(actor, s, cfg.target_noise_sigma, cfg.target_noise_clip, rng);
    for (std::size_t n = 0; n < a.data.size(); ++n) {
      max_noise = std::max(max_noise, std::fabs(a.data[n] - clean.data[n]));
      if (std::fabs(a.data[n]) > 1.0) failures.push_back("smoothed action outside [-1,1]");
    }
  }
  if (max_noise > cfg.target_noise_clip) failures.push_back("noise above clip");

  // Contraction |target - online| shrinks by exactly 1 - tau.
  const double tau = cfg.tau;
  bool contraction_exact = true;
  std::vector<double> target(100), zeros(100, 0.0);
  for (double& v : target) v = uniform(rng, -10, 10);
  std::vector<double> before = target;
  soft_update(target, zeros, tau);
  for (std::size_t n = 0; n < target.size(); ++n) contraction_exact = contraction_exact && target[n] == (1.0 - tau) * before[n];
  std::vector<double> online(100);
  for (double& v : online) v = uniform(rng, -10, 10);
  before = target;
  soft_update(target, online, tau);
  double contraction_err = 0.0;
  for (std::size_t n = 0; n < target.size(); ++n) {
    const double ratio = (target[n] - online[n]) / (before[n] - online[n]);
    contraction_err = std::max(contraction_err, std::fabs(ratio - (1.0 - tau)));
  }
  if (!contraction_exact || contraction_err > 1e-12) failures.push_back("soft update contraction");

  // Cadence on the agent.
  Td3Config small = cfg;
  small.hidden = {16, 16};
  Td3Agent agent(3, 2, small, 7);
  ReplayBuffer buf(64, 3, 2);
  for (int n = 0; n < 64; ++n) {
    buf.push({random_raw(3, rng, -1, 1), random_raw(2, rng, -1, 1), uniform(rng, -1, 1), random_raw(3, rng, -1, 1), n % 9 == 0});
  }
  bool cadence_ok = true;
  for (std::size_t n = 1; n <= 10; ++n) {
    const std::vector<double> t_before(agent.critic1_target().params().begin(), agent.critic1_target().params().end());
    const UpdateStats st = agent.update(buf.sample(32, rng));
    const bool expect_actor = n % small.policy_delay == 0;
    const bool target_moved = !std::equal(t_before.begin(), t_before.end(), agent.critic1_target().params().begin());
    cadence_ok = cadence_ok && st.actor_updated == expect_actor && target_moved == expect_actor;
    if (expect_actor) {
      const auto on = agent.critic1().params();
      const auto tg = agent.critic1_target().params();
      for (std::size_t p = 0; p < tg.size(); ++p) {
        cadence_ok = cadence_ok && std::fabs(tg[p] - (tau * on[p] + (1 - tau) * t_before[p])) <= 1e-15;
      }
    }
  }
  cadence_ok = cadence_ok && agent.critic_updates() == 10 && agent.actor_updates() == 5;
  if (!cadence_ok) failures.push_back("policy_delay cadence");

  std::string detail = "max smoothing noise " + fmt("%.3f", max_noise) + " (clip 0.5), tau 0.05 contraction err " +
                       fmt("%.1e", contraction_err) + ", delay 2 cadence checked over 10 updates";
  for (const auto& f : failures) detail += "; FAILED " + f;
  return {failures.empty(), detail};
}

// --- 7 and 9 ------------------------------------------------------------

struct LearningRuns {
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<EpisodeLog>> td3, ddpg;
  std::vector<Mlp> td3_actors;
};

Td3Config desk_td3() {
  Td3Config c;
  c.episodes = 100;
  c.warmup_steps = 200;
  c.max_episode_steps = 20;
  return c;
}

double mean_returns(const std::vector<EpisodeLog>& log, std::size_t begin, std::size_t end) {
  double s = 0.0;
  for (std::size_t n = begin; n < end; ++n) s += log[n].episode_return;
  return s / static_cast<double>(end - begin);
}

LearningRuns train_desk() {
  LearningRuns runs;
  runs.seeds = {1, 2, 3, 4, 5};
  const EnvConfig env = desk_env();
  const auto factory = env_factory(env);
  for (std::uint64_t seed : runs.seeds) {
    TrainResult t = td3_train(factory, desk_td3(), seed);
    runs.td3.push_back(t.log);
    runs.td3_actors.push_back(t.actor);
    runs.ddpg.push_back(ddpg_train(factory, desk_td3(), seed).log);
  }
  return runs;
}

Verdict learning_sanity(const LearningRuns& runs) {
  const std::size_t n = runs.seeds.size();
  std::vector<double> diff(n);
  std::size_t td3_wins = 0;
  std::string per_seed;
  for (std::size_t s = 0; s < n; ++s) {
    const auto& log = runs.td3[s];
    const double first = mean_returns(log, 0, 10);
    const double last = mean_returns(log, log.size() - 10, log.size());
    const double ddpg_last = mean_returns(runs.ddpg[s], runs.ddpg[s].size() - 10, runs.ddpg[s].size());
    diff[s] = last - first;
    if (last >= ddpg_last) ++td3_wins;
    per_seed += " [seed " + std::to_string(runs.seeds[s]) + ": td3 " + fmt("%.1f", first) + "->" + fmt("%.1f", last) +
                ", ddpg " + fmt("%.1f", ddpg_last) + "]";
  }
  const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / n;
  double var = 0.0;
  for (double d : diff) var += (d - mean) * (d - mean);
  const double sd = std::sqrt(var / (n - 1));
  const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double p = std::isfinite(t) ? boost::math::cdf(boost::math::complement(dist, t)) : (mean > 0 ? 0.0 : 1.0);
  return {p < 0.05 && mean > 0 && td3_wins >= 4,
          "paired t " + fmt("%.2f", t) + ", one-sided p " + fmt("%.2e", p) + ", TD3 >= DDPG in " +
              std::to_string(td3_wins) + "/5 seeds;" + per_seed};
}

Verdict trajectory_sanity(const LearningRuns& runs) {
  const EnvConfig env = desk_env();
  const WorldConfig& w = env.world;
  std::size_t in_bounds = 0, f1_free = 0, approached = 0, rollouts = 0;
  for (std::size_t s = 0; s < runs.seeds.size(); ++s) {
    for (std::uint64_t r = 0; r < 2; ++r, ++rollouts) {
      const TrajectoryResult t = rollout_policy(runs.td3_actors[s], env, derive_seed(runs.seeds[s], 5000 + r));
      bool inside = true;
      bool any_f1 = false;
      std::vector<double> nearest(t.uav_positions.size());
      for (std::size_t n = 0; n < t.uav_positions.size(); ++n) {
        double total = 0.0;
        for (const Position& p : t.uav_positions[n]) {
          inside = inside && p.x >= 0 && p.x <= w.area_side && p.y >= 0 && p.y <= w.area_side &&
                   p.z >= w.h_min && p.z <= w.h_max;
          double best = std::numeric_limits<double>::infinity();
          for (const Position& b : t.start.busy) best = std::min(best, distance(p, b));
          total += best;
        }
        nearest[n] = total / static_cast<double>(t.uav_positions[n].size());
        any_f1 = any_f1 || t.ledger[n].f1 > 0.0;
      }
      const std::size_t q = nearest.size() / 4;
      const double first = std::accumulate(nearest.begin(), nearest.begin() + q, 0.0) / q;
      const double last = std::accumulate(nearest.end() - q, nearest.end(), 0.0) / q;
      in_bounds += inside;
      f1_free += !any_f1;
      approached += last < first;
    }
  }
  return {in_bounds == rollouts && f1_free >= 8 && approached >= 7,
          std::to_string(in_bounds) + "/" + std::to_string(rollouts) + " in bounds, " + std::to_string(f1_free) +
              "/10 without F1, " + std::to_string(approached) + "/10 closer to busy UDs in the final quarter"};
}

// --- 8 ------------------------------------------------------------------

Verdict greedy_trends() {
  ExperimentConfig cfg;
  cfg.algorithms = {Algorithm::kGreedy};
  cfg.seeds.clear();
  for (std::uint64_t s = 1; s <= 10; ++s) cfg.seeds.push_back(s);
  bool ok = true;
  std::string detail;
  for (const char* axis : {"n_uav", "n_idle", "n_busy", "f_uav_max_ghz"}) {
    const auto rows = summarise(sweep_cells(cfg, axis));
    std::size_t violations = 0;
    bool within_sd = true;
    detail += std::string(" ") + axis + ":";
    for (std::size_t n = 0; n < rows.size(); ++n) {
      detail += " " + fmt("%.1f", rows[n].mean);
      if (n > 0 && rows[n].mean < rows[n - 1].mean) {
        ++violations;
        within_sd = within_sd && rows[n - 1].mean - rows[n].mean <= std::max(rows[n].stddev, rows[n - 1].stddev);
      }
    }
    ok = ok && (violations == 0 || (violations == 1 && within_sd));
  }
  return {ok, "greedy means over 10 seeds:" + detail};
}

// --- 10 -----------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const std::string& args, const fs::path& root) {
  const std::string cmd = "UAVMEC_OUTPUT_ROOT=" + root.string() + " " + UAVMEC_CLI_PATH + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict determinism() {
  const fs::path base = fs::temp_directory_path() / "uavmec_acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);
  ExperimentConfig cfg;
  cfg.name = "determinism";
  cfg.seeds = {1, 2};
  cfg.algorithms = {Algorithm::kTd3, Algorithm::kDdpg, Algorithm::kPpo, Algorithm::kGreedy};
  cfg.env.world.n_busy = 4;
  cfg.env.world.n_idle = 2;
  cfg.env.world.n_uav = 2;
  cfg.env.world.n_slots = 6;
  cfg.td3.hidden = {16, 16};
  cfg.td3.batch_size = 16;
  cfg.td3.warmup_steps = 20;
  cfg.td3.episodes = 10;
  cfg.ppo.hidden = {16, 16};
  cfg.ppo.episodes = 8;
  cfg.ppo.rollout_episodes = 2;
  cfg.ppo.minibatch_size = 8;
  cfg.sweep.n_uav = {1, 2};
  const fs::path cfg_path = base / "config.json";
  std::ofstream(cfg_path) << to_json(cfg);

  const fs::path a = base / "a", b = base / "b";
  const fs::path dir_a = a / "runs" / "determinism", dir_b = b / "runs" / "determinism";
  bool ok = cli("run " + cfg_path.string(), a) == 0 && cli("baseline " + cfg_path.string(), a) == 0 &&
            cli("sweep " + cfg_path.string() + " --axis n_uav", a) == 0 &&
            cli("trajectory " + (dir_a / "actor_td3_seed1.ckpt").string() + " " + cfg_path.string(), a) == 0;
  // Second pass starts from the snapshot the first pass wrote.
  const fs::path snapshot = base / "snapshot.json";
  fs::copy_file(dir_a / "resolved_config.json", snapshot);
  ok = ok && cli("run " + snapshot.string(), b) == 0 && cli("baseline " + snapshot.string(), b) == 0 &&
       cli("sweep " + snapshot.string() + " --axis n_uav", b) == 0 &&
       cli("trajectory " + (dir_b / "actor_td3_seed1.ckpt").string() + " " + snapshot.string(), b) == 0;
  std::size_t compared = 0, differing = 0;
  if (ok) {
    for (const auto& entry : fs::directory_iterator(dir_a)) {
      const auto ext = entry.path().extension();
      if (ext != ".csv" && ext != ".ckpt") continue;
      ++compared;
      const fs::path other = dir_b / entry.path().filename();
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++differing;
    }
  }
  fs::remove_all(base);
  return {ok && compared > 0 && differing == 0,
          std::string(ok ? "" : "CLI step failed; ") + std::to_string(compared) + " CSV/checkpoint files compared, " +
              std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&failures](int id, const char* name, const std::function<Verdict()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !v.pass;
    std::printf("criterion %2d %-22s %s  (%.1f s)  %s\n", id, name, v.pass ? "PASS" : "FAIL", secs, v.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "formula-oracles", formula_oracles);
  report(2, "constraint-fuzzing", constraint_fuzzing);
  report(3, "reward-identity", reward_identity);
  report(4, "brute-force-oracle", brute_force_oracle);
  report(5, "gradient-check", gradient_check);
  report(6, "td3-mechanics", td3_mechanics);

  const auto t0 = std::chrono::steady_clock::now();
  LearningRuns runs;
  bool trained = true;
  std::string train_error;
  try {
    runs = train_desk();
  } catch (const std::exception& e) {
    trained = false;
    train_error = e.what();
  }
  const double train_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("  desk-scale TD3/DDPG training: %.1f s\n", train_secs);
  report(7, "learning-sanity", [&] { return trained ? learning_sanity(runs) : Verdict{false, "training threw: " + train_error}; });
  report(8, "greedy-trends", greedy_trends);
  report(9, "trajectory-sanity", [&] { return trained ? trajectory_sanity(runs) : Verdict{false, "training threw: " + train_error}; });
  report(10, "determinism", determinism);

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
