#include "uavmec/env.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "uavmec/error.hpp"

namespace uavmec {

namespace {

// Short D2D links are floored at the 1 m reference distance of beta0.
constexpr double kMinLinkDistance = 1.0;

std::array<double, 3> softmax3(double a, double b, double c) {
  const double m = std::max({a, b, c});
  const double ea = std::exp(a - m);
  const double eb = std::exp(b - m);
  const double ec = std::exp(c - m);
  const double s = ea + eb + ec;
  return {ea / s, eb / s, ec / s};
}

double unit_level(double raw) { return (std::clamp(raw, -1.0, 1.0) + 1.0) * 0.5; }

double affine(double raw, double lo, double hi) {
  return std::clamp(lo + unit_level(raw) * (hi - lo), lo, hi);
}

}  // namespace

void validate(const EnvConfig& cfg) {
  validate(cfg.world);
  validate(cfg.channel);
  validate(cfg.energy);
  validate(cfg.economics);
  const TaskConfig& t = cfg.task;
  if (!(t.bits_min > 0)) throw ConfigError("task.bits_min", "must be positive");
  if (!(t.bits_max >= t.bits_min)) throw ConfigError("task.bits_max", "must be >= bits_min");
  if (!(t.cycles_min > 0)) throw ConfigError("task.cycles_min", "must be positive");
  if (!(t.cycles_max >= t.cycles_min))
    throw ConfigError("task.cycles_max", "must be >= cycles_min");
  const ResourceLimits& r = cfg.resources;
  if (!(r.f_busy_max_hz > 0)) throw ConfigError("resources.f_busy_max_hz", "must be positive");
  if (!(r.f_idle_max_hz > 0)) throw ConfigError("resources.f_idle_max_hz", "must be positive");
  if (!(r.f_uav_max_hz > 0)) throw ConfigError("resources.f_uav_max_hz", "must be positive");
  if (!(r.tx_power_w >= 0)) throw ConfigError("resources.tx_power_w", "must be >= 0");
  const PenaltyConfig& p = cfg.penalties;
  if (!(p.f1 >= 0)) throw ConfigError("penalties.f1", "must be >= 0");
  if (!(p.f2 >= 0)) throw ConfigError("penalties.f2", "must be >= 0");
  if (!(p.f3 >= 0)) throw ConfigError("penalties.f3", "must be >= 0");
  if (!(p.f4 >= 0)) throw ConfigError("penalties.f4", "must be >= 0");
}

std::size_t action_dim(const EnvConfig& cfg) {
  return action_layout::transcode(cfg.world.n_uav) + 1;
}

std::size_t state_dim(const EnvConfig& cfg) {
  return 4 * cfg.world.n_busy + 4 * cfg.world.n_uav + 1;
}

DecodedAction decode(std::span<const double> raw, const EnvConfig& cfg) {
  namespace L = action_layout;
  const std::size_t k_count = cfg.world.n_uav;
  if (raw.size() != action_dim(cfg)) {
    throw Error("action_shape", "decode: expected " + std::to_string(action_dim(cfg)) +
                                    " entries, got " + std::to_string(raw.size()));
  }
  for (double v : raw) {
    if (!std::isfinite(v)) throw Error("action_shape", "decode: non-finite action entry");
  }
  auto clipped = [&](std::size_t idx) { return std::clamp(raw[idx], -1.0, 1.0); };

  DecodedAction a;
  const auto split = softmax3(clipped(L::kSplit), clipped(L::kSplit + 1), clipped(L::kSplit + 2));
  a.split = {split[0], split[1], split[2]};
  a.f_busy = affine(raw[L::kFBusy], 0.0, cfg.resources.f_busy_max_hz);
  a.f_idle = affine(raw[L::kFIdle], 0.0, cfg.resources.f_idle_max_hz);
  a.f_uav = affine(raw[L::kFUav], 0.0, cfg.resources.f_uav_max_hz);
  a.prices.p_uav = affine(raw[L::kPUav], cfg.economics.p_uav_min, cfg.economics.p_uav_max);
  a.prices.p_idle = affine(raw[L::kPIdle], cfg.economics.p_idle_min, cfg.economics.p_idle_max);
  const auto w =
      softmax3(clipped(L::kWeights), clipped(L::kWeights + 1), clipped(L::kWeights + 2));
  a.weights = {w[0], w[1], w[2]};
  a.commanded_velocity.resize(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    const std::size_t base = L::kVelocity + 3 * k;
    a.commanded_velocity[k] = Vec3{clipped(base), clipped(base + 1), clipped(base + 2)} *
                              cfg.world.v_max;
  }
  const double sel = unit_level(raw[L::transcode(k_count)]);
  const auto bins = static_cast<double>(kBitrateLadderMbps.size());
  a.level.index = std::min(static_cast<std::size_t>(sel * bins), kBitrateLadderMbps.size() - 1);
  return a;
}

double episode_return(std::span<const double> rewards) {
  return std::accumulate(rewards.begin(), rewards.end(), 0.0);
}

OffloadingEnv::OffloadingEnv(EnvConfig cfg) : cfg_(std::move(cfg)) { validate(cfg_); }

std::vector<double> OffloadingEnv::reset(std::uint64_t seed) {
  rng_.seed(seed);
  WorldConfig wc = cfg_.world;
  wc.rng_seed = rng_();
  world_ = spawn_world(wc);
  start_.clear();
  for (const UavState& u : world_.uavs) start_.push_back(u.pos);
  ctx_.idle_partner = pair_idle(world_.busy, world_.idle);
  slot_ = 0;
  done_ = false;
  ledger_ = LedgerEntry{};
  begin_slot();
  return observe();
}

void OffloadingEnv::begin_slot() {
  const std::size_t n_busy = world_.busy.size();
  ctx_.bits.resize(n_busy);
  for (double& b : ctx_.bits) b = uniform(rng_, cfg_.task.bits_min, cfg_.task.bits_max);
  ctx_.cycles_per_bit = uniform(rng_, cfg_.task.cycles_min, cfg_.task.cycles_max);
  ctx_.fading_uav.resize(n_busy);
  ctx_.fading_d2d.resize(n_busy);
  for (std::size_t i = 0; i < n_busy; ++i) {
    ctx_.fading_uav[i] = small_scale_power(cfg_.channel.uav.rician_k, rng_);
    ctx_.fading_d2d[i] = small_scale_power(cfg_.channel.d2d.rician_k, rng_);
  }
  rebuild_links();
}

void OffloadingEnv::rebuild_links() {
  const std::size_t n_busy = world_.busy.size();
  const double tx = cfg_.resources.tx_power_w;
  const double noise = cfg_.channel.noise_power_w;
  ctx_.assoc = associate(world_.busy, world_.uavs);
  ctx_.idle_load.assign(world_.idle.size(), 0);
  for (std::size_t j : ctx_.idle_partner) ++ctx_.idle_load[j];
  ctx_.gain_uav.resize(n_busy);
  ctx_.gain_d2d.resize(n_busy);
  ctx_.rate_uav.resize(n_busy);
  ctx_.rate_d2d.resize(n_busy);
  for (std::size_t i = 0; i < n_busy; ++i) {
    const Position& ud = world_.busy[i];
    const double d_uav = link_distance(ud, world_.uavs[*ctx_.assoc.uav[i]].pos);
    const double d_d2d =
        std::max(link_distance(ud, world_.idle[ctx_.idle_partner[i]]), kMinLinkDistance);
    ctx_.gain_uav[i] = path_gain(cfg_.channel.uav, d_uav) * ctx_.fading_uav[i];
    ctx_.gain_d2d[i] = path_gain(cfg_.channel.d2d, d_d2d) * ctx_.fading_d2d[i];
    ctx_.rate_uav[i] = rate(cfg_.channel.uav.bandwidth_hz, tx, ctx_.gain_uav[i], noise);
    ctx_.rate_d2d[i] = rate(cfg_.channel.d2d.bandwidth_hz, tx, ctx_.gain_d2d[i], noise);
  }
  ctx_.min_uav_distance = pairwise_min_distance(world_.uavs);
}

void OffloadingEnv::set_world(WorldState world) {
  if (world.busy.size() != cfg_.world.n_busy || world.idle.size() != cfg_.world.n_idle ||
      world.uavs.size() != cfg_.world.n_uav) {
    throw Error("invalid_world", "set_world: entity counts differ from the configuration");
  }
  world_ = std::move(world);
  if (slot_ == 0) {
    start_.clear();
    for (const UavState& u : world_.uavs) start_.push_back(u.pos);
  }
  ctx_.idle_partner = pair_idle(world_.busy, world_.idle);
  rebuild_links();
}

double OffloadingEnv::evaluate(const DecodedAction& a, LedgerEntry& out) const {
  if (done_) throw Error("episode_done", "step called after the episode finished");
  const WorldConfig& w = cfg_.world;
  const EnergyParams& ep = cfg_.energy;
  const EconomicsParams& econ = cfg_.economics;
  const std::size_t n_busy = world_.busy.size();
  const std::size_t n_idle = world_.idle.size();
  const std::size_t n_uav = world_.uavs.size();
  if (a.commanded_velocity.size() != n_uav) {
    throw Error("action_shape", "evaluate: one commanded velocity per UAV is required");
  }
  const double tx = cfg_.resources.tx_power_w;

  out.slot = slot_;
  out.terminal = slot_ + 1 == w.n_slots;
  out.busy.resize(n_busy);
  out.uavs.resize(n_uav);
  out.idle_energy.assign(n_idle, 0.0);
  for (UavLedger& u : out.uavs) u.offloaded_bits = 0.0;

  for (std::size_t i = 0; i < n_busy; ++i) {
    const SlotTask task{ctx_.bits[i], ctx_.cycles_per_bit};
    BusyLedger& b = out.busy[i];
    b.uav = *ctx_.assoc.uav[i];
    b.idle = ctx_.idle_partner[i];
    b.t_local = local_delay(task, a.split, a.f_busy);
    b.e_local = local_energy(task, a.split, a.f_busy, ep.kappa);
    b.t_off_uav = uplink_delay_uav(task, a.split, ctx_.rate_uav[i]);
    b.e_off_uav = uplink_energy(tx, b.t_off_uav);
    b.t_off_d2d = d2d_delay(task, a.split, ctx_.rate_d2d[i]);
    b.e_off_d2d = uplink_energy(tx, b.t_off_d2d);
    const double f_share = a.f_idle / static_cast<double>(ctx_.idle_load[b.idle]);
    b.t_idle = idle_compute_delay(task, a.split, f_share);
    out.idle_energy[b.idle] += idle_compute_energy(task, a.split, f_share, ep.kappa);
    out.uavs[b.uav].offloaded_bits += a.split.eps1 * task.bits;
  }

  const double ck = transcode_cycles_per_bit(a.level, ep);
  const double beta_k = uav_inconvenience(a.split.eps1, econ.eps1_cap);
  bool over_budget = false;
  bool over_speed = false;
  for (std::size_t k = 0; k < n_uav; ++k) {
    UavLedger& u = out.uavs[k];
    const UavState& cur = world_.uavs[k];
    u.next = advance_uav(cur, a.commanded_velocity[k], w.slot_seconds, w);
    u.speed = norm(u.next.vel);
    u.e_fly = flight_energy(u.speed, w.slot_seconds, ep);
    u.t_transcode = transcode_time(ck * u.offloaded_bits, a.f_uav);
    u.e_transcode = transcode_energy(a.f_uav, u.t_transcode, ep);
    u.transcoded_bits = transcoded_bits(u.offloaded_bits, a.level);
    u.t_compute = uav_compute_delay(u.transcoded_bits, ck, a.f_uav);
    u.e_compute = uav_compute_energy(a.f_uav, u.transcoded_bits, ck, ep.kappa);
    u.e_slot = u.e_fly + u.e_transcode + u.e_compute;
    over_budget = over_budget || u.e_slot > cur.remaining_energy;
    over_speed = over_speed || norm(a.commanded_velocity[k]) > w.v_max;
    u.next.remaining_energy = std::max(cur.remaining_energy - u.e_slot, 0.0);
  }

  const double f_uav_ghz = a.f_uav * 1e-9;
  const double f_idle_ghz = a.f_idle * 1e-9;
  const double f_busy_ghz = a.f_busy * 1e-9;
  out.uav_parties.resize(n_uav);
  for (std::size_t k = 0; k < n_uav; ++k) {
    const UavLedger& u = out.uavs[k];
    out.uav_parties[k] = {f_uav_ghz, a.prices.p_uav, u.e_transcode, u.e_fly, u.e_compute, beta_k};
  }
  out.idle_parties.resize(n_idle);
  for (std::size_t j = 0; j < n_idle; ++j) {
    out.idle_parties[j] = {f_idle_ghz, a.prices.p_idle, out.idle_energy[j], econ.beta_idle};
  }
  out.busy_parties.resize(n_busy);
  for (std::size_t i = 0; i < n_busy; ++i) {
    const BusyLedger& b = out.busy[i];
    out.busy_parties[i] = {f_busy_ghz, b.e_local, b.e_off_uav, b.e_off_d2d, econ.beta_busy};
  }
  const auto incentives = IncentiveFactors::from_caps(
      cfg_.resources.f_busy_max_hz, cfg_.resources.f_idle_max_hz, cfg_.resources.f_uav_max_hz);
  out.u_uav = uav_utility(out.uav_parties, econ.energy_price);
  out.u_idle = idle_utility(out.idle_parties, econ.energy_price);
  out.u_busy = busy_utility(out.busy_parties, out.idle_parties, out.uav_parties, incentives, econ);
  out.q = system_revenue(out.u_uav, out.u_idle, out.u_busy, a.weights);

  const PenaltyConfig& pen = cfg_.penalties;
  out.f1 = ctx_.min_uav_distance < w.d_min ? pen.f1 : 0.0;
  out.f2 = over_budget ? pen.f2 : 0.0;
  out.f3 = over_speed ? pen.f3 : 0.0;
  out.f4 = 0.0;
  if (out.terminal) {
    double displacement = 0.0;
    for (std::size_t k = 0; k < n_uav; ++k) displacement += distance(out.uavs[k].next.pos, start_[k]);
    out.f4 = pen.f4 * (displacement / static_cast<double>(n_uav)) / w.area_side;
  }
  out.penalty = out.f1 + out.f2 + out.f3 + out.f4;
  out.reward = out.q - out.penalty;
  return out.reward;
}

Environment::Step OffloadingEnv::step(std::span<const double> raw) {
  return step(decode(raw, cfg_));
}

Environment::Step OffloadingEnv::step(const DecodedAction& action) {
  evaluate(action, ledger_);
  for (std::size_t k = 0; k < world_.uavs.size(); ++k) world_.uavs[k] = ledger_.uavs[k].next;
  ++slot_;
  done_ = slot_ >= cfg_.world.n_slots;
  if (!done_) begin_slot();
  Step s;
  s.state = observe();
  s.reward = ledger_.reward;
  s.done = done_;
  s.penalties = {ledger_.f1, ledger_.f2, ledger_.f3, ledger_.f4};
  return s;
}

std::vector<double> OffloadingEnv::observe() const {
  const WorldConfig& w = cfg_.world;
  const TaskConfig& t = cfg_.task;
  auto unit = [](double v, double lo, double hi) {
    return hi > lo ? std::clamp((v - lo) / (hi - lo), 0.0, 1.0) : 0.0;
  };
  std::vector<double> s;
  s.reserve(state_dim());
  for (std::size_t i = 0; i < world_.busy.size(); ++i) {
    const Position& p = world_.busy[i];
    s.push_back(unit(p.x, 0.0, w.area_side));
    s.push_back(unit(p.y, 0.0, w.area_side));
    s.push_back(unit(p.z, 0.0, w.h_max));
    s.push_back(ctx_.bits.empty() ? 0.0 : unit(ctx_.bits[i], t.bits_min, t.bits_max));
  }
  s.push_back(unit(ctx_.cycles_per_bit, t.cycles_min, t.cycles_max));
  for (const UavState& u : world_.uavs) {
    s.push_back(unit(u.pos.x, 0.0, w.area_side));
    s.push_back(unit(u.pos.y, 0.0, w.area_side));
    s.push_back(unit(u.pos.z, w.h_min, w.h_max));
    s.push_back(unit(u.remaining_energy, 0.0, w.battery_joules));
  }
  return s;
}

}  // namespace uavmec
