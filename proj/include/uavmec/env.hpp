#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uavmec/channel.hpp"
#include "uavmec/compute_energy.hpp"
#include "uavmec/economics.hpp"
#include "uavmec/environment.hpp"
#include "uavmec/rng.hpp"
#include "uavmec/world.hpp"

namespace uavmec {

struct TaskConfig {
  double bits_min = 1.5e6;
  double bits_max = 3.5e6;
  double cycles_min = 700.0;
  double cycles_max = 1500.0;
};

struct ResourceLimits {
  double f_busy_max_hz = 1.5e9;
  double f_idle_max_hz = 1.5e9;
  double f_uav_max_hz = 30e9;
  double tx_power_w = 0.5;  // fixed P_ik = P_ij = p_d,max
};

struct PenaltyConfig {
  double f1 = 50.0;  // UAV pair closer than d_min
  double f2 = 50.0;  // battery budget exceeded
  double f3 = 50.0;  // commanded speed above v_max
  double f4 = 20.0;  // terminal, scaled by mean start/end displacement / area_side
};

struct EnvConfig {
  WorldConfig world;
  ChannelParams channel;
  EnergyParams energy;
  TaskConfig task;
  ResourceLimits resources;
  EconomicsParams economics;
  PenaltyConfig penalties;
};

void validate(const EnvConfig& cfg);

// Raw action layout, all entries in [-1, 1]:
//   [0,3)   split logits (UAV, idle UD, local)
//   3,4,5   f_i, f_j, f_k levels
//   6,7     p_k, p_j levels
//   [8,11)  weight logits (UAVs, idle UDs, busy UDs)
//   [11, 11 + 3K)  per-UAV velocity components, scaled by v_max
//   11 + 3K transcode selector
namespace action_layout {
inline constexpr std::size_t kSplit = 0;
inline constexpr std::size_t kFBusy = 3;
inline constexpr std::size_t kFIdle = 4;
inline constexpr std::size_t kFUav = 5;
inline constexpr std::size_t kPUav = 6;
inline constexpr std::size_t kPIdle = 7;
inline constexpr std::size_t kWeights = 8;
inline constexpr std::size_t kVelocity = 11;
constexpr std::size_t transcode(std::size_t n_uav) { return kVelocity + 3 * n_uav; }
}  // namespace action_layout

std::size_t action_dim(const EnvConfig& cfg);
// 4 per busy UD (x, y, z, D), shared C, 4 per UAV (x, y, z, E_kr).
std::size_t state_dim(const EnvConfig& cfg);

struct DecodedAction {
  OffloadSplit split;
  double f_busy = 0.0;  // Hz
  double f_idle = 0.0;
  double f_uav = 0.0;
  PriceQuote prices;
  Weights weights;
  std::vector<Vec3> commanded_velocity;  // before speed clamping
  TranscodeLevel level;
};

// Softmax for the two simplex groups, affine maps for boxes, uniform bins for
// the transcode ladder. Raw entries are clipped to [-1, 1]; non-finite entries
// and a wrong length throw.
DecodedAction decode(std::span<const double> raw, const EnvConfig& cfg);

// Per-slot quantities that do not depend on the action.
struct SlotContext {
  std::vector<double> bits;  // D_i[n]
  double cycles_per_bit = 0.0;  // C[n]
  AssociationMap assoc;
  std::vector<std::size_t> idle_partner;
  std::vector<std::size_t> idle_load;  // busy UDs paired with each idle UD
  std::vector<double> fading_uav;      // small-scale power, busy UD -> UAV
  std::vector<double> fading_d2d;      // small-scale power, busy UD -> idle UD
  std::vector<double> gain_uav;
  std::vector<double> gain_d2d;
  std::vector<double> rate_uav;
  std::vector<double> rate_d2d;
  double min_uav_distance = 0.0;
};

struct BusyLedger {
  std::size_t uav = 0;
  std::size_t idle = 0;
  double t_local = 0.0;
  double e_local = 0.0;
  double t_off_uav = 0.0;
  double e_off_uav = 0.0;
  double t_off_d2d = 0.0;
  double e_off_d2d = 0.0;
  double t_idle = 0.0;
};

struct UavLedger {
  double offloaded_bits = 0.0;
  double transcoded_bits = 0.0;
  double t_transcode = 0.0;
  double e_transcode = 0.0;
  double t_compute = 0.0;
  double e_compute = 0.0;
  double speed = 0.0;
  double e_fly = 0.0;
  double e_slot = 0.0;
  UavState next;  // state after the slot's motion and energy draw
};

struct LedgerEntry {
  std::size_t slot = 0;
  bool terminal = false;
  std::vector<BusyLedger> busy;
  std::vector<UavLedger> uavs;
  std::vector<double> idle_energy;
  std::vector<BusyParty> busy_parties;
  std::vector<IdleParty> idle_parties;
  std::vector<UavParty> uav_parties;
  double u_uav = 0.0;
  double u_idle = 0.0;
  double u_busy = 0.0;
  double q = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double f4 = 0.0;
  double penalty = 0.0;  // f1 + f2 + f3 + f4
  double reward = 0.0;   // q - penalty
};

double episode_return(std::span<const double> rewards);

class OffloadingEnv final : public Environment {
 public:
  explicit OffloadingEnv(EnvConfig cfg);

  std::vector<double> reset(std::uint64_t seed) override;
  Step step(std::span<const double> raw) override;
  Step step(const DecodedAction& action);

  std::size_t state_dim() const override { return uavmec::state_dim(cfg_); }
  std::size_t action_dim() const override { return uavmec::action_dim(cfg_); }

  // Reward and full breakdown for `action` in the current slot without
  // changing the environment. step() commits exactly this evaluation.
  double evaluate(const DecodedAction& action, LedgerEntry& out) const;

  std::vector<double> observe() const;

  // Replaces entity placement mid-episode; association and rates are rebuilt
  // on the current slot's task and fading. At slot 0 the start positions used
  // by the return-to-start penalty are replaced too.
  void set_world(WorldState world);

  const EnvConfig& config() const { return cfg_; }
  const WorldState& world() const { return world_; }
  const SlotContext& slot_context() const { return ctx_; }
  const LedgerEntry& last_ledger() const { return ledger_; }
  const std::vector<Position>& start_positions() const { return start_; }
  std::size_t slot() const { return slot_; }
  bool done() const { return done_; }

 private:
  void begin_slot();
  void rebuild_links();

  EnvConfig cfg_;
  Rng rng_;
  WorldState world_;
  std::vector<Position> start_;
  SlotContext ctx_;
  LedgerEntry ledger_;
  std::size_t slot_ = 0;
  bool done_ = true;
};

}  // namespace uavmec
