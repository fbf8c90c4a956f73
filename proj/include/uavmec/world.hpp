#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uavmec/vec3.hpp"

namespace uavmec {

struct WorldConfig {
  double area_side = 200.0;        // m, square experiment region
  std::size_t n_busy = 20;         // I
  std::size_t n_idle = 10;         // J
  std::size_t n_uav = 5;           // K
  double h_min = 100.0;            // m
  double h_max = 200.0;            // m
  double v_max = 25.0;             // m/s
  double d_min = 3.0;              // m, UAV safety distance
  double slot_seconds = 1.0;       // slot length
  std::size_t n_slots = 50;        // N
  double battery_joules = 20000.0; // E_r
  std::uint64_t rng_seed = 1;
};

// Throws ConfigError naming the first invalid field.
void validate(const WorldConfig& cfg);

struct UavState {
  std::size_t id = 0;
  Position pos;
  Vec3 vel;
  double remaining_energy = 0.0;  // J
};

struct WorldState {
  std::vector<Position> busy;
  std::vector<Position> idle;
  std::vector<UavState> uavs;
};

// uav[i] is the UAV serving busy UD i, if any. At most one per UD by
// construction, which is the whole content of the matching constraint.
struct AssociationMap {
  std::vector<std::optional<std::size_t>> uav;

  std::size_t served_by(std::size_t k) const;
};

WorldState spawn_world(const WorldConfig& cfg);

// Treats `commanded_vel` as the control for the slot: speed is clamped to
// v_max, acceleration is derived as (v_new - v_old) / dt and the kinematic
// update u + v_old dt + a dt^2 / 2 is applied, then the position is clamped
// to the area box and altitude band.
UavState advance_uav(const UavState& u, Vec3 commanded_vel, double dt, const WorldConfig& bounds);

// Velocity after speed clamping, shared by advance_uav and the energy model.
Vec3 clamp_speed(Vec3 v, double v_max);

// Minimum Euclidean distance over unordered UAV pairs; +inf for one UAV.
// Throws on an empty list.
double pairwise_min_distance(std::span<const UavState> uavs);

// Nearest UAV in 3D, ties to the lowest index. Throws on an empty UAV list.
AssociationMap associate(std::span<const Position> busy, std::span<const UavState> uavs);

// Nearest idle UD (ground distance) for every busy UD, ties to the lowest
// index. Throws on an empty idle list.
std::vector<std::size_t> pair_idle(std::span<const Position> busy, std::span<const Position> idle);

}  // namespace uavmec
