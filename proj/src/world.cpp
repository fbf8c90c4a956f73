#include "uavmec/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uavmec/error.hpp"
#include "uavmec/rng.hpp"

namespace uavmec {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(std::string("world.") + field, what);
}

}  // namespace

void validate(const WorldConfig& cfg) {
  require(std::isfinite(cfg.area_side) && cfg.area_side > 0, "area_side", "must be positive");
  require(cfg.n_busy > 0, "n_busy", "must be positive");
  require(cfg.n_idle > 0, "n_idle", "must be positive");
  require(cfg.n_uav > 0, "n_uav", "must be positive");
  require(std::isfinite(cfg.h_min) && cfg.h_min > 0, "h_min", "must be positive");
  require(std::isfinite(cfg.h_max) && cfg.h_max > cfg.h_min, "h_max", "must exceed h_min");
  require(std::isfinite(cfg.v_max) && cfg.v_max > 0, "v_max", "must be positive");
  require(std::isfinite(cfg.d_min) && cfg.d_min > 0, "d_min", "must be positive");
  require(std::isfinite(cfg.slot_seconds) && cfg.slot_seconds > 0, "slot_seconds",
          "must be positive");
  require(cfg.n_slots > 0, "n_slots", "must be positive");
  require(std::isfinite(cfg.battery_joules) && cfg.battery_joules > 0, "battery_joules",
          "must be positive");
}

std::size_t AssociationMap::served_by(std::size_t k) const {
  return static_cast<std::size_t>(
      std::count_if(uav.begin(), uav.end(), [k](const auto& a) { return a && *a == k; }));
}

WorldState spawn_world(const WorldConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.rng_seed);
  WorldState w;
  w.busy.reserve(cfg.n_busy);
  w.idle.reserve(cfg.n_idle);
  w.uavs.reserve(cfg.n_uav);
  for (std::size_t i = 0; i < cfg.n_busy; ++i) {
    const double x = uniform(rng, 0.0, cfg.area_side);
    const double y = uniform(rng, 0.0, cfg.area_side);
    w.busy.push_back({x, y, 0.0});
  }
  for (std::size_t j = 0; j < cfg.n_idle; ++j) {
    const double x = uniform(rng, 0.0, cfg.area_side);
    const double y = uniform(rng, 0.0, cfg.area_side);
    w.idle.push_back({x, y, 0.0});
  }
  for (std::size_t k = 0; k < cfg.n_uav; ++k) {
    UavState u;
    u.id = k;
    u.pos.x = uniform(rng, 0.0, cfg.area_side);
    u.pos.y = uniform(rng, 0.0, cfg.area_side);
    u.pos.z = uniform(rng, cfg.h_min, cfg.h_max);
    u.remaining_energy = cfg.battery_joules;
    w.uavs.push_back(u);
  }
  return w;
}

Vec3 clamp_speed(Vec3 v, double v_max) {
  const double speed = norm(v);
  if (speed > v_max) return v * (v_max / speed);
  return v;
}

UavState advance_uav(const UavState& u, Vec3 commanded_vel, double dt,
                     const WorldConfig& bounds) {
  UavState next = u;
  next.vel = clamp_speed(commanded_vel, bounds.v_max);
  const Vec3 accel = (next.vel - u.vel) / dt;
  next.pos = u.pos + u.vel * dt + accel * (0.5 * dt * dt);
  next.pos.x = std::clamp(next.pos.x, 0.0, bounds.area_side);
  next.pos.y = std::clamp(next.pos.y, 0.0, bounds.area_side);
  next.pos.z = std::clamp(next.pos.z, bounds.h_min, bounds.h_max);
  return next;
}

double pairwise_min_distance(std::span<const UavState> uavs) {
  if (uavs.empty()) throw Error("invalid_world", "pairwise_min_distance: no UAVs");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < uavs.size(); ++a) {
    for (std::size_t b = a + 1; b < uavs.size(); ++b) {
      best = std::min(best, distance(uavs[a].pos, uavs[b].pos));
    }
  }
  return best;
}

AssociationMap associate(std::span<const Position> busy, std::span<const UavState> uavs) {
  if (uavs.empty()) throw Error("invalid_world", "associate: no UAVs");
  AssociationMap map;
  map.uav.reserve(busy.size());
  for (const Position& ud : busy) {
    std::size_t best = 0;
    double best_d = distance(ud, uavs[0].pos);
    for (std::size_t k = 1; k < uavs.size(); ++k) {
      const double d = distance(ud, uavs[k].pos);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    map.uav.emplace_back(best);
  }
  return map;
}

std::vector<std::size_t> pair_idle(std::span<const Position> busy,
                                   std::span<const Position> idle) {
  if (idle.empty()) throw Error("invalid_world", "pair_idle: no idle UDs");
  std::vector<std::size_t> partner;
  partner.reserve(busy.size());
  for (const Position& ud : busy) {
    std::size_t best = 0;
    double best_d = distance(ud, idle[0]);
    for (std::size_t j = 1; j < idle.size(); ++j) {
      const double d = distance(ud, idle[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    partner.push_back(best);
  }
  return partner;
}

}  // namespace uavmec
