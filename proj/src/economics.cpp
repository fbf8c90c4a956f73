#include "uavmec/economics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavmec/error.hpp"

namespace uavmec {

void validate(const EconomicsParams& p) {
  auto check = [](bool ok, const char* name, const char* what) {
    if (!ok) throw ConfigError(std::string("economics.") + name, what);
  };
  check(std::isfinite(p.p_uav_min) && p.p_uav_min >= 0, "p_uav_min", "must be >= 0");
  check(std::isfinite(p.p_uav_max) && p.p_uav_max >= p.p_uav_min, "p_uav_max",
        "must be >= p_uav_min");
  check(std::isfinite(p.p_idle_min) && p.p_idle_min >= 0, "p_idle_min", "must be >= 0");
  check(std::isfinite(p.p_idle_max) && p.p_idle_max >= p.p_idle_min, "p_idle_max",
        "must be >= p_idle_min");
  check(std::isfinite(p.energy_price) && p.energy_price >= 0, "energy_price", "must be >= 0");
  check(std::isfinite(p.beta_busy) && p.beta_busy > 0, "beta_busy", "must be positive");
  check(std::isfinite(p.beta_idle) && p.beta_idle > 0, "beta_idle", "must be positive");
  check(p.eps1_cap >= 0 && p.eps1_cap < 1, "eps1_cap", "must lie in [0, 1)");
}

IncentiveFactors IncentiveFactors::from_caps(double f_busy_max, double f_idle_max,
                                             double f_uav_max) {
  IncentiveFactors u;
  u.busy = f_busy_max / ((f_busy_max + f_uav_max + f_idle_max) / 3.0);
  u.uav = f_uav_max / f_busy_max;
  u.idle = f_idle_max / f_busy_max;
  return u;
}

double uav_inconvenience(double eps1, double cap) { return 1.0 / (1.0 - std::min(eps1, cap)); }

double uav_utility(std::span<const UavParty> uavs, double energy_price) {
  double total = 0.0;
  for (const UavParty& k : uavs) {
    total += k.f_ghz * k.price -
             k.beta * (k.e_transcode + k.e_fly + k.e_compute) * energy_price;
  }
  return total;
}

double idle_utility(std::span<const IdleParty> idle, double energy_price) {
  double total = 0.0;
  for (const IdleParty& j : idle) {
    total += j.f_ghz * j.price - j.beta * j.e_compute * energy_price;
  }
  return total;
}

double busy_utility(std::span<const BusyParty> busy, std::span<const IdleParty> idle,
                    std::span<const UavParty> uavs, const IncentiveFactors& incentives,
                    const EconomicsParams& p) {
  const double offload_sign = p.offload_energy_credit ? -1.0 : 1.0;
  double total = 0.0;
  for (const BusyParty& i : busy) {
    const double energy = i.e_local + offload_sign * (i.e_off_uav + i.e_off_d2d);
    total += incentives.busy * i.f_ghz - i.beta * energy * p.energy_price;
  }
  for (const IdleParty& j : idle) {
    total += incentives.idle * j.f_ghz - j.f_ghz * j.price;
  }
  for (const UavParty& k : uavs) {
    total += incentives.uav * k.f_ghz - k.price * k.f_ghz;
  }
  return total;
}

double system_revenue(double u_uav, double u_idle, double u_busy, const Weights& w) {
  return w.w1 * u_uav + w.w2 * u_idle + w.w3 * u_busy;
}

}  // namespace uavmec
