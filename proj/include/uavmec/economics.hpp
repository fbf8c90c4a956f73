#pragma once

#include <span>

namespace uavmec {

// Prices are in currency per GHz of allocated compute.
struct PriceQuote {
  double p_uav = 0.0;
  double p_idle = 0.0;
};

struct EconomicsParams {
  double p_uav_min = 0.1;
  double p_uav_max = 2.0;
  double p_idle_min = 0.1;
  double p_idle_max = 2.0;
  double energy_price = 0.01;  // currency per joule in every energy-cost term
  double beta_busy = 1.0;      // beta_i
  double beta_idle = 1.0;      // beta_j
  double eps1_cap = 0.95;      // eps1 is clipped here before 1 / (1 - eps1)
  // true: busy-UD utility charges beta_i (E_local - E_off - E_off_d2d);
  // false: all three energies are costs.
  bool offload_energy_credit = true;
};

void validate(const EconomicsParams& p);

// u_i, u_ki, u_ji from the three compute caps.
struct IncentiveFactors {
  double busy = 0.0;  // u_i
  double uav = 0.0;   // u_ki
  double idle = 0.0;  // u_ji

  static IncentiveFactors from_caps(double f_busy_max, double f_idle_max, double f_uav_max);
};

struct InconvenienceFactors {
  double uav = 1.0;   // beta_k
  double idle = 1.0;  // beta_j
  double busy = 1.0;  // beta_i
};

// 1 / (1 - min(eps1, cap)).
double uav_inconvenience(double eps1, double cap);

struct Weights {
  double w1 = 1.0 / 3.0;  // UAVs
  double w2 = 1.0 / 3.0;  // idle UDs
  double w3 = 1.0 / 3.0;  // busy UDs
};

struct UavParty {
  double f_ghz = 0.0;
  double price = 0.0;
  double e_transcode = 0.0;
  double e_fly = 0.0;
  double e_compute = 0.0;
  double beta = 1.0;
};

struct IdleParty {
  double f_ghz = 0.0;
  double price = 0.0;
  double e_compute = 0.0;
  double beta = 1.0;
};

struct BusyParty {
  double f_ghz = 0.0;
  double e_local = 0.0;
  double e_off_uav = 0.0;
  double e_off_d2d = 0.0;
  double beta = 1.0;
};

// Sum over UAVs of f p - beta (E_transcode + E_fly + E_compute) * energy_price.
double uav_utility(std::span<const UavParty> uavs, double energy_price);

// Sum over idle UDs of f p - beta E_compute * energy_price.
double idle_utility(std::span<const IdleParty> idle, double energy_price);

// Busy-UD utility: own compute, purchases from idle UDs and purchases from UAVs.
double busy_utility(std::span<const BusyParty> busy, std::span<const IdleParty> idle,
                    std::span<const UavParty> uavs, const IncentiveFactors& incentives,
                    const EconomicsParams& p);

double system_revenue(double u_uav, double u_idle, double u_busy, const Weights& w);

}  // namespace uavmec
