#include "uavmec/compute_energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uavmec/error.hpp"

namespace uavmec {

namespace {

// work / speed with 0 work taking no time and positive work on a stalled
// resource taking forever.
double safe_divide(double work, double speed) {
  if (work == 0.0) return 0.0;
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  return work / speed;
}

}  // namespace

void validate(const EnergyParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0)) throw ConfigError(std::string("energy.") + name, "must be positive");
  };
  positive(p.kappa, "kappa");
  positive(p.s1, "s1");
  positive(p.y1, "y1");
  positive(p.m1, "m1");
  positive(p.m2, "m2");
  positive(p.blade_power_w, "blade_power_w");
  positive(p.induced_power_w, "induced_power_w");
  positive(p.tip_speed, "tip_speed");
  positive(p.rotor_induced_speed, "rotor_induced_speed");
  positive(p.air_density, "air_density");
  positive(p.fuselage_drag_ratio, "fuselage_drag_ratio");
  positive(p.rotor_area, "rotor_area");
  positive(p.rotor_solidity, "rotor_solidity");
}

double local_delay(const SlotTask& t, const OffloadSplit& s, double f_local) {
  return safe_divide(s.eps3 * t.bits * t.cycles_per_bit, f_local);
}

double local_energy(const SlotTask& t, const OffloadSplit& s, double f_local, double kappa) {
  return kappa * f_local * f_local * s.eps3 * t.bits * t.cycles_per_bit;
}

double flight_power(double v, const EnergyParams& p) {
  const double v2 = v * v;
  const double v4 = v2 * v2;
  const double vf2 = p.rotor_induced_speed * p.rotor_induced_speed;
  const double parasite =
      0.5 * p.fuselage_drag_ratio * p.air_density * p.rotor_solidity * p.rotor_area * v2 * v;
  const double blade = p.blade_power_w * (1.0 + 3.0 * v2 / (p.tip_speed * p.tip_speed));
  const double induced_den = p.classical_induced_term ? 4.0 * vf2 * vf2 : 4.0 * vf2;
  const double inner = std::sqrt(1.0 + v4 / induced_den) - v2 / (2.0 * vf2);
  const double induced = p.induced_power_w * std::sqrt(std::max(inner, 0.0));
  return parasite + blade + induced;
}

double flight_energy(double v, double dt, const EnergyParams& p) {
  return flight_power(v, p) * dt;
}

double uplink_delay_uav(const SlotTask& t, const OffloadSplit& s, std::optional<double> rate) {
  const double bits = s.eps1 * t.bits;
  if (bits == 0.0) return 0.0;
  if (!rate) throw Error("unassociated_offload", "eps1 > 0 without an associated UAV");
  return safe_divide(bits, *rate);
}

double uplink_energy(double tx_power, double delay) { return tx_power * delay; }

double transcode_cycles_per_bit(const TranscodeLevel& level, const EnergyParams& p) {
  return p.m1 * std::pow(level.bitrate_mbps(), p.m2);
}

double transcode_time(double cycles_total, double f_uav) {
  return safe_divide(cycles_total, f_uav);
}

double transcode_energy(double f_uav, double time, const EnergyParams& p) {
  if (f_uav == 0.0 || time == 0.0) return 0.0;
  return p.s1 * std::pow(f_uav, p.y1) * time;
}

double transcoded_bits(double offloaded_bits, const TranscodeLevel& level) {
  return offloaded_bits * (level.bitrate_mbps() / kOriginalBitrateMbps);
}

double transcoded_bits(const SlotTask& t, const OffloadSplit& s, const TranscodeLevel& level) {
  return transcoded_bits(s.eps1 * t.bits, level);
}

double uav_compute_delay(double d_prime, double ck, double f_uav) {
  return safe_divide(d_prime * ck, f_uav);
}

double uav_compute_energy(double f_uav, double d_prime, double ck, double kappa) {
  return kappa * f_uav * f_uav * d_prime * ck;
}

double d2d_delay(const SlotTask& t, const OffloadSplit& s, double rate_d2d) {
  return safe_divide(s.eps2 * t.bits, rate_d2d);
}

double idle_compute_delay(const SlotTask& t, const OffloadSplit& s, double f_idle) {
  return safe_divide(s.eps2 * t.bits * t.cycles_per_bit, f_idle);
}

double idle_compute_energy(const SlotTask& t, const OffloadSplit& s, double f_idle,
                           double kappa) {
  return kappa * f_idle * f_idle * s.eps2 * t.bits * t.cycles_per_bit;
}

}  // namespace uavmec
