#pragma once

#include <array>
#include <cstddef>
#include <optional>

namespace uavmec {

// Per-slot video workload of one busy UD.
struct SlotTask {
  double bits = 0.0;            // D_i[n]
  double cycles_per_bit = 0.0;  // C[n]
};

// Fractions of the slot's task sent to the UAV, to the idle UD, and kept local.
struct OffloadSplit {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps3 = 1.0;
};

inline constexpr std::array<double, 5> kBitrateLadderMbps = {0.4, 0.8, 1.5, 2.0, 2.3};
inline constexpr double kOriginalBitrateMbps = 2.75;

struct TranscodeLevel {
  std::size_t index = kBitrateLadderMbps.size() - 1;

  double bitrate_mbps() const { return kBitrateLadderMbps[index]; }
};

struct EnergyParams {
  double kappa = 1e-27;   // effective switched capacitance of UD/UAV CPUs
  double s1 = 1e-27;      // transcoding energy coefficient
  double y1 = 3.0;        // transcoding energy exponent
  double m1 = 1.54;       // cycles-per-bit model C_k = m1 * b^m2
  double m2 = 0.08;
  double blade_power_w = 59.03;    // Pa
  double induced_power_w = 79.07;  // Pb
  double tip_speed = 120.0;        // Utip, m/s
  double rotor_induced_speed = 3.6;  // v_f, m/s
  double air_density = 1.225;      // rho, kg/m^3
  double fuselage_drag_ratio = 0.6;  // d_c
  double rotor_area = 0.5030;      // A_c, m^2
  double rotor_solidity = 0.05;    // g
  // false: induced term uses v^4 / (4 v_f^2) literally.
  // true: the classical rotary-wing v^4 / (4 v_f^4).
  bool classical_induced_term = false;
};

void validate(const EnergyParams& p);

// Local compute on the busy UD.
double local_delay(const SlotTask& t, const OffloadSplit& s, double f_local);
double local_energy(const SlotTask& t, const OffloadSplit& s, double f_local, double kappa);

// Rotary-wing propulsion power at speed v and the slot's flight energy.
double flight_power(double v, const EnergyParams& p);
double flight_energy(double v, double dt, const EnergyParams& p);

// Upload of the eps1 share to the associated UAV. Throws "unassociated_offload"
// when eps1 > 0 and there is no associated UAV (std::nullopt rate).
double uplink_delay_uav(const SlotTask& t, const OffloadSplit& s, std::optional<double> rate);
double uplink_energy(double tx_power, double delay);

// UAV-side transcoding.
double transcode_cycles_per_bit(const TranscodeLevel& level, const EnergyParams& p);
double transcode_time(double cycles_total, double f_uav);
double transcode_energy(double f_uav, double time, const EnergyParams& p);
// Size after transcoding the offloaded share, scaled by bitrate ratio.
double transcoded_bits(const SlotTask& t, const OffloadSplit& s, const TranscodeLevel& level);
double transcoded_bits(double offloaded_bits, const TranscodeLevel& level);

// UAV processing of the transcoded video.
double uav_compute_delay(double d_prime, double ck, double f_uav);
double uav_compute_energy(double f_uav, double d_prime, double ck, double kappa);

// D2D path: transfer of the eps2 share and compute on the idle UD.
double d2d_delay(const SlotTask& t, const OffloadSplit& s, double rate_d2d);
double idle_compute_delay(const SlotTask& t, const OffloadSplit& s, double f_idle);
double idle_compute_energy(const SlotTask& t, const OffloadSplit& s, double f_idle, double kappa);

}  // namespace uavmec
