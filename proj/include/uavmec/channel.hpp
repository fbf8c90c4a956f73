#pragma once

#include "uavmec/rng.hpp"
#include "uavmec/vec3.hpp"

namespace uavmec {

// Large-scale and small-scale parameters of one link class.
struct LinkParams {
  double beta0 = 1e-5;             // linear power gain at 1 m
  double path_loss_exponent = 2.2; // chi
  double rician_k = 10.0;          // Gamma, linear; 0 is Rayleigh, +inf is pure LoS
  double bandwidth_hz = 15e6;
};

struct ChannelParams {
  LinkParams uav{1e-5, 2.2, 10.0, 15e6};  // busy UD -> UAV, bandwidth B1
  LinkParams d2d{1e-5, 3.0, 0.0, 10e6};   // busy UD -> idle UD, bandwidth B0
  double noise_power_w = 1e-13;           // -100 dBm
};

void validate(const ChannelParams& p);

double dbm_to_watts(double dbm);

struct FadingSample {
  double gain_sq = 0.0;  // |h|^2
};

double link_distance(Position a, Position b);

// beta0 * d^-chi. Throws for d <= 0.
double path_gain(const LinkParams& p, double d);

// |sqrt(K/(1+K)) eta + sqrt(1/(1+K)) eta~|^2 with eta = 1 and eta~ a unit-power
// circular complex Gaussian draw. Unit mean. No draw is taken for K = +inf.
double small_scale_power(double rician_k, Rng& rng);

// path_gain(d) * small_scale_power(K). Throws for d <= 0.
FadingSample sample_gain_sq(const LinkParams& p, double d, Rng& rng);

// Shannon rate bw * log2(1 + P g / noise), bits/s.
double rate(double bw, double tx_power, double gain_sq, double noise);

}  // namespace uavmec
