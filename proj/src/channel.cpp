#include "uavmec/channel.hpp"

#include <cmath>
#include <string>

#include "uavmec/error.hpp"

namespace uavmec {

namespace {

void validate_link(const LinkParams& p, const std::string& name) {
  if (!(std::isfinite(p.beta0) && p.beta0 > 0))
    throw ConfigError("channel." + name + ".beta0", "must be positive");
  if (!(std::isfinite(p.path_loss_exponent) && p.path_loss_exponent >= 2.0))
    throw ConfigError("channel." + name + ".path_loss_exponent", "must be >= 2");
  if (!(p.rician_k >= 0.0))
    throw ConfigError("channel." + name + ".rician_k", "must be >= 0");
  if (!(std::isfinite(p.bandwidth_hz) && p.bandwidth_hz > 0))
    throw ConfigError("channel." + name + ".bandwidth_hz", "must be positive");
}

}  // namespace

void validate(const ChannelParams& p) {
  validate_link(p.uav, "uav");
  validate_link(p.d2d, "d2d");
  if (!(std::isfinite(p.noise_power_w) && p.noise_power_w > 0))
    throw ConfigError("channel.noise_power_w", "must be positive");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double link_distance(Position a, Position b) { return distance(a, b); }

double path_gain(const LinkParams& p, double d) {
  if (!(d > 0.0)) throw Error("channel", "path_gain: distance must be positive");
  return p.beta0 * std::pow(d, -p.path_loss_exponent);
}

double small_scale_power(double rician_k, Rng& rng) {
  if (std::isinf(rician_k)) return 1.0;
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const double re_scatter = gauss(rng);
  const double im_scatter = gauss(rng);
  const double los = std::sqrt(rician_k / (1.0 + rician_k));
  const double nlos = std::sqrt(1.0 / (1.0 + rician_k));
  const double re = los + nlos * re_scatter;
  const double im = nlos * im_scatter;
  return re * re + im * im;
}

FadingSample sample_gain_sq(const LinkParams& p, double d, Rng& rng) {
  const double large = path_gain(p, d);
  return {large * small_scale_power(p.rician_k, rng)};
}

double rate(double bw, double tx_power, double gain_sq, double noise) {
  if (tx_power == 0.0 || gain_sq == 0.0) return 0.0;
  return bw * std::log2(1.0 + tx_power * gain_sq / noise);
}

}  // namespace uavmec
