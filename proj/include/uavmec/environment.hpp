#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uavmec {

// Minimal episodic interface the learning agents train against.
class Environment {
 public:
  struct Step {
    std::vector<double> state;
    double reward = 0.0;
    bool done = false;
    std::array<double, 4> penalties{};  // F1..F4 charged this step, if any
  };

  virtual ~Environment() = default;

  virtual std::vector<double> reset(std::uint64_t seed) = 0;
  virtual Step step(std::span<const double> action) = 0;

  virtual std::size_t state_dim() const = 0;
  virtual std::size_t action_dim() const = 0;
};

}  // namespace uavmec
