#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uavmec/agents/mlp.hpp"
#include "uavmec/rng.hpp"

namespace uavmec::agents {

struct Transition {
  std::vector<double> state;
  std::vector<double> action;
  double reward = 0.0;
  std::vector<double> next_state;
  bool done = false;
};

struct Batch {
  Matrix states;
  Matrix actions;
  std::vector<double> rewards;
  Matrix next_states;
  std::vector<double> dones;  // 1.0 for terminal transitions
  std::vector<std::size_t> slots;  // storage indices drawn
};

// Fixed-capacity ring buffer; once full, each push overwrites the oldest entry.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, std::size_t state_dim, std::size_t action_dim);

  void push(const Transition& t);
  // Uniform minibatch without replacement. Throws if batch_size > size().
  Batch sample(std::size_t batch_size, Rng& rng) const;
  Transition at(std::size_t slot) const;

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::size_t state_dim_;
  std::size_t action_dim_;
  std::size_t size_ = 0;
  std::size_t head_ = 0;
  std::vector<double> states_;
  std::vector<double> actions_;
  std::vector<double> rewards_;
  std::vector<double> next_states_;
  std::vector<double> dones_;
};

}  // namespace uavmec::agents
