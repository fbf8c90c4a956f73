#include "uavmec/agents/replay_buffer.hpp"

#include <algorithm>
#include <unordered_set>

#include "uavmec/error.hpp"

namespace uavmec::agents {

ReplayBuffer::ReplayBuffer(std::size_t capacity, std::size_t state_dim, std::size_t action_dim)
    : capacity_(capacity), state_dim_(state_dim), action_dim_(action_dim) {
  if (capacity_ == 0) throw Error("shape", "ReplayBuffer: capacity must be positive");
  states_.resize(capacity_ * state_dim_);
  actions_.resize(capacity_ * action_dim_);
  rewards_.resize(capacity_);
  next_states_.resize(capacity_ * state_dim_);
  dones_.resize(capacity_);
}

void ReplayBuffer::push(const Transition& t) {
  if (t.state.size() != state_dim_ || t.next_state.size() != state_dim_ ||
      t.action.size() != action_dim_) {
    throw Error("shape", "ReplayBuffer::push: transition shape mismatch");
  }
  auto sd = static_cast<std::ptrdiff_t>(head_ * state_dim_);
  auto ad = static_cast<std::ptrdiff_t>(head_ * action_dim_);
  std::copy(t.state.begin(), t.state.end(), states_.begin() + sd);
  std::copy(t.next_state.begin(), t.next_state.end(), next_states_.begin() + sd);
  std::copy(t.action.begin(), t.action.end(), actions_.begin() + ad);
  rewards_[head_] = t.reward;
  dones_[head_] = t.done ? 1.0 : 0.0;
  head_ = (head_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
}

Transition ReplayBuffer::at(std::size_t slot) const {
  if (slot >= size_) throw Error("shape", "ReplayBuffer::at: slot out of range");
  Transition t;
  auto s0 = states_.begin() + static_cast<std::ptrdiff_t>(slot * state_dim_);
  auto a0 = actions_.begin() + static_cast<std::ptrdiff_t>(slot * action_dim_);
  auto n0 = next_states_.begin() + static_cast<std::ptrdiff_t>(slot * state_dim_);
  t.state.assign(s0, s0 + static_cast<std::ptrdiff_t>(state_dim_));
  t.action.assign(a0, a0 + static_cast<std::ptrdiff_t>(action_dim_));
  t.next_state.assign(n0, n0 + static_cast<std::ptrdiff_t>(state_dim_));
  t.reward = rewards_[slot];
  t.done = dones_[slot] != 0.0;
  return t;
}

Batch ReplayBuffer::sample(std::size_t batch_size, Rng& rng) const {
  if (batch_size > size_) throw Error("shape", "ReplayBuffer::sample: not enough transitions");
  // Floyd's algorithm: batch_size distinct indices from [0, size_).
  std::vector<std::size_t> picked;
  picked.reserve(batch_size);
  std::unordered_set<std::size_t> seen;
  for (std::size_t j = size_ - batch_size; j < size_; ++j) {
    const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
    const std::size_t choice = seen.insert(t).second ? t : j;
    if (choice == j) seen.insert(j);
    picked.push_back(choice);
  }
  Batch b;
  b.states = Matrix(batch_size, state_dim_);
  b.actions = Matrix(batch_size, action_dim_);
  b.next_states = Matrix(batch_size, state_dim_);
  b.rewards.resize(batch_size);
  b.dones.resize(batch_size);
  for (std::size_t r = 0; r < batch_size; ++r) {
    const std::size_t s = picked[r];
    auto s0 = states_.begin() + static_cast<std::ptrdiff_t>(s * state_dim_);
    auto a0 = actions_.begin() + static_cast<std::ptrdiff_t>(s * action_dim_);
    auto n0 = next_states_.begin() + static_cast<std::ptrdiff_t>(s * state_dim_);
    std::copy(s0, s0 + static_cast<std::ptrdiff_t>(state_dim_), b.states.row(r).begin());
    std::copy(a0, a0 + static_cast<std::ptrdiff_t>(action_dim_), b.actions.row(r).begin());
    std::copy(n0, n0 + static_cast<std::ptrdiff_t>(state_dim_), b.next_states.row(r).begin());
    b.rewards[r] = rewards_[s];
    b.dones[r] = dones_[s];
  }
  b.slots = std::move(picked);
  return b;
}

}  // namespace uavmec::agents
