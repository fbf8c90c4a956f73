#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uavmec::agents {

enum class OptimizerKind { kAdam, kSgd };

// Gradient-descent step on a flat parameter vector: plain SGD or Adam.
class Optimizer {
 public:
  Optimizer() = default;
  Optimizer(OptimizerKind kind, std::size_t n_params, double lr);

  void step(std::span<double> params, std::span<const double> grad);

  double learning_rate() const { return lr_; }
  OptimizerKind kind() const { return kind_; }

 private:
  OptimizerKind kind_ = OptimizerKind::kAdam;
  double lr_ = 1e-3;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  long steps_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

}  // namespace uavmec::agents
