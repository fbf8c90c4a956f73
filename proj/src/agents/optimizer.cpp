#include "uavmec/agents/optimizer.hpp"

#include <cmath>

#include "uavmec/error.hpp"

namespace uavmec::agents {

Optimizer::Optimizer(OptimizerKind kind, std::size_t n_params, double lr)
    : kind_(kind), lr_(lr) {
  if (kind_ == OptimizerKind::kAdam) {
    m_.assign(n_params, 0.0);
    v_.assign(n_params, 0.0);
  }
}

void Optimizer::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != grad.size()) throw Error("shape", "Optimizer::step: size mismatch");
  if (kind_ == OptimizerKind::kSgd) {
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= lr_ * grad[i];
    return;
  }
  if (m_.size() != params.size()) throw Error("shape", "Optimizer::step: state size mismatch");
  ++steps_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    const double m_hat = m_[i] / c1;
    const double v_hat = v_[i] / c2;
    params[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
  }
}

}  // namespace uavmec::agents
