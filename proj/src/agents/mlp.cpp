#include "uavmec/agents/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavmec/error.hpp"

namespace uavmec::agents {

namespace {

void apply_activation(Activation act, std::span<double> v) {
  switch (act) {
    case Activation::kRelu:
      for (double& x : v) x = x > 0.0 ? x : 0.0;
      break;
    case Activation::kTanh:
      for (double& x : v) x = std::tanh(x);
      break;
    case Activation::kIdentity:
      break;
  }
}

// delta <- dL/dy * dy/dz given the post-activation output y.
void activation_backward(Activation act, std::span<const double> y, std::span<double> delta) {
  switch (act) {
    case Activation::kRelu:
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) delta[i] = 0.0;
      }
      break;
    case Activation::kTanh:
      for (std::size_t i = 0; i < y.size(); ++i) delta[i] *= 1.0 - y[i] * y[i];
      break;
    case Activation::kIdentity:
      break;
  }
}

}  // namespace

Matrix hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows) throw Error("shape", "hconcat: row counts differ");
  Matrix out(a.rows, a.cols + b.cols);
  for (std::size_t r = 0; r < a.rows; ++r) {
    std::copy(a.row(r).begin(), a.row(r).end(), out.row(r).begin());
    std::copy(b.row(r).begin(), b.row(r).end(), out.row(r).begin() + static_cast<std::ptrdiff_t>(a.cols));
  }
  return out;
}

Mlp::Mlp(const std::vector<std::size_t>& sizes, Activation hidden, Activation output, Rng& rng) {
  if (sizes.size() < 2) throw Error("shape", "Mlp needs at least input and output sizes");
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const bool last = l + 2 == sizes.size();
    layers_.push_back({sizes[l], sizes[l + 1], last ? output : hidden});
  }
  build_offsets();
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layers_[l].in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    const std::size_t end = l + 1 < layers_.size() ? offsets_[l + 1] : params_.size();
    for (std::size_t p = offsets_[l]; p < end; ++p) params_[p] = dist(rng);
  }
}

Mlp::Mlp(std::vector<LayerSpec> layers, std::vector<double> params) : layers_(std::move(layers)) {
  build_offsets();
  if (params.size() != params_.size()) throw Error("shape", "Mlp: parameter count mismatch");
  params_ = std::move(params);
}

void Mlp::build_offsets() {
  offsets_.clear();
  std::size_t total = 0;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (l > 0 && layers_[l].in != layers_[l - 1].out) throw Error("shape", "Mlp: layer sizes do not chain");
    offsets_.push_back(total);
    total += layers_[l].in * layers_[l].out + layers_[l].out;
  }
  params_.assign(total, 0.0);
}

Matrix Mlp::forward(const Matrix& x) const {
  Tape tape;
  return forward(x, tape);
}

Matrix Mlp::forward(const Matrix& x, Tape& tape) const {
  if (x.cols != input_size()) {
    throw Error("shape", "Mlp::forward: expected " + std::to_string(input_size()) +
                             " inputs, got " + std::to_string(x.cols));
  }
  tape.inputs.resize(layers_.size());
  tape.outputs.resize(layers_.size());
  const Matrix* cur = &x;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const LayerSpec& L = layers_[l];
    tape.inputs[l] = *cur;
    Matrix& y = tape.outputs[l];
    y = Matrix(x.rows, L.out);
    const std::span<const double> p(params_);
    kernels::affine_forward(backend_, cur->data, p.subspan(weight_offset(l), L.in * L.out),
                            p.subspan(bias_offset(l), L.out), y.data, {x.rows, L.in, L.out});
    apply_activation(L.act, y.data);
    cur = &y;
  }
  return tape.outputs.back();
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
  Matrix m(1, x.size());
  std::copy(x.begin(), x.end(), m.data.begin());
  return forward(m).data;
}

void Mlp::backward(const Tape& tape, const Matrix& d_output, std::span<double> grad,
                   Matrix* d_input) const {
  if (grad.size() != params_.size()) throw Error("shape", "Mlp::backward: gradient size mismatch");
  if (tape.outputs.size() != layers_.size()) throw Error("shape", "Mlp::backward: tape is empty");
  const Matrix& last = tape.outputs.back();
  if (d_output.rows != last.rows || d_output.cols != last.cols) {
    throw Error("shape", "Mlp::backward: output gradient shape mismatch");
  }
  Matrix delta = d_output;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const LayerSpec& L = layers_[l];
    activation_backward(L.act, tape.outputs[l].data, delta.data);
    const Matrix& x = tape.inputs[l];
    const kernels::DenseShape shape{x.rows, L.in, L.out};
    kernels::accumulate_weight_grad(backend_, x.data, delta.data,
                                    grad.subspan(weight_offset(l), L.in * L.out),
                                    grad.subspan(bias_offset(l), L.out), shape);
    if (l > 0 || d_input != nullptr) {
      Matrix dx(x.rows, L.in);
      kernels::input_grad(backend_, delta.data,
                          std::span<const double>(params_).subspan(weight_offset(l), L.in * L.out),
                          dx.data, shape);
      delta = std::move(dx);
    }
  }
  if (d_input != nullptr) *d_input = std::move(delta);
}

bool Mlp::all_finite() const {
  return std::all_of(params_.begin(), params_.end(), [](double v) { return std::isfinite(v); });
}

void soft_update(std::span<double> target, std::span<const double> online, double tau) {
  if (target.size() != online.size()) throw Error("shape", "soft_update: size mismatch");
  for (std::size_t i = 0; i < target.size(); ++i) {
    target[i] = tau * online[i] + (1.0 - tau) * target[i];
  }
}

}  // namespace uavmec::agents
