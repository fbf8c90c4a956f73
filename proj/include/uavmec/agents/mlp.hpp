#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uavmec/agents/kernels.hpp"
#include "uavmec/rng.hpp"

namespace uavmec::agents {

// Row-major batch of vectors.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Column-wise concatenation [a | b].
Matrix hconcat(const Matrix& a, const Matrix& b);

enum class Activation { kRelu, kTanh, kIdentity };

struct LayerSpec {
  std::size_t in = 0;
  std::size_t out = 0;
  Activation act = Activation::kIdentity;
};

// Fully connected network. All parameters live in one flat vector, layer by
// layer as [W (in x out, input-major), b (out)], so optimizers, soft updates
// and checkpoints work on a single span.
class Mlp {
 public:
  struct Tape {
    std::vector<Matrix> inputs;   // input to each layer
    std::vector<Matrix> outputs;  // post-activation output of each layer
  };

  Mlp() = default;
  // sizes = {in, hidden..., out}. Uniform(+-1/sqrt(fan_in)) initialisation.
  Mlp(const std::vector<std::size_t>& sizes, Activation hidden, Activation output, Rng& rng);
  Mlp(std::vector<LayerSpec> layers, std::vector<double> params);

  std::size_t input_size() const { return layers_.empty() ? 0 : layers_.front().in; }
  std::size_t output_size() const { return layers_.empty() ? 0 : layers_.back().out; }
  std::size_t num_params() const { return params_.size(); }
  const std::vector<LayerSpec>& layers() const { return layers_; }

  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  void set_backend(kernels::Backend be) { backend_ = be; }
  kernels::Backend backend() const { return backend_; }

  Matrix forward(const Matrix& x) const;
  Matrix forward(const Matrix& x, Tape& tape) const;
  std::vector<double> forward(std::span<const double> x) const;

  // Accumulates dL/dparams into `grad` (same layout as params()) given
  // dL/d(output) for the batch recorded in `tape`. Writes dL/d(input) when
  // `d_input` is non-null. Throws on shape mismatch.
  void backward(const Tape& tape, const Matrix& d_output, std::span<double> grad,
                Matrix* d_input = nullptr) const;

  bool all_finite() const;

 private:
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const {
    return offsets_[layer] + layers_[layer].in * layers_[layer].out;
  }
  void build_offsets();

  std::vector<LayerSpec> layers_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
  kernels::Backend backend_ = kernels::Backend::kParallel;
};

// Elementwise target <- tau * online + (1 - tau) * target.
void soft_update(std::span<double> target, std::span<const double> online, double tau);

}  // namespace uavmec::agents
