#pragma once

#include <cstddef>
#include <span>

// Dense-layer kernels. Matrices are row-major; weights are stored
// input-major (in x out) so the forward pass and the weight gradient are
// contiguous axpy sweeps over the output dimension.
//
// `serial` is the reference. `parallel` distributes whole output rows over
// OpenMP threads and calls the same per-row routines, so both produce
// bit-identical results for any thread count.
namespace uavmec::kernels {

struct DenseShape {
  std::size_t rows = 0;  // batch
  std::size_t in = 0;
  std::size_t out = 0;
};

enum class Backend { kSerial, kParallel };

namespace serial {
// y = x W + b
void affine_forward(std::span<const double> x, std::span<const double> w,
                    std::span<const double> b, std::span<double> y, DenseShape s);
// dW += x^T delta, db += column sums of delta
void accumulate_weight_grad(std::span<const double> x, std::span<const double> delta,
                            std::span<double> dw, std::span<double> db, DenseShape s);
// dx = delta W^T
void input_grad(std::span<const double> delta, std::span<const double> w, std::span<double> dx,
                DenseShape s);
}  // namespace serial

namespace parallel {
void affine_forward(std::span<const double> x, std::span<const double> w,
                    std::span<const double> b, std::span<double> y, DenseShape s);
void accumulate_weight_grad(std::span<const double> x, std::span<const double> delta,
                            std::span<double> dw, std::span<double> db, DenseShape s);
void input_grad(std::span<const double> delta, std::span<const double> w, std::span<double> dx,
                DenseShape s);
}  // namespace parallel

void affine_forward(Backend be, std::span<const double> x, std::span<const double> w,
                    std::span<const double> b, std::span<double> y, DenseShape s);
void accumulate_weight_grad(Backend be, std::span<const double> x, std::span<const double> delta,
                            std::span<double> dw, std::span<double> db, DenseShape s);
void input_grad(Backend be, std::span<const double> delta, std::span<const double> w,
                std::span<double> dx, DenseShape s);

}  // namespace uavmec::kernels
