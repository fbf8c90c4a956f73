#include "uavmec/agents/kernels.hpp"

#include <omp.h>

#include <cstdint>

namespace uavmec::kernels {

namespace {

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr std::size_t kParallelThreshold = 1 << 15;

bool go_parallel(DenseShape s) {
  return s.rows * s.in * s.out >= kParallelThreshold && !omp_in_parallel();
}

void forward_row(const double* __restrict x, const double* __restrict w,
                 const double* __restrict b, double* __restrict y, std::size_t in,
                 std::size_t out) {
  for (std::size_t o = 0; o < out; ++o) y[o] = b[o];
  for (std::size_t i = 0; i < in; ++i) {
    const double xi = x[i];
    const double* wr = w + i * out;
    for (std::size_t o = 0; o < out; ++o) y[o] += xi * wr[o];
  }
}

// Row i of dW.
void weight_grad_row(std::size_t i, const double* __restrict x, const double* __restrict delta,
                     double* __restrict dw_row, DenseShape s) {
  for (std::size_t r = 0; r < s.rows; ++r) {
    const double xi = x[r * s.in + i];
    const double* dr = delta + r * s.out;
    for (std::size_t o = 0; o < s.out; ++o) dw_row[o] += xi * dr[o];
  }
}

void bias_grad(const double* __restrict delta, double* __restrict db, DenseShape s) {
  for (std::size_t r = 0; r < s.rows; ++r) {
    const double* dr = delta + r * s.out;
    for (std::size_t o = 0; o < s.out; ++o) db[o] += dr[o];
  }
}

// Fixed four-way split of each dot product; the order never depends on the
// thread that runs it.
double dot(const double* __restrict a, const double* __restrict b, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  std::size_t o = 0;
  for (; o + 4 <= n; o += 4) {
    acc0 += a[o] * b[o];
    acc1 += a[o + 1] * b[o + 1];
    acc2 += a[o + 2] * b[o + 2];
    acc3 += a[o + 3] * b[o + 3];
  }
  for (; o < n; ++o) acc0 += a[o] * b[o];
  return (acc0 + acc1) + (acc2 + acc3);
}

void input_grad_row(const double* __restrict delta_row, const double* __restrict w,
                    double* __restrict dx_row, DenseShape s) {
  for (std::size_t i = 0; i < s.in; ++i) dx_row[i] = dot(delta_row, w + i * s.out, s.out);
}

}  // namespace

namespace serial {

void affine_forward(std::span<const double> x, std::span<const double> w,
                    std::span<const double> b, std::span<double> y, DenseShape s) {
  for (std::size_t r = 0; r < s.rows; ++r) {
    forward_row(x.data() + r * s.in, w.data(), b.data(), y.data() + r * s.out, s.in, s.out);
  }
}

void accumulate_weight_grad(std::span<const double> x, std::span<const double> delta,
                            std::span<double> dw, std::span<double> db, DenseShape s) {
  for (std::size_t i = 0; i < s.in; ++i) {
    weight_grad_row(i, x.data(), delta.data(), dw.data() + i * s.out, s);
  }
  bias_grad(delta.data(), db.data(), s);
}

void input_grad(std::span<const double> delta, std::span<const double> w, std::span<double> dx,
                DenseShape s) {
  for (std::size_t r = 0; r < s.rows; ++r) {
    input_grad_row(delta.data() + r * s.out, w.data(), dx.data() + r * s.in, s);
  }
}

}  // namespace serial

namespace parallel {

void affine_forward(std::span<const double> x, std::span<const double> w,
                    std::span<const double> b, std::span<double> y, DenseShape s) {
  const auto rows = static_cast<std::int64_t>(s.rows);
#pragma omp parallel for schedule(static) if (go_parallel(s))
  for (std::int64_t r = 0; r < rows; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    forward_row(x.data() + ru * s.in, w.data(), b.data(), y.data() + ru * s.out, s.in, s.out);
  }
}

void accumulate_weight_grad(std::span<const double> x, std::span<const double> delta,
                            std::span<double> dw, std::span<double> db, DenseShape s) {
  const auto in = static_cast<std::int64_t>(s.in);
#pragma omp parallel for schedule(static) if (go_parallel(s))
  for (std::int64_t i = 0; i < in; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    weight_grad_row(iu, x.data(), delta.data(), dw.data() + iu * s.out, s);
  }
  bias_grad(delta.data(), db.data(), s);
}

void input_grad(std::span<const double> delta, std::span<const double> w, std::span<double> dx,
                DenseShape s) {
  const auto rows = static_cast<std::int64_t>(s.rows);
#pragma omp parallel for schedule(static) if (go_parallel(s))
  for (std::int64_t r = 0; r < rows; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    input_grad_row(delta.data() + ru * s.out, w.data(), dx.data() + ru * s.in, s);
  }
}

}  // namespace parallel

void affine_forward(Backend be, std::span<const double> x, std::span<const double> w,
                    std::span<const double> b, std::span<double> y, DenseShape s) {
  if (be == Backend::kParallel) {
    parallel::affine_forward(x, w, b, y, s);
  } else {
    serial::affine_forward(x, w, b, y, s);
  }
}

void accumulate_weight_grad(Backend be, std::span<const double> x, std::span<const double> delta,
                            std::span<double> dw, std::span<double> db, DenseShape s) {
  if (be == Backend::kParallel) {
    parallel::accumulate_weight_grad(x, delta, dw, db, s);
  } else {
    serial::accumulate_weight_grad(x, delta, dw, db, s);
  }
}

void input_grad(Backend be, std::span<const double> delta, std::span<const double> w,
                std::span<double> dx, DenseShape s) {
  if (be == Backend::kParallel) {
    parallel::input_grad(delta, w, dx, s);
  } else {
    serial::input_grad(delta, w, dx, s);
  }
}

}  // namespace uavmec::kernels
