// Serial reference vs OpenMP kernels, plus the greedy baseline's candidate scan.

#include <benchmark/benchmark.h>

#include <vector>

#include "uavmec/agents/kernels.hpp"
#include "uavmec/env.hpp"
#include "uavmec/harness/greedy.hpp"
#include "uavmec/rng.hpp"

namespace {

using uavmec::kernels::Backend;
using uavmec::kernels::DenseShape;

struct Operands {
  DenseShape s;
  std::vector<double> x, w, b, y, delta, dw, db, dx;

  explicit Operands(std::size_t n) : s{n, n, n} {
    uavmec::Rng rng(7);
    auto fill = [&rng](std::vector<double>& v, std::size_t size) {
      v.resize(size);
      for (double& e : v) e = uavmec::uniform(rng, -1.0, 1.0);
    };
    fill(x, n * n);
    fill(w, n * n);
    fill(b, n);
    fill(delta, n * n);
    y.assign(n * n, 0.0);
    dw.assign(n * n, 0.0);
    db.assign(n, 0.0);
    dx.assign(n * n, 0.0);
  }
};

template <Backend B>
void BM_AffineForward(benchmark::State& state) {
  Operands op(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    uavmec::kernels::affine_forward(B, op.x, op.w, op.b, op.y, op.s);
    benchmark::DoNotOptimize(op.y.data());
  }
}

template <Backend B>
void BM_WeightGrad(benchmark::State& state) {
  Operands op(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    uavmec::kernels::accumulate_weight_grad(B, op.x, op.delta, op.dw, op.db, op.s);
    benchmark::DoNotOptimize(op.dw.data());
  }
}

template <Backend B>
void BM_InputGrad(benchmark::State& state) {
  Operands op(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    uavmec::kernels::input_grad(B, op.delta, op.w, op.dx, op.s);
    benchmark::DoNotOptimize(op.dx.data());
  }
}

template <Backend B>
void BM_GreedyChoose(benchmark::State& state) {
  uavmec::EnvConfig cfg;
  cfg.world.n_busy = 6;
  cfg.world.n_idle = 3;
  cfg.world.n_uav = 2;
  cfg.world.n_slots = 20;
  const uavmec::harness::GreedyPolicy policy(cfg);
  uavmec::OffloadingEnv env(cfg);
  env.reset(3);
  for (auto _ : state) {
    auto a = policy.choose(env, B);
    benchmark::DoNotOptimize(a.f_uav);
  }
}

}  // namespace

BENCHMARK(BM_AffineForward<Backend::kSerial>)->Arg(64)->Arg(256);
BENCHMARK(BM_AffineForward<Backend::kParallel>)->Arg(64)->Arg(256);
BENCHMARK(BM_WeightGrad<Backend::kSerial>)->Arg(64)->Arg(256);
BENCHMARK(BM_WeightGrad<Backend::kParallel>)->Arg(64)->Arg(256);
BENCHMARK(BM_InputGrad<Backend::kSerial>)->Arg(64)->Arg(256);
BENCHMARK(BM_InputGrad<Backend::kParallel>)->Arg(64)->Arg(256);
BENCHMARK(BM_GreedyChoose<Backend::kSerial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreedyChoose<Backend::kParallel>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
