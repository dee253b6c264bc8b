// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "monoiso/gauss.hpp"
#include "monoiso/integrate.hpp"
#include "monoiso/kernels.hpp"
#include "monoiso/shapes.hpp"

using namespace monoiso;
using namespace monoiso::kernels;

namespace {

std::vector<AxisRule> tensor_axes(int dim, int n) {
  const auto& g = gauss_legendre01(n);
  return std::vector<AxisRule>(static_cast<std::size_t>(dim), AxisRule{g.nodes, g.weights});
}

const PointFn kSmooth = [](std::span<const double> u, std::span<double>) {
  double s = 0.0;
  for (double v : u) s += v * v;
  return std::exp(-s) * std::pow(u[0] + 0.1, 1.5);
};

template <TensorSum (*Fn)(std::span<const AxisRule>, const PointFn&, std::size_t)>
void BM_TensorSum(benchmark::State& state) {
  const auto axes = tensor_axes(static_cast<int>(state.range(0)), 24);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(axes, kSmooth, 0).sum);
}

const SampleFn kDraw = [](std::mt19937_64& rng, std::span<double>) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double x = u(rng), y = u(rng);
  return x * x + y * y < 1.0 ? std::pow(x, 0.5) : 0.0;
};

template <McSum (*Fn)(std::uint64_t, std::size_t, const SampleFn&, std::size_t)>
void BM_McSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(7, n, kDraw, 0).sum);
}

template <void (*Fn)(std::span<double>, const IndexFn&, std::size_t)>
void BM_GridMap(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  const IndexFn f = [](std::size_t i, std::span<double>) { return std::sin(1e-3 * static_cast<double>(i)); };
  for (auto _ : state) {
    Fn(out, f, 0);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_SurfaceQuadrature(benchmark::State& state) {
  const Shape s = Shape::cone_slab(3, 0, 0.05, 1.0);
  const ExponentVector A{2.0, 1.0, 0.0};
  const Exec exec = state.range(0) == 0 ? Exec::serial : Exec::parallel;
  for (auto _ : state) benchmark::DoNotOptimize(weighted_surface(s, A, QuadratureSpec{}, exec).value);
}

}  // namespace

BENCHMARK(BM_TensorSum<tensor_sum_serial>)->Name("tensor_sum/serial")->Arg(3)->Arg(4)->UseRealTime();
BENCHMARK(BM_TensorSum<tensor_sum>)->Name("tensor_sum/parallel")->Arg(3)->Arg(4)->UseRealTime();
BENCHMARK(BM_McSum<mc_sum_serial>)->Name("mc_sum/serial")->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_McSum<mc_sum>)->Name("mc_sum/parallel")->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_GridMap<grid_map_serial>)->Name("grid_map/serial")->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_GridMap<grid_map>)->Name("grid_map/parallel")->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_SurfaceQuadrature)->Name("weighted_surface/serial")->Arg(0)->UseRealTime();
BENCHMARK(BM_SurfaceQuadrature)->Name("weighted_surface/parallel")->Arg(1)->UseRealTime();

BENCHMARK_MAIN();
