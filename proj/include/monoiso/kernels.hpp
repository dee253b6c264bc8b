#pragma once

// Data-parallel inner loops. Every OpenMP kernel has a plain serial
// counterpart (suffix _serial) that the tests compare against.
//
// Reductions are split into fixed-size blocks whose partial sums are combined
// in block order, so parallel results do not depend on the thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace monoiso::kernels {

struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// f(u, work) for a point u of the tensor grid; work is per-thread scratch.
using PointFn = std::function<double(std::span<const double> u, std::span<double> work)>;

struct TensorSum {
  double sum = 0.0;
  double abs_sum = 0.0;  ///< sum of |w f|, for rounding-error bounds
  std::size_t evaluations = 0;
};

/// sum over the tensor grid of (prod_j w_j) f(u).
TensorSum tensor_sum(std::span<const AxisRule> axes, const PointFn& f, std::size_t work_size);
TensorSum tensor_sum_serial(std::span<const AxisRule> axes, const PointFn& f, std::size_t work_size);

/// One Monte Carlo draw: returns the sample value.
using SampleFn = std::function<double(std::mt19937_64& rng, std::span<double> work)>;

struct McSum {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t samples = 0;
};

/// Samples are drawn in batches of mc_batch_size; batch b uses its own engine
/// seeded from (seed, b), so the result is bit-identical for any thread count.
inline constexpr std::size_t mc_batch_size = 4096;
std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch);
McSum mc_sum(std::uint64_t seed, std::size_t samples, const SampleFn& draw, std::size_t work_size);
McSum mc_sum_serial(std::uint64_t seed, std::size_t samples, const SampleFn& draw, std::size_t work_size);

/// out[i] = f(i, work) for i in [0, count).
using IndexFn = std::function<double(std::size_t i, std::span<double> work)>;
void grid_map(std::span<double> out, const IndexFn& f, std::size_t work_size);
void grid_map_serial(std::span<double> out, const IndexFn& f, std::size_t work_size);

/// sum_i w[i] * g(v[i]) over flat arrays, block-ordered.
double weighted_grid_sum(std::span<const double> values, std::span<const double> weights,
                         const std::function<double(double)>& g);
double weighted_grid_sum_serial(std::span<const double> values, std::span<const double> weights,
                                const std::function<double(double)>& g);

int max_threads();

}  // namespace monoiso::kernels
