#include "monoiso/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef MONOISO_HAVE_OPENMP
#include <omp.h>
#endif

namespace monoiso::kernels {
namespace {

constexpr std::size_t kBlock = 2048;

std::size_t grid_size(std::span<const AxisRule> axes) {
  std::size_t total = 1;
  for (const auto& ax : axes) total *= ax.nodes.size();
  return total;
}

// Decodes a flat index into the tensor point (row-major, last axis fastest).
inline double decode(std::span<const AxisRule> axes, std::size_t flat, std::span<double> u) {
  double w = 1.0;
  for (std::size_t j = axes.size(); j-- > 0;) {
    const std::size_t m = axes[j].nodes.size();
    const std::size_t idx = flat % m;
    flat /= m;
    u[j] = axes[j].nodes[idx];
    w *= axes[j].weights[idx];
  }
  return w;
}

}  // namespace

int max_threads() {
#ifdef MONOISO_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

TensorSum tensor_sum(std::span<const AxisRule> axes, const PointFn& f, std::size_t work_size) {
  const std::size_t total = grid_size(axes);
  const std::size_t nblocks = (total + kBlock - 1) / kBlock;
  std::vector<double> part(nblocks, 0.0), part_abs(nblocks, 0.0);

#ifdef MONOISO_HAVE_OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> u(axes.size());
    std::vector<double> work(work_size);
#ifdef MONOISO_HAVE_OPENMP
#pragma omp for schedule(dynamic, 1)
#endif
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      const std::size_t hi = std::min(total, lo + kBlock);
      double s = 0.0, sa = 0.0;
      for (std::size_t flat = lo; flat < hi; ++flat) {
        const double w = decode(axes, flat, u);
        const double term = w * f(u, work);
        s += term;
        sa += std::fabs(term);
      }
      part[b] = s;
      part_abs[b] = sa;
    }
  }

  TensorSum out;
  for (std::size_t b = 0; b < nblocks; ++b) {
    out.sum += part[b];
    out.abs_sum += part_abs[b];
  }
  out.evaluations = total;
  return out;
}

TensorSum tensor_sum_serial(std::span<const AxisRule> axes, const PointFn& f, std::size_t work_size) {
  const std::size_t total = grid_size(axes);
  std::vector<double> u(axes.size());
  std::vector<double> work(work_size);
  TensorSum out;
  for (std::size_t flat = 0; flat < total; ++flat) {
    const double w = decode(axes, flat, u);
    const double term = w * f(u, work);
    out.sum += term;
    out.abs_sum += std::fabs(term);
  }
  out.evaluations = total;
  return out;
}

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) {
  // splitmix64 finalizer over (seed, batch)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (batch + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void run_batch(std::uint64_t seed, std::size_t b, std::size_t samples, const SampleFn& draw,
               std::span<double> work, double& s, double& s2) {
  std::mt19937_64 rng(batch_seed(seed, b));
  const std::size_t lo = b * mc_batch_size;
  const std::size_t hi = std::min(samples, lo + mc_batch_size);
  s = 0.0;
  s2 = 0.0;
  for (std::size_t k = lo; k < hi; ++k) {
    const double v = draw(rng, work);
    s += v;
    s2 += v * v;
  }
}

}  // namespace

McSum mc_sum(std::uint64_t seed, std::size_t samples, const SampleFn& draw, std::size_t work_size) {
  const std::size_t nb = (samples + mc_batch_size - 1) / mc_batch_size;
  std::vector<double> s(nb), s2(nb);
#ifdef MONOISO_HAVE_OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> work(work_size);
#ifdef MONOISO_HAVE_OPENMP
#pragma omp for schedule(dynamic, 1)
#endif
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
      run_batch(seed, static_cast<std::size_t>(b), samples, draw, work, s[b], s2[b]);
    }
  }
  McSum out;
  for (std::size_t b = 0; b < nb; ++b) {
    out.sum += s[b];
    out.sum_sq += s2[b];
  }
  out.samples = samples;
  return out;
}

McSum mc_sum_serial(std::uint64_t seed, std::size_t samples, const SampleFn& draw, std::size_t work_size) {
  const std::size_t nb = (samples + mc_batch_size - 1) / mc_batch_size;
  std::vector<double> work(work_size);
  McSum out;
  for (std::size_t b = 0; b < nb; ++b) {
    double s = 0.0, s2 = 0.0;
    run_batch(seed, b, samples, draw, work, s, s2);
    out.sum += s;
    out.sum_sq += s2;
  }
  out.samples = samples;
  return out;
}

void grid_map(std::span<double> out, const IndexFn& f, std::size_t work_size) {
#ifdef MONOISO_HAVE_OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> work(work_size);
#ifdef MONOISO_HAVE_OPENMP
#pragma omp for schedule(dynamic, 64)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i) {
      out[i] = f(static_cast<std::size_t>(i), work);
    }
  }
}

void grid_map_serial(std::span<double> out, const IndexFn& f, std::size_t work_size) {
  std::vector<double> work(work_size);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i, work);
}

double weighted_grid_sum(std::span<const double> values, std::span<const double> weights,
                         const std::function<double(double)>& g) {
  const std::size_t n = values.size();
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> part(nblocks, 0.0);
#ifdef MONOISO_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += weights[i] * g(values[i]);
    part[b] = s;
  }
  double total = 0.0;
  for (double p : part) total += p;
  return total;
}

double weighted_grid_sum_serial(std::span<const double> values, std::span<const double> weights,
                                const std::function<double(double)>& g) {
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) total += weights[i] * g(values[i]);
  return total;
}

}  // namespace monoiso::kernels
