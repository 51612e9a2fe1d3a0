#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

// Shared deterministic search machinery: simplex lattices, transfer-move
// refinement, and a scheduling-independent parallel reduction.

namespace bcbound {

struct OptimizerConfig {
  int grid_resolution = 101;   // lattice points per simplex axis (>= 2)
  int refine_iterations = 6;   // shrink rounds after the lattice stage
  double refine_shrink = 0.5;  // step factor between rounds, in (0,1)
  std::uint64_t seed = 0;      // echoed into reports; searches are grid-based
  int oracle_resolution = 16;  // lattice denominator of the coarse
                               // non-deterministic-X cross-check
};

void check_config(const OptimizerConfig& cfg);

// Visits every composition of `denom` into `cells` parts, in lexicographic
// order. The visitor receives the counts; masses are counts[i] / denom.
void for_each_composition(int cells, int denom,
                          const std::function<void(const int*)>& visit);

// Number of compositions of denom into cells parts: C(denom+cells-1, cells-1).
long composition_count(int cells, int denom);

// Deterministic greedy refinement on the probability simplex. Starting from
// `point` (size n, summing to 1), repeatedly applies the best single
// mass-transfer move p[a] += d, p[b] -= d over all ordered pairs and
// d in {step, step/2}, shrinking `step` by `shrink` for `rounds` rounds once
// a round stops improving. `movable(a, b)` can restrict transfers (used for
// searches constrained to a fixed induced marginal). Returns the refined
// value; `point` is updated in place.
double refine_on_simplex(std::vector<double>& point,
                         const std::function<double(const double*)>& value,
                         double initial_step, double shrink, int rounds,
                         const std::function<bool(int, int)>& movable = {});

// Worker count: MARTON_THREADS if set (0 = hardware concurrency), else 1.
int worker_count();

namespace detail {
void run_chunked(long n, const std::function<void(long)>& run_chunk);
}

// Evaluates chunk(i) for i in [0, n), possibly concurrently, then folds the
// results in index order so the outcome is scheduling-independent.
template <typename R>
R parallel_reduce(long n, const std::function<R(long)>& chunk,
                  const std::function<void(R&, const R&)>& fold) {
  std::vector<R> results(static_cast<size_t>(n));
  detail::run_chunked(n, [&](long i) { results[static_cast<size_t>(i)] = chunk(i); });
  R acc{};
  for (const R& r : results) fold(acc, r);
  return acc;
}

}  // namespace bcbound
