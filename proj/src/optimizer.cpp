#include "bcbound/optimizer.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace bcbound {

void check_config(const OptimizerConfig& cfg) {
  if (cfg.grid_resolution < 2) {
    throw std::invalid_argument("grid_resolution must be >= 2");
  }
  if (cfg.refine_iterations < 0) {
    throw std::invalid_argument("refine_iterations must be >= 0");
  }
  if (!(cfg.refine_shrink > 0.0 && cfg.refine_shrink < 1.0)) {
    throw std::invalid_argument("refine_shrink must lie in (0,1)");
  }
  if (cfg.oracle_resolution < 1) {
    throw std::invalid_argument("oracle_resolution must be >= 1");
  }
}

namespace {

void compose_rec(int cells, int left, int* counts, int pos,
                 const std::function<void(const int*)>& visit) {
  if (pos == cells - 1) {
    counts[pos] = left;
    visit(counts);
    return;
  }
  for (int k = 0; k <= left; ++k) {
    counts[pos] = k;
    compose_rec(cells, left - k, counts, pos + 1, visit);
  }
}

}  // namespace

void for_each_composition(int cells, int denom,
                          const std::function<void(const int*)>& visit) {
  std::vector<int> counts(static_cast<size_t>(cells));
  compose_rec(cells, denom, counts.data(), 0, visit);
}

long composition_count(int cells, int denom) {
  // C(denom + cells - 1, cells - 1)
  long n = denom + cells - 1;
  long r = cells - 1;
  long out = 1;
  for (long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

double refine_on_simplex(std::vector<double>& point,
                         const std::function<double(const double*)>& value,
                         double initial_step, double shrink, int rounds,
                         const std::function<bool(int, int)>& movable) {
  const int n = static_cast<int>(point.size());
  double best = value(point.data());
  double step = initial_step;
  std::vector<double> cand(point.size());

  auto apply = [&](std::vector<double>& p, int a, int b, double d) {
    double amount = d < p[static_cast<size_t>(b)] ? d : p[static_cast<size_t>(b)];
    if (amount <= 0) return false;
    p[static_cast<size_t>(a)] += amount;
    p[static_cast<size_t>(b)] -= amount;
    return true;
  };
  auto consider = [&](const std::vector<double>& p) {
    double v = value(p.data());
    if (v > best + 1e-14) {
      best = v;
      point = p;
      return true;
    }
    return false;
  };

  for (int round = 0; round < rounds; ++round) {
    // sweep until the current step stops improving (bounded)
    for (int sweep = 0; sweep < 200; ++sweep) {
      bool improved = false;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (a == b) continue;
          if (movable && !movable(a, b)) continue;
          for (double d : {step, 0.5 * step}) {
            cand = point;
            if (apply(cand, a, b, d) && consider(cand)) improved = true;
          }
        }
      }
      // simultaneous pairs of transfers; objectives with a min{} crease or a
      // symmetry need these to move along the crease
      if (n <= 4) {
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            if (a == b || (movable && !movable(a, b))) continue;
            for (int c = 0; c < n; ++c) {
              for (int e = 0; e < n; ++e) {
                if (c == e || (c == a && e == b)) continue;
                if (c == b && e == a) continue;  // exact inverse
                if (movable && !movable(c, e)) continue;
                for (double d : {step, 0.5 * step}) {
                  cand = point;
                  if (apply(cand, a, b, d) && apply(cand, c, e, d) &&
                      consider(cand)) {
                    improved = true;
                  }
                }
              }
            }
          }
        }
      }
      if (!improved) break;
    }
    step *= shrink;
  }
  return best;
}

int worker_count() {
  const char* env = std::getenv("MARTON_THREADS");
  if (env == nullptr) return 1;
  int n = std::atoi(env);
  if (n < 0) return 1;
  if (n == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return n;
}

namespace detail {

void run_chunked(long n, const std::function<void(long)>& run_chunk) {
  int workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) run_chunk(i);
    return;
  }
  std::atomic<long> next{0};
  auto loop = [&] {
    for (;;) {
      long i = next.fetch_add(1);
      if (i >= n) return;
      run_chunk(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = workers < static_cast<int>(n) ? workers : static_cast<int>(n);
  pool.reserve(static_cast<size_t>(spawn));
  for (int t = 0; t < spawn - 1; ++t) pool.emplace_back(loop);
  loop();
  for (auto& th : pool) th.join();
}

}  // namespace detail

}  // namespace bcbound
