// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace epiproj {

using VecView = std::span<const double>;
using VecSpan = std::span<double>;

// Extended-real convention: +infinity marks points outside dom f and is
// produced only through infinity(); kernels must not reach it by overflow.
[[nodiscard]] constexpr double infinity() {
  return std::numeric_limits<double>::infinity();
}

[[nodiscard]] inline bool is_finite(double v) { return std::isfinite(v); }

// Neumaier-compensated accumulator. Scalar objective derivatives are
// evaluated down to a few ulps near the root, also at n = 1e6.
class StableSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

[[nodiscard]] inline double squared_norm(VecView v) {
  StableSum s;
  for (double x : v) s.add(x * x);
  return s.value();
}

[[nodiscard]] inline double squared_distance(VecView a, VecView b) {
  StableSum s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s.add(d * d);
  }
  return s.value();
}

[[nodiscard]] inline double inf_norm_diff(VecView a, VecView b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Runs fn(begin, end) over [0, count) split across up to `threads` workers.
// Chunk boundaries do not depend on the thread count reaching a worker.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(count, threads > 1 ? static_cast<std::size_t>(threads) : 1);
  if (workers <= 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (auto& t : pool) t.join();
}

}  // namespace epiproj
