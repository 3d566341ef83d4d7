#ifndef WELLSCAN_ONE_SIDED_HPP
#define WELLSCAN_ONE_SIDED_HPP

// Jump count of x_B for a path that is +infinity left of the origin.  x_B then
// jumps exactly at the record heights of rises above the running minimum, so
// rung n is the first rise beating h_{n-1} that ends in a new minimum.  By
// scaling every rung starts from benchmark 1, and w_n = h_n / h_{n-1} is the
// height of that rise in units of h_{n-1}.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wellscan/sampling.hpp"

namespace wellscan::path {

struct NuRung {
  std::int64_t nu = 0;  // jumps of x_B up to h_n (= n)
  double log_h = 0.0;   // log h_n with h_0 = 1
  double log_w = 0.0;   // log(h_n / h_{n-1})
};

struct OneSidedRun {
  std::vector<NuRung> rungs;
  bool truncated = false;
  std::uint64_t steps = 0;
};

inline constexpr std::uint64_t kDefaultOneSidedStepCap = std::uint64_t{1} << 40;

/// `step` is the lattice spacing at unit scale; within a rise the increment sd
/// grows with the rise so the relative resolution stays sqrt(step).
template <UniformSource U>
OneSidedRun one_sided_nu(U& stream, std::int64_t n_ladder_steps, double step,
                         std::uint64_t max_steps = kDefaultOneSidedStepCap) {
  if (n_ladder_steps < 1) throw std::invalid_argument("one_sided_nu: need at least one rung");
  if (!(step > 0.0 && step < 1.0)) throw std::invalid_argument("one_sided_nu: step must lie in (0, 1)");
  const double sd = std::sqrt(step);
  OneSidedRun out;
  out.rungs.reserve(static_cast<std::size_t>(n_ladder_steps));
  // Path coordinates relative to the current rung scale; b is the current
  // value, m the running minimum.  The path starts at its minimum 0.
  double b = 0.0;
  double m = 0.0;
  double log_h = 0.0;
  auto advance = [&](double scale) {
    if (out.steps >= max_steps) return false;
    ++out.steps;
    b += sd * scale * sample_normal(stream);
    return true;
  };
  for (std::int64_t n = 1; n <= n_ladder_steps; ++n) {
    // Phase A: wait for a rise of at least the benchmark 1.
    while (b - m < 1.0) {
      if (!advance(1.0)) {
        out.truncated = true;
        return out;
      }
      m = std::min(m, b);
    }
    // Phase B: follow the rise until the path breaks the minimum.
    double top = b - m;
    while (b >= m) {
      if (!advance(std::max(1.0, top))) {
        out.truncated = true;
        return out;
      }
      top = std::max(top, b - m);
    }
    log_h += std::log(top);
    out.rungs.push_back({n, log_h, std::log(top)});
    // Rescale so the new record is 1.
    b /= top;
    m = b;
  }
  return out;
}

}  // namespace wellscan::path

#endif  // WELLSCAN_ONE_SIDED_HPP
