#ifndef WELLSCAN_LADDER_HPP
#define WELLSCAN_LADDER_HPP

// Theta-ladder: sweep the level l upward on both half-paths, keep
// Theta_l = -min B over [H_l^-, H_l^+], and record every jump of Theta
// together with the record sub-excursions inside the excursion causing it.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wellscan/lattice_path.hpp"
#include "wellscan/point_sample.hpp"
#include "wellscan/sampling.hpp"

namespace wellscan::path {

enum class Side { Left, Right };

inline constexpr std::string_view to_string(Side s) noexcept { return s == Side::Left ? "left" : "right"; }

/// Streams an excursion below `start`; the caller stops feeding once the path
/// climbs back above it.  Rises above the running minimum are
/// measured when the path breaks that minimum; one is a jump when it strictly
/// beats the current record, which starts at the benchmark.  The closing rise
/// from the global minimum is never measured.
class ExcursionCounter {
 public:
  ExcursionCounter(double benchmark, double start) : start_(start), min_(start), peak_(start), record_(benchmark) {}

  void feed(double v) {
    if (v < min_) {
      const double rise = peak_ - min_;
      if (rise > record_) {
        record_ = rise;
        jumps_.push_back(rise);
      }
      min_ = v;
      peak_ = v;
    } else if (v > peak_) {
      peak_ = v;
    }
  }

  double minimum() const noexcept { return min_; }
  double height() const noexcept { return start_ - min_; }
  double record() const noexcept { return record_; }
  const std::vector<double>& jumps() const noexcept { return jumps_; }

 private:
  double start_, min_, peak_, record_;
  std::vector<double> jumps_;
};

struct ExcursionCount {
  std::size_t count = 0;
  std::vector<double> jump_heights;
  double height = 0.0;
};

/// Number of x_B jumps caused by an excursion gamma (gamma <= 0, endpoints 0)
/// entered with benchmark a: 0 when its height is below a, else 1 plus the
/// record sub-excursion heights.
inline ExcursionCount count_excursion_jumps(const std::vector<double>& excursion, double benchmark) {
  if (excursion.size() < 3 || excursion.front() != 0.0 || excursion.back() != 0.0)
    throw std::invalid_argument("count_excursion_jumps: excursion must start and end at 0");
  if (!(benchmark > 0.0)) throw std::invalid_argument("count_excursion_jumps: benchmark must be positive");
  ExcursionCounter c(benchmark, 0.0);
  for (std::size_t i = 1; i + 1 < excursion.size(); ++i) {
    if (excursion[i] > 0.0) throw std::invalid_argument("count_excursion_jumps: excursion must stay <= 0");
    c.feed(excursion[i]);
  }
  ExcursionCount out;
  out.height = c.height();
  if (!(out.height > 0.0)) throw std::invalid_argument("count_excursion_jumps: excursion must dip below 0");
  if (out.height < benchmark) return out;
  out.count = 1 + c.jumps().size();
  out.jump_heights = c.jumps();
  return out;
}

struct LadderEvent {
  double level = 0.0;             // l: running max of the side where the excursion starts
  double depth = 0.0;             // Theta_l before the jump
  double benchmark = 0.0;         // h(l) = l + Theta_l
  double excursion_height = 0.0;  // drop from l to the excursion minimum
  Side side = Side::Right;
  std::vector<double> inner_jump_heights;
  bool complete = true;  // false if the path ran out inside the excursion
};

/// A half-path read outward from the origin, one value per call.  Sources that
/// generate on demand may use the suggested standard deviation for the next
/// increment; stored paths ignore it.  nullopt means the half-path is used up.
template <class S>
concept HalfPathSource = requires(S& s, double sd) {
  { s.next(sd) } -> std::same_as<std::optional<double>>;
};

/// Outward walk over one side of a stored path.  The origin value belongs to
/// neither stream; the right side starts at offset 1, the left at offset -1.
class StoredHalfSource {
 public:
  StoredHalfSource(const LatticePath& path, Side side) : path_(&path), side_(side) {}

  std::optional<double> next(double /*preferred_sd*/) {
    ++k_;
    const std::int64_t i = side_ == Side::Right ? path_->origin_index + k_ : path_->origin_index - k_;
    if (i < 0 || i >= path_->size()) return std::nullopt;
    return path_->values[static_cast<std::size_t>(i)];
  }

 private:
  const LatticePath* path_;
  Side side_;
  std::int64_t k_ = 0;
};

/// One side of a Brownian path generated on demand.  Each increment is
/// N(0, sd^2) with sd = max(base_sd, preferred_sd), so the effective lattice
/// coarsens as the relevant depth scale grows.  Gives out after max_steps.
template <UniformSource U>
class BrownianHalfSource {
 public:
  BrownianHalfSource(U stream, double base_sd, std::uint64_t max_steps)
      : stream_(std::move(stream)), base_sd_(base_sd), max_steps_(max_steps) {
    if (!(base_sd > 0.0)) throw std::invalid_argument("BrownianHalfSource: base_sd must be positive");
  }

  std::optional<double> next(double preferred_sd) {
    if (steps_ >= max_steps_) return std::nullopt;
    ++steps_;
    b_ += std::max(base_sd_, preferred_sd) * sample_normal(stream_);
    return b_;
  }
  std::uint64_t steps() const noexcept { return steps_; }

 private:
  U stream_;
  double base_sd_;
  std::uint64_t max_steps_;
  std::uint64_t steps_ = 0;
  double b_ = 0.0;
};

struct LadderRun {
  std::vector<LadderEvent> events;
  bool exhausted = false;
  /// Every event and inner jump with height below this value is known.
  double certified = std::numeric_limits<double>::infinity();
  std::uint64_t steps = 0;
};

inline constexpr double kDefaultResolution = 50.0;

/// Two-sided Theta-ladder over a pair of half-path sources.
///
/// The side with the smaller running max (left on ties) is always advanced,
/// which sweeps the level upward on both sides at once.  A value above the
/// running max M is a new max; anything else opens an excursion below M that
/// lasts until the path climbs above M.  The excursion moves Theta when its
/// minimum drops below -Theta; its benchmark is then M + Theta.  Only the
/// running state and the current excursion's counter are held.
///
/// Sources get a suggested sd of scale/resolution, where scale is Theta
/// outside a Theta-moving excursion and the current record inside one.
template <HalfPathSource Src>
class LadderEngine {
 public:
  LadderEngine(Src left, Src right, double resolution = kDefaultResolution)
      : src_{std::move(left), std::move(right)}, resolution_(resolution) {}

  /// Runs until an event with benchmark > h_stop or until a source gives out.
  LadderRun run(double h_stop) {
    LadderRun out;
    for (;;) {
      const int s = max_[0] <= max_[1] ? 0 : 1;
      const auto v = pull(s, theta_ / resolution_, out);
      if (!v) {
        out.exhausted = true;
        out.certified = max_[s] + theta_;
        return out;
      }
      if (*v > max_[s]) {
        max_[s] = *v;
        continue;
      }
      const double start = max_[s];
      const double bench = start + theta_;
      ExcursionCounter c(bench, start);
      c.feed(*v);
      std::optional<double> w;
      for (;;) {
        const bool moving = c.minimum() < -theta_;
        w = pull(s, (moving ? c.record() : theta_) / resolution_, out);
        if (!w || *w > start) break;
        c.feed(*w);
      }
      const bool moving = c.minimum() < -theta_;
      if (moving) {
        LadderEvent e;
        e.level = start;
        e.depth = theta_;
        e.benchmark = bench;
        e.excursion_height = c.height();
        e.side = s == 0 ? Side::Left : Side::Right;
        e.inner_jump_heights = c.jumps();
        e.complete = w.has_value();
        out.events.push_back(std::move(e));
      }
      if (!w) {
        out.exhausted = true;
        out.certified = moving ? c.record() : bench;
        return out;
      }
      max_[s] = *w;
      if (moving) {
        theta_ = -c.minimum();
        if (bench > h_stop) {
          out.certified = std::max(h_stop, bench);
          return out;
        }
      }
    }
  }

 private:
  std::optional<double> pull(int s, double sd, LadderRun& out) {
    auto v = src_[s].next(sd);
    if (v) ++out.steps;
    return v;
  }

  Src src_[2];
  double resolution_;
  double max_[2] = {0.0, 0.0};
  double theta_ = 0.0;
};

/// Ladder over a stored path (both sides read outward).
inline LadderRun run_ladder(const LatticePath& path, double h_stop) {
  LadderEngine<StoredHalfSource> eng(StoredHalfSource(path, Side::Left), StoredHalfSource(path, Side::Right));
  return eng.run(h_stop);
}

/// Events with benchmark in [h_start, h_stop].
inline std::vector<LadderEvent> ladder_decompose(const LatticePath& path, double h_start, double h_stop) {
  if (!(h_start > 0.0 && h_stop > h_start)) throw std::invalid_argument("ladder_decompose: need 0 < h_start < h_stop");
  LadderRun run = run_ladder(path, h_stop);
  std::vector<LadderEvent> out;
  for (auto& e : run.events)
    if (e.benchmark >= h_start && e.benchmark <= h_stop) out.push_back(std::move(e));
  return out;
}

/// Log-heights of all jumps carried by a ladder run (benchmarks and inner
/// record heights) inside [log_start, log_end], sorted.
inline std::vector<double> ladder_points(const std::vector<LadderEvent>& events, double log_start, double log_end) {
  std::vector<double> pts;
  auto take = [&](double h) {
    if (!(h > 0.0)) return;
    const double t = std::log(h);
    if (t >= log_start && t <= log_end) pts.push_back(t);
  };
  for (const auto& e : events) {
    take(e.benchmark);
    for (double v : e.inner_jump_heights) take(v);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

/// Log-benchmarks where the event side differs from the previous event's.
/// Before the first event x_B sits at the origin, which counts as right.
inline std::vector<double> ladder_sign_changes(const std::vector<LadderEvent>& events, double log_start,
                                               double log_end) {
  std::vector<double> pts;
  Side prev = Side::Right;
  for (const auto& e : events) {
    if (e.side != prev && e.benchmark > 0.0) {
      const double t = std::log(e.benchmark);
      if (t >= log_start && t <= log_end) pts.push_back(t);
    }
    prev = e.side;
  }
  return pts;
}

/// Jump log-depths in [ln h_start, ln h_stop] from the ladder; the window end
/// is cut back to the certified height if the path runs out first.
inline PointSample extract_xi_ladder(const LatticePath& path, double h_start, double h_stop) {
  if (!(h_start > 0.0 && h_stop > h_start)) throw std::invalid_argument("extract_xi_ladder: need 0 < h_start < h_stop");
  const LadderRun run = run_ladder(path, h_stop);
  PointSample s;
  s.window_start = std::log(h_start);
  s.window_end = std::max(s.window_start, std::log(std::min(h_stop, run.certified)));
  s.generator_tag = GeneratorTag::PathLadder;
  s.seed_info = path.seed_info;
  s.points = ladder_points(run.events, s.window_start, s.window_end);
  return s;
}

}  // namespace wellscan::path

#endif  // WELLSCAN_LADDER_HPP
