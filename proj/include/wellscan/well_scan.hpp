#ifndef WELLSCAN_WELL_SCAN_HPP
#define WELLSCAN_WELL_SCAN_HPP

// Direct-definition oracle: well depths of every lattice point, x_B(h) as the
// h-minimum among the two h-extrema flanking the origin, and the jump set of
// h -> x_B(h) on a geometric h-grid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wellscan/lattice_path.hpp"
#include "wellscan/point_sample.hpp"

namespace wellscan::path {

enum class ExtremumKind { Minimum, Maximum };

struct Extremum {
  std::int64_t index = 0;  // raw index into LatticePath::values
  ExtremumKind kind = ExtremumKind::Minimum;
};

/// Well depth of every grid point, as a minimum and as a maximum.
///
/// For a minimum at x the left side is max B over (p, x] minus B(x), p the
/// nearest index left of x with B(p) <= B(x); the right side is max B over
/// [x, q) minus B(x), q the nearest index right of x with B(q) < B(x).
/// Maxima use -B.  A side with no p (or q) inside the path is censored and its
/// value is only a lower bound.  Computed with monotone stacks in O(n).
///
/// Offset 0 counts as the right side of the origin.
class DepthIndex {
 public:
  explicit DepthIndex(const LatticePath& p) : origin_(p.origin_index), n_(p.size()) {
    if (n_ < 1) throw std::invalid_argument("DepthIndex: empty path");
    lb_min_.resize(static_cast<std::size_t>(n_));
    lb_max_.resize(static_cast<std::size_t>(n_));
    std::vector<std::uint8_t> exact_min(static_cast<std::size_t>(n_)), exact_max(static_cast<std::size_t>(n_));
    depths(p.values, false, lb_min_, exact_min);
    depths(p.values, true, lb_max_, exact_max);
    sides_[0] = build_side(+1, exact_min, exact_max);
    sides_[1] = build_side(-1, exact_min, exact_max);
  }

  std::int64_t origin_index() const noexcept { return origin_; }
  std::int64_t size() const noexcept { return n_; }
  /// Lower bound on the depth of the well at raw index i (exact unless censored).
  double min_depth(std::int64_t i) const { return lb_min_.at(static_cast<std::size_t>(i)); }
  double max_depth(std::int64_t i) const { return lb_max_.at(static_cast<std::size_t>(i)); }

  /// Nearest h-extremum at offset >= 0 (right) or < 0 (left), or nullopt when
  /// the path cannot certify one: either none reaches depth h, or a closer
  /// point has a depth that censoring leaves undetermined.
  std::optional<Extremum> nearest(double h, bool right) const {
    const Side& s = sides_[right ? 0 : 1];
    const auto it = std::lower_bound(s.record_value.begin(), s.record_value.end(), h);
    if (it == s.record_value.end()) return std::nullopt;
    const std::int64_t pos = s.record_pos[static_cast<std::size_t>(it - s.record_value.begin())];
    if (s.first_uncertain < pos) return std::nullopt;
    const std::int64_t idx = right ? origin_ + pos : origin_ - 1 - pos;
    const auto k = static_cast<std::size_t>(idx);
    return Extremum{idx, lb_min_[k] >= h ? ExtremumKind::Minimum : ExtremumKind::Maximum};
  }

  /// x_B(h) as an offset from the origin, or nullopt on window exhaustion.
  std::optional<std::int64_t> x_b(double h) const {
    if (!(h > 0.0)) throw std::invalid_argument("x_b: h must be positive");
    const auto r = nearest(h, true);
    const auto l = nearest(h, false);
    if (!r || !l) return std::nullopt;
    if (r->kind == l->kind) throw std::logic_error("x_b: flanking h-extrema do not alternate");
    return (r->kind == ExtremumKind::Minimum ? r->index : l->index) - origin_;
  }

 private:
  struct Side {
    std::vector<double> record_value;  // strictly increasing running max of certified depth
    std::vector<std::int64_t> record_pos;
    std::int64_t first_uncertain = std::numeric_limits<std::int64_t>::max();
  };

  static void depths(const std::vector<double>& b, bool negate, std::vector<double>& lb,
                     std::vector<std::uint8_t>& exact) {
    const auto n = b.size();
    auto val = [&](std::size_t i) { return negate ? -b[i] : b[i]; };
    std::vector<double> left(n), right(n);
    std::vector<std::uint8_t> cens_left(n), cens_right(n);
    std::vector<std::pair<std::size_t, double>> stack;  // (index, max over its segment)
    stack.reserve(1024);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = val(i);
      double mx = v;
      while (!stack.empty() && val(stack.back().first) > v) {
        mx = std::max(mx, stack.back().second);
        stack.pop_back();
      }
      cens_left[i] = stack.empty();
      left[i] = mx - v;
      stack.emplace_back(i, mx);
    }
    stack.clear();
    for (std::size_t i = n; i-- > 0;) {
      const double v = val(i);
      double mx = v;
      while (!stack.empty() && val(stack.back().first) >= v) {
        mx = std::max(mx, stack.back().second);
        stack.pop_back();
      }
      cens_right[i] = stack.empty();
      right[i] = mx - v;
      stack.emplace_back(i, mx);
    }
    for (std::size_t i = 0; i < n; ++i) {
      lb[i] = std::min(left[i], right[i]);
      const bool cl = cens_left[i] != 0;
      const bool cr = cens_right[i] != 0;
      exact[i] = (!cl && !cr) || (!cl && left[i] <= right[i]) || (!cr && right[i] <= left[i]);
    }
  }

  Side build_side(int dir, const std::vector<std::uint8_t>& exact_min, const std::vector<std::uint8_t>& exact_max) {
    Side s;
    const std::int64_t count = dir > 0 ? n_ - origin_ : origin_;
    double best = -1.0;
    for (std::int64_t pos = 0; pos < count; ++pos) {
      const auto k = static_cast<std::size_t>(dir > 0 ? origin_ + pos : origin_ - 1 - pos);
      const double cert = std::max(lb_min_[k], lb_max_[k]);
      if (cert > best) {
        best = cert;
        s.record_value.push_back(cert);
        s.record_pos.push_back(pos);
      }
      if (s.first_uncertain == std::numeric_limits<std::int64_t>::max() && !(exact_min[k] && exact_max[k]))
        s.first_uncertain = pos;
    }
    return s;
  }

  std::int64_t origin_;
  std::int64_t n_;
  std::vector<double> lb_min_, lb_max_;
  Side sides_[2];
};

/// x_B(h) on `path` (offset from the origin), or nullopt on window exhaustion.
inline std::optional<std::int64_t> scan_xb(const LatticePath& path, double h) { return DepthIndex(path).x_b(h); }

/// Maximal influence interval [a, c] (offsets) of the local minimum at offset
/// x: a and c are where B peaks before falling to B(x) or below.
inline std::pair<std::int64_t, std::int64_t> influence_interval(const LatticePath& path, std::int64_t x) {
  const std::int64_t i0 = path.origin_index + x;
  const double v = path.values.at(static_cast<std::size_t>(i0));
  std::int64_t a = i0, c = i0;
  for (std::int64_t j = i0 - 1; j >= 0 && path.values[static_cast<std::size_t>(j)] > v; --j)
    if (path.values[static_cast<std::size_t>(j)] > path.values[static_cast<std::size_t>(a)]) a = j;
  for (std::int64_t j = i0 + 1; j < path.size() && path.values[static_cast<std::size_t>(j)] >= v; ++j)
    if (path.values[static_cast<std::size_t>(j)] > path.values[static_cast<std::size_t>(c)]) c = j;
  return {a - path.origin_index, c - path.origin_index};
}

inline constexpr double kDefaultGridFactor = 0.01;
inline constexpr double kBisectionRelTol = 1e-6;

struct ScanJump {
  double log_h = 0.0;
  std::int64_t before = 0;
  std::int64_t after = 0;
};

struct ScanTrace {
  std::vector<ScanJump> jumps;
  double log_start = 0.0;
  double log_end = 0.0;  // achieved upper end of the window
  bool truncated = false;
};

/// Walks a geometric h-grid from h_min to h_max and bisects every change of
/// x_B to relative precision 1e-6.  Stops at the last certified grid value if
/// the path runs out.
inline ScanTrace scan_jumps(const DepthIndex& index, double h_min, double h_max,
                            double grid_factor = kDefaultGridFactor) {
  if (!(h_min > 0.0 && h_max > h_min)) throw std::invalid_argument("scan_jumps: need 0 < h_min < h_max");
  if (!(grid_factor > 0.0)) throw std::invalid_argument("scan_jumps: grid factor must be positive");
  ScanTrace out;
  out.log_start = std::log(h_min);
  out.log_end = out.log_start;
  auto pos0 = index.x_b(h_min);
  if (!pos0) {
    out.truncated = true;
    return out;
  }
  double h = h_min;
  std::int64_t pos = *pos0;
  const double ratio = 1.0 + grid_factor;
  while (h < h_max) {
    const double h_next = std::min(h * ratio, h_max);
    const auto next = index.x_b(h_next);
    if (!next) {
      out.truncated = true;
      out.log_end = std::log(h);
      return out;
    }
    double lo = h;
    std::int64_t pos_lo = pos;
    while (pos_lo != *next) {
      // Invariant: x_B(lo) == pos_lo != x_B(hi).  Several jumps can share one
      // grid cell, so resume from the bracket's upper end until x_B(h_next).
      double hi = h_next;
      std::int64_t pos_hi = *next;
      while (hi / lo - 1.0 > kBisectionRelTol) {
        const double mid = std::sqrt(lo * hi);
        const auto pm = index.x_b(mid);
        if (!pm) throw std::logic_error("scan_jumps: exhaustion inside a certified bracket");
        if (*pm == pos_lo) lo = mid;
        else {
          hi = mid;
          pos_hi = *pm;
        }
      }
      out.jumps.push_back({0.5 * (std::log(lo) + std::log(hi)), pos_lo, pos_hi});
      lo = hi;
      pos_lo = pos_hi;
    }
    h = h_next;
    pos = *next;
  }
  out.log_end = std::log(h_max);
  return out;
}

/// Log-depths in [ln h_min, ln h_max] at which x_B jumps, found by scanning.
inline PointSample extract_xi_scan(const LatticePath& path, double h_min, double h_max,
                                   double grid_factor = kDefaultGridFactor) {
  const DepthIndex index(path);
  const ScanTrace t = scan_jumps(index, h_min, h_max, grid_factor);
  PointSample s;
  s.window_start = t.log_start;
  s.window_end = t.log_end;
  s.generator_tag = GeneratorTag::PathScan;
  s.seed_info = path.seed_info;
  for (const auto& j : t.jumps) s.points.push_back(j.log_h);
  return s;
}

/// The scan jumps at which x_B moves to the other side of the origin.
inline PointSample detect_sign_changes(const LatticePath& path, double h_min, double h_max,
                                       double grid_factor = kDefaultGridFactor) {
  const DepthIndex index(path);
  const ScanTrace t = scan_jumps(index, h_min, h_max, grid_factor);
  PointSample s;
  s.window_start = t.log_start;
  s.window_end = t.log_end;
  s.generator_tag = GeneratorTag::SignChange;
  s.seed_info = path.seed_info;
  for (const auto& j : t.jumps)
    if ((j.before >= 0) != (j.after >= 0)) s.points.push_back(j.log_h);
  return s;
}

}  // namespace wellscan::path

#endif  // WELLSCAN_WELL_SCAN_HPP
