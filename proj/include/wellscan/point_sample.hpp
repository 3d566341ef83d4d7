#ifndef WELLSCAN_POINT_SAMPLE_HPP
#define WELLSCAN_POINT_SAMPLE_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace wellscan {

enum class GeneratorTag { ClusterModel, PathScan, PathLadder, SignChange, RenewalCenters };

inline constexpr std::string_view to_string(GeneratorTag tag) noexcept {
  switch (tag) {
    case GeneratorTag::ClusterModel: return "cluster-model";
    case GeneratorTag::PathScan: return "path-scan";
    case GeneratorTag::PathLadder: return "path-ladder";
    case GeneratorTag::SignChange: return "sign-change";
    case GeneratorTag::RenewalCenters: return "renewal-centers";
  }
  return "unknown";
}

struct SeedInfo {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  bool operator==(const SeedInfo&) const = default;
};

/// Finite sorted point set observed on [window_start, window_end].
struct PointSample {
  double window_start = 0.0;
  double window_end = 0.0;
  std::vector<double> points;
  GeneratorTag generator_tag = GeneratorTag::ClusterModel;
  SeedInfo seed_info;

  double length() const noexcept { return window_end - window_start; }

  /// Number of points in the half-open interval [a, b).
  std::size_t count_in(double a, double b) const {
    const auto lo = std::lower_bound(points.begin(), points.end(), a);
    const auto hi = std::lower_bound(points.begin(), points.end(), b);
    return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
  }
};

/// Checks sortedness and that every point lies inside the window.
inline bool is_valid(const PointSample& s) {
  if (!(s.window_end >= s.window_start)) return false;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (s.points[i] < s.window_start || s.points[i] > s.window_end) return false;
    if (i > 0 && !(s.points[i] > s.points[i - 1])) return false;
  }
  return true;
}

}  // namespace wellscan

#endif  // WELLSCAN_POINT_SAMPLE_HPP
