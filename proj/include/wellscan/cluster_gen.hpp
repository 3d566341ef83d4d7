#ifndef WELLSCAN_CLUSTER_GEN_HPP
#define WELLSCAN_CLUSTER_GEN_HPP

// Generative side of the renewal-cluster model: single clusters (direct
// recursion and the (s,x) chain), the center renewal, and full windows.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wellscan/point_sample.hpp"
#include "wellscan/sampling.hpp"

namespace wellscan::cluster {

inline constexpr std::size_t kCountCap = 10000;
inline constexpr double kDefaultBurnIn = 40.0;

struct ClusterDraw {
  std::size_t count = 0;
  std::vector<double> offsets;  // t_1 = 0 < t_2 < ... < t_count
  double endpoint = 0.0;        // F
  double next_center = 0.0;     // R = F + Z
  bool truncated = false;
};

struct ChainDraw {
  std::size_t count = 0;
  double endpoint = 0.0;
  bool truncated = false;
};

/// One cluster from the z-recursion z_{k+1} = z_k + Y_k e^{t_k} (z_1 = 1,
/// t_1 = 0).  The count is the first i with t_{i+1} > log z_{i+1}.
/// Uniforms are consumed as Y_k, then the gap t_{k+1} - t_k, per step, and a
/// final Exp(2) draw for Z.
template <UniformSource U>
ClusterDraw draw_cluster(U& stream) {
  ClusterDraw d;
  d.offsets.push_back(0.0);
  double t = 0.0;
  double z = 1.0;
  for (;;) {
    const double y = sample_exp(stream, 1.0);
    const double gap = sample_exp(stream, 1.0);
    const double z_next = z + y * std::exp(t);
    const double t_next = t + gap;
    const double log_z_next = std::log(z_next);
    if (t_next > log_z_next) {
      d.endpoint = log_z_next;
      break;
    }
    if (d.offsets.size() >= kCountCap) {
      d.truncated = true;
      d.endpoint = log_z_next;
      break;
    }
    d.offsets.push_back(t_next);
    t = t_next;
    z = z_next;
  }
  d.count = d.offsets.size();
  d.next_center = d.endpoint + sample_exp(stream, 2.0);
  return d;
}

/// (count, endpoint) from the chain s_{k+1} = (s_k + a_k) phi_k,
/// x_{k+1} = x_k (1 + a_k/s_k), started at (1, 1) and stopped at the first
/// index with s < 1.  a_k ~ Exp(1); phi_k = 1/(1 + beta_k) with beta_k of
/// density (1+x)^{-2}, which makes phi_k uniform on (0,1).
template <UniformSource U>
ChainDraw draw_cluster_chain(U& stream) {
  ChainDraw d;
  double s = 1.0;
  double x = 1.0;
  for (std::size_t i = 1;; ++i) {
    const double alpha = sample_exp(stream, 1.0);
    const double phi = 1.0 / (1.0 + sample_record_overshoot(stream));
    x *= 1.0 + alpha / s;
    s = (s + alpha) * phi;
    if (s < 1.0 || i >= kCountCap) {
      d.count = i;
      d.endpoint = std::log(x);
      d.truncated = !(s < 1.0);
      return d;
    }
  }
}

namespace detail {

inline void check_window(double window_start, double window_end, double burn_in) {
  if (!(window_end >= window_start)) throw std::invalid_argument("window_end must not precede window_start");
  if (!std::isfinite(window_start) || !std::isfinite(window_end))
    throw std::invalid_argument("window bounds must be finite");
  if (!(burn_in >= 0.0)) throw std::invalid_argument("burn_in must be nonnegative");
}

template <UniformSource U>
SeedInfo seed_info_of(const U& stream) {
  const auto [seed, id] = stream_identity(stream);
  return {seed, id};
}

}  // namespace detail

/// Renewal with Exp(1)+Exp(2) interarrivals, started burn_in before the
/// window; pre-window points are discarded.
template <UniformSource U>
PointSample draw_centers(U& stream, double window_start, double window_end, double burn_in = kDefaultBurnIn) {
  detail::check_window(window_start, window_end, burn_in);
  PointSample out;
  out.window_start = window_start;
  out.window_end = window_end;
  out.generator_tag = GeneratorTag::RenewalCenters;
  out.seed_info = detail::seed_info_of(stream);
  if (window_end == window_start) return out;
  double c = window_start - burn_in;
  for (;;) {
    c += sample_exp(stream, 1.0);
    c += sample_exp(stream, 2.0);
    if (c > window_end) break;
    if (c >= window_start) out.points.push_back(c);
  }
  return out;
}

/// A window of the jump process: centers c, c + R_1, c + R_1 + R_2, ...
/// starting burn_in before the window, each carrying the offsets of the
/// cluster that produced its R.
template <UniformSource U>
PointSample synthesize_xi(U& stream, double window_start, double window_end, double burn_in = kDefaultBurnIn) {
  detail::check_window(window_start, window_end, burn_in);
  PointSample out;
  out.window_start = window_start;
  out.window_end = window_end;
  out.generator_tag = GeneratorTag::ClusterModel;
  out.seed_info = detail::seed_info_of(stream);
  if (window_end == window_start) return out;
  double c = window_start - burn_in;
  while (c <= window_end) {
    const ClusterDraw d = draw_cluster(stream);
    if (d.truncated) throw std::runtime_error("synthesize_xi: cluster hit the count cap");
    for (double off : d.offsets) {
      const double p = c + off;
      if (p > window_end) break;
      if (p >= window_start) out.points.push_back(p);
    }
    c += d.next_center;
  }
  return out;
}

}  // namespace wellscan::cluster

#endif  // WELLSCAN_CLUSTER_GEN_HPP
