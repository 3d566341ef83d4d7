#ifndef WELLSCAN_STATS_HPP
#define WELLSCAN_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "wellscan/analytics.hpp"
#include "wellscan/cluster_gen.hpp"
#include "wellscan/parallel.hpp"
#include "wellscan/point_sample.hpp"
#include "wellscan/sampling.hpp"

namespace wellscan::stats {

inline constexpr double kSignificance = 0.01;
inline constexpr std::size_t kMinSample = 25;

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  bool pass = true;
};

struct Estimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Kolmogorov survival function Q(x) = 2 sum_{k>=1} (-1)^{k-1} e^{-2k^2 x^2}.
inline double kolmogorov_q(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;  // the series is 1 to double precision here
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace detail {

inline void require_size(std::size_t n, const char* who) {
  if (n < kMinSample) throw std::invalid_argument(std::string(who) + ": need at least 25 observations");
}

// Asymptotic p-value with the Stephens small-sample correction.
inline TestResult ks_result(double d, double n_eff, std::size_t n, double significance) {
  const double rn = std::sqrt(n_eff);
  TestResult r;
  r.statistic = d;
  r.p_value = kolmogorov_q((rn + 0.12 + 0.11 / rn) * d);
  r.n = n;
  r.pass = r.p_value >= significance;
  return r;
}

inline TestResult chi2_result(double stat, int dof, std::size_t n, double significance) {
  if (dof < 1) throw std::invalid_argument("chi-square test needs at least two bins");
  TestResult r;
  r.statistic = stat;
  r.p_value = boost::math::gamma_q(0.5 * dof, 0.5 * stat);
  r.n = n;
  r.pass = r.p_value >= significance;
  return r;
}

}  // namespace detail

/// One-sample Kolmogorov-Smirnov test of `data` against a continuous cdf.
inline TestResult ks_test(std::vector<double> data, const std::function<double(double)>& cdf,
                          double significance = kSignificance) {
  detail::require_size(data.size(), "ks_test");
  std::sort(data.begin(), data.end());
  const double n = static_cast<double>(data.size());
  double d = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = cdf(data[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return detail::ks_result(d, n, data.size(), significance);
}

/// Two-sample Kolmogorov-Smirnov test; n in the result is the pooled size.
inline TestResult two_sample_ks(std::vector<double> a, std::vector<double> b, double significance = kSignificance) {
  detail::require_size(a.size(), "two_sample_ks");
  detail::require_size(b.size(), "two_sample_ks");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return detail::ks_result(d, na * nb / (na + nb), a.size() + b.size(), significance);
}

/// Pearson goodness of fit of bin counts against a pmf over the same bins
/// (the pmf must sum to 1; pool tails into the last bin beforehand).
inline TestResult chi2_pmf(const std::vector<std::uint64_t>& observed, const std::vector<double>& pmf,
                           double significance = kSignificance) {
  if (observed.size() != pmf.size()) throw std::invalid_argument("chi2_pmf: bin count mismatch");
  const std::uint64_t n = std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
  detail::require_size(n, "chi2_pmf");
  const double mass = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  if (std::fabs(mass - 1.0) > 1e-9) throw std::invalid_argument("chi2_pmf: pmf must sum to 1");
  double stat = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    if (!(pmf[k] > 0.0)) throw std::invalid_argument("chi2_pmf: every bin needs positive mass");
    const double e = static_cast<double>(n) * pmf[k];
    const double diff = static_cast<double>(observed[k]) - e;
    stat += diff * diff / e;
  }
  return detail::chi2_result(stat, static_cast<int>(pmf.size()) - 1, n, significance);
}

/// Chi-square test that two count vectors over the same bins share one pmf.
inline TestResult chi2_homogeneity(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                   double significance = kSignificance) {
  if (a.size() != b.size()) throw std::invalid_argument("chi2_homogeneity: bin count mismatch");
  const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
  const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
  detail::require_size(static_cast<std::size_t>(na), "chi2_homogeneity");
  detail::require_size(static_cast<std::size_t>(nb), "chi2_homogeneity");
  double stat = 0.0;
  int bins = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double tot = static_cast<double>(a[k] + b[k]);
    if (tot == 0.0) continue;
    ++bins;
    const double ea = tot * na / (na + nb);
    const double eb = tot * nb / (na + nb);
    stat += (a[k] - ea) * (a[k] - ea) / ea + (b[k] - eb) * (b[k] - eb) / eb;
  }
  return detail::chi2_result(stat, bins - 1, static_cast<std::size_t>(na + nb), significance);
}

/// Histogram of positive integer counts into bins 1..last-1 and a pooled
/// bin for >= last.
inline std::vector<std::uint64_t> count_bins(const std::vector<std::size_t>& counts, std::size_t last) {
  std::vector<std::uint64_t> bins(last, 0);
  for (std::size_t c : counts) {
    if (c < 1) throw std::invalid_argument("count_bins: counts must be positive");
    ++bins[std::min(c, last) - 1];
  }
  return bins;
}

inline constexpr double kBootstrapBlock = 10.0;

/// Points per unit length.  The standard error is the exact bootstrap SE for
/// resampling consecutive blocks of length 10 with replacement (the leftover
/// piece joins the last block); a window shorter than two blocks falls back
/// to the Poisson value sqrt(count)/length.
inline Estimate empirical_density(const PointSample& sample) {
  const double len = sample.length();
  if (!(len > 0.0)) throw std::invalid_argument("empirical_density: window must have positive length");
  Estimate out;
  out.estimate = static_cast<double>(sample.points.size()) / len;
  const auto blocks = static_cast<std::size_t>(std::floor(len / kBootstrapBlock));
  if (blocks < 2) {
    out.std_error = std::sqrt(static_cast<double>(sample.points.size())) / len;
    return out;
  }
  std::vector<double> per_block(blocks, 0.0);
  for (double p : sample.points) {
    const auto k = static_cast<std::size_t>((p - sample.window_start) / kBootstrapBlock);
    per_block[std::min(k, blocks - 1)] += 1.0;
  }
  // Density contributed by each block, scaled to its own length.
  const double last_len = len - kBootstrapBlock * static_cast<double>(blocks - 1);
  double mean = 0.0;
  for (std::size_t k = 0; k < blocks; ++k) {
    per_block[k] /= (k + 1 == blocks) ? last_len : kBootstrapBlock;
    mean += per_block[k];
  }
  mean /= static_cast<double>(blocks);
  double ss = 0.0;
  for (double v : per_block) ss += (v - mean) * (v - mean);
  out.std_error = std::sqrt(ss / static_cast<double>(blocks)) / std::sqrt(static_cast<double>(blocks));
  return out;
}

/// Fraction of disjoint probes [u, u+s], u = window_start + k s, that contain
/// no point.  Pooled as a ratio over samples; the standard error is the usual
/// ratio-estimator SE across samples (binomial if there is only one).
inline Estimate empirical_gap(const std::vector<PointSample>& samples, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("empirical_gap: s must be positive");
  if (samples.empty()) throw std::invalid_argument("empirical_gap: no samples");
  std::vector<double> empty(samples.size(), 0.0), probes(samples.size(), 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const PointSample& w = samples[i];
    if (w.length() < 3.0 * s) throw std::invalid_argument("empirical_gap: window shorter than 3 s");
    const auto k_max = static_cast<std::size_t>(std::floor(w.length() / s));
    for (std::size_t k = 0; k < k_max; ++k) {
      const double u = w.window_start + static_cast<double>(k) * s;
      const auto first = std::lower_bound(w.points.begin(), w.points.end(), u);
      if (first == w.points.end() || *first > u + s) empty[i] += 1.0;
      probes[i] += 1.0;
    }
  }
  const double e_tot = std::accumulate(empty.begin(), empty.end(), 0.0);
  const double n_tot = std::accumulate(probes.begin(), probes.end(), 0.0);
  Estimate out;
  out.estimate = e_tot / n_tot;
  const auto r = static_cast<double>(samples.size());
  if (samples.size() < 2) {
    out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / n_tot);
    return out;
  }
  const double n_bar = n_tot / r;
  double ss = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double resid = empty[i] - out.estimate * probes[i];
    ss += resid * resid;
  }
  out.std_error = std::sqrt(ss / (r * (r - 1.0))) / n_bar;
  return out;
}

struct CltSummary {
  double horizon = 0.0;
  std::size_t replicates = 0;
  std::vector<double> normalized_values;  // (N[0,T] - (4/3) T) / sqrt(T)
  double sample_variance = 0.0;
  double mean = 0.0;
};

inline double sample_mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("sample_mean: empty input");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("sample_variance: need two values");
  const double m = sample_mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

/// Replicate m runs synthesize_xi on [0, horizon] with stream.substream(m).
inline CltSummary clt_experiment(const RngStream& stream, double horizon, std::size_t replicates,
                                 unsigned threads = 1) {
  if (!(horizon >= 100.0)) throw std::invalid_argument("clt_experiment: horizon must be at least 100");
  if (replicates < 100) throw std::invalid_argument("clt_experiment: need at least 100 replicates");
  CltSummary out;
  out.horizon = horizon;
  out.replicates = replicates;
  out.normalized_values.assign(replicates, 0.0);
  const double root_t = std::sqrt(horizon);
  parallel_for(replicates, threads, [&](std::size_t m) {
    RngStream s = stream.substream(m);
    const PointSample w = cluster::synthesize_xi(s, 0.0, horizon);
    out.normalized_values[m] =
        (static_cast<double>(w.points.size()) - analytics::kMeanDensity * horizon) / root_t;
  });
  out.mean = sample_mean(out.normalized_values);
  out.sample_variance = sample_variance(out.normalized_values);
  return out;
}

/// Normal(mean, sd^2) cdf.
inline double normal_cdf(double x, double mean = 0.0, double sd = 1.0) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

inline double exponential_cdf(double x, double rate) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); }

}  // namespace wellscan::stats

#endif  // WELLSCAN_STATS_HPP
