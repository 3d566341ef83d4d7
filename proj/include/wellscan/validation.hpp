#ifndef WELLSCAN_VALIDATION_HPP
#define WELLSCAN_VALIDATION_HPP

// The acceptance criteria as runnable checks.  Shared by `wellscan validate`
// and the acceptance test binary so both report the same numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wellscan/analytics.hpp"
#include "wellscan/cluster_gen.hpp"
#include "wellscan/hyp_u.hpp"
#include "wellscan/ladder.hpp"
#include "wellscan/one_sided.hpp"
#include "wellscan/parallel.hpp"
#include "wellscan/sampling.hpp"
#include "wellscan/stats.hpp"
#include "wellscan/well_scan.hpp"

namespace wellscan::validation {

struct Check {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;  // allowed |value - target|; for p-values the floor
  bool pass = false;
};

struct CriterionResult {
  std::string id;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

struct Config {
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

namespace detail {

inline Check near(std::string name, double value, double target, double tol) {
  return {std::move(name), value, target, tol, std::fabs(value - target) <= tol};
}

inline Check p_value(std::string name, const stats::TestResult& r, double floor = stats::kSignificance) {
  return {std::move(name), r.p_value, floor, floor, r.p_value >= floor};
}

inline Check truth(std::string name, bool ok) { return {std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, ok}; }

// Fixed stream ids, one family per criterion.
enum StreamId : std::uint64_t {
  kE1Direct = 101,
  kE1Chain = 102,
  kF1 = 201,
  kD1 = 301,
  kG3 = 401,
  kC1 = 501,
  kX1 = 601,
  kD2Oracle = 701,
  kD2Model = 702,
  kN1 = 801,
  kN1Long = 802,
};

template <class Body>
CriterionResult timed(std::string id, std::string title, Body&& body) {
  CriterionResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  const auto t0 = std::chrono::steady_clock::now();
  body(r.checks);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

/// A1: analytic constants.
inline CriterionResult run_a1(const Config&) {
  return detail::timed("A1", "analytic constants", [](std::vector<Check>& c) {
    const auto rep = analytics::analytic_report();
    c.push_back(detail::truth("mean_density == 4/3", rep.mean_density == 4.0 / 3.0));
    c.push_back(detail::near("sigma2", rep.sigma2, 2.105327, 1e-5));
    c.push_back(detail::near("z0", rep.z0, 1.57391, 1e-4));
    c.push_back(detail::near("expected_N (MGF slope)", rep.expected_N, 2.0, 1e-6));
    c.push_back(detail::near("lambda0 == ln z0", rep.lambda0, std::log(rep.z0), 1e-15));
  });
}

/// A2: Psi identities on random supported points.
inline CriterionResult run_a2(const Config& cfg) {
  return detail::timed("A2", "Psi identity suite", [&](std::vector<Check>& c) {
    using hyp::psi_u;
    RngStream rs(cfg.seed, 1);
    auto unif = [&](double lo, double hi) { return lo + (hi - lo) * rs.next_uniform(); };
    double rec = 0.0, rec_hi = 0.0, kummer = 0.0, contig = 0.0, special = 0.0, deriv = 0.0;
    for (int i = 0; i < 100; ++i) {
      {  // three-term recurrence in a, z = 1, a in (0.1, 1] and (1, 2]
        const double a = unif(0.1, 1.0), b = unif(-1.0, 2.0);
        rec = std::max(rec, std::fabs(psi_u(a - 1, b, 1) + (b - 2 * a - 1) * psi_u(a, b, 1) +
                                      a * (a - b + 1) * psi_u(a + 1, b, 1)));
        const double a2 = unif(1.0, 2.0);
        rec_hi = std::max(rec_hi, std::fabs(psi_u(a2 - 1, b, 1) + (b - 2 * a2 - 1) * psi_u(a2, b, 1) +
                                            a2 * (a2 - b + 1) * psi_u(a2 + 1, b, 1)));
      }
      {  // Psi(a,b;z) = z^{1-b} Psi(a-b+1, 2-b; z)
        const double a = unif(-1.9, 1.0), z = unif(0.5, 3.0);
        double b;
        do b = unif(-1.0, 2.0);
        while (!(a - b + 1 >= hyp::kPsiMinA + 0.05 && a - b + 1 <= hyp::kPsiMaxA));
        const double lhs = psi_u(a, b, z);
        kummer = std::max(kummer, std::fabs(lhs - std::pow(z, 1 - b) * psi_u(a - b + 1, 2 - b, z)) / std::max(1.0, std::fabs(lhs)));
      }
      {  // Psi(a-1,b;z) - z Psi(a,b+1;z) = (a-b) Psi(a,b;z)
        const double a = unif(-0.9, 3.0), b = unif(-1.0, 2.0), z = unif(0.5, 3.0);
        const double lhs = psi_u(a - 1, b, z) - z * psi_u(a, b + 1, z);
        contig = std::max(contig, std::fabs(lhs - (a - b) * psi_u(a, b, z)) / std::max(1.0, std::fabs(lhs)));
      }
      {
        const double b = unif(-5.0, 10.0), z = unif(0.1, 10.0);
        special = std::max({special, std::fabs(psi_u(0, b, z) - 1.0), std::fabs(psi_u(-1, b, z) - (z - b))});
      }
      {  // d/dz Psi(a,b;z) = -a Psi(a+1,b+1;z)
        const double a = unif(-1.9, 2.0), b = unif(-1.0, 2.0), z = unif(0.5, 3.0), h = 1e-4;
        const double fd = (psi_u(a, b, z + h) - psi_u(a, b, z - h)) / (2 * h);
        deriv = std::max(deriv, std::fabs(fd + a * psi_u(a + 1, b + 1, z)));
      }
    }
    c.push_back(detail::near("recurrence residual, a in (0.1,1]", rec, 0.0, 1e-8));
    c.push_back(detail::near("recurrence residual, a in (1,2]", rec_hi, 0.0, 1e-8));
    c.push_back(detail::near("Kummer residual", kummer, 0.0, 1e-8));
    c.push_back(detail::near("contiguous residual", contig, 0.0, 1e-8));
    c.push_back(detail::near("special values error", special, 0.0, 1e-12));
    c.push_back(detail::near("z-derivative residual", deriv, 0.0, 1e-5));
  });
}

/// Draws n clusters from substreams of one stream (replicate i uses substream i).
template <class Draw>
auto draw_many(const RngStream& base, std::size_t n, unsigned threads, Draw&& draw) {
  using T = decltype(draw(std::declval<RngStream&>()));
  std::vector<T> out(n);
  parallel_for(n, threads, [&](std::size_t i) {
    RngStream s = base.substream(i);
    out[i] = draw(s);
  });
  return out;
}

inline constexpr std::size_t kCountBins = 9;  // 1..8 and >= 9

/// E1: direct recursion vs (s,x)-chain.
inline CriterionResult run_e1(const Config& cfg) {
  return detail::timed("E1", "cluster sampler equivalence", [&](std::vector<Check>& c) {
    constexpr std::size_t n = 100000;
    const auto d = draw_many(RngStream(cfg.seed, detail::kE1Direct), n, cfg.threads,
                             [](RngStream& s) { return cluster::draw_cluster(s); });
    const auto q = draw_many(RngStream(cfg.seed, detail::kE1Chain), n, cfg.threads,
                             [](RngStream& s) { return cluster::draw_cluster_chain(s); });
    std::vector<std::size_t> cd, cq;
    std::vector<double> fd, fq;
    bool truncated = false;
    for (const auto& x : d) {
      cd.push_back(x.count);
      fd.push_back(x.endpoint);
      truncated |= x.truncated;
    }
    for (const auto& x : q) {
      cq.push_back(x.count);
      fq.push_back(x.endpoint);
      truncated |= x.truncated;
    }
    c.push_back(detail::p_value("count pmf chi2 p",
                                stats::chi2_homogeneity(stats::count_bins(cd, kCountBins), stats::count_bins(cq, kCountBins))));
    c.push_back(detail::p_value("endpoint two-sample KS p", stats::two_sample_ks(fd, fq)));
    c.push_back(detail::truth("no truncated draws", !truncated));
  });
}

/// F1: marginals and MGF of the direct sampler.
inline CriterionResult run_f1(const Config& cfg) {
  return detail::timed("F1", "cluster marginals and MGF", [&](std::vector<Check>& c) {
    constexpr std::size_t n = 100000;
    const auto d = draw_many(RngStream(cfg.seed, detail::kF1), n, cfg.threads,
                             [](RngStream& s) { return cluster::draw_cluster(s); });
    std::vector<double> f, counts;
    for (const auto& x : d) {
      f.push_back(x.endpoint);
      counts.push_back(static_cast<double>(x.count));
    }
    c.push_back(detail::p_value("endpoint KS vs Exp(1) p",
                                stats::ks_test(f, [](double x) { return stats::exponential_cdf(x, 1.0); })));
    const double se_n = std::sqrt(stats::sample_variance(counts) / n);
    c.push_back(detail::near("mean count", stats::sample_mean(counts), 2.0, 3 * se_n));
    for (auto [lam, mu] : {std::pair{-1.0, -1.0}, std::pair{0.2, 0.1}}) {
      std::vector<double> e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = std::exp(lam * counts[i] + mu * f[i]);
      const double se = std::sqrt(stats::sample_variance(e) / n);
      std::ostringstream name;
      name << "empirical MGF at (" << lam << ", " << mu << ")";
      c.push_back(detail::near(name.str(), stats::sample_mean(e), analytics::mgf_xi(lam, mu).value, 3 * se));
    }
  });
}

/// D1: density of one long model window.
inline CriterionResult run_d1(const Config& cfg) {
  return detail::timed("D1", "model density", [&](std::vector<Check>& c) {
    RngStream s(cfg.seed, detail::kD1);
    const PointSample w = cluster::synthesize_xi(s, 0.0, 1e4);
    c.push_back(detail::near("density on [0, 1e4]", stats::empirical_density(w).estimate, 4.0 / 3.0, 0.02));
  });
}

inline constexpr std::size_t kGapWindows = 400;
inline constexpr double kGapWindowLength = 100.0;

/// G3: gap curve of the model under the log-scale reading.
inline CriterionResult run_g3(const Config& cfg) {
  return detail::timed("G3", "gap probability curve", [&](std::vector<Check>& c) {
    const RngStream base(cfg.seed, detail::kG3);
    std::vector<PointSample> windows(kGapWindows);
    parallel_for(kGapWindows, cfg.threads, [&](std::size_t i) {
      RngStream s = base.substream(i);
      windows[i] = cluster::synthesize_xi(s, 0.0, kGapWindowLength);
    });
    for (double s : {0.25, 0.5, 1.0, 2.0}) {
      const auto est = stats::empirical_gap(windows, s);
      std::ostringstream name;
      name << "gap frequency at s = " << s;
      c.push_back(detail::near(name.str(), est.estimate, analytics::gap_probability(s), 3 * est.std_error));
    }
  });
}

/// C1: central limit theorem for the window count.
inline CriterionResult run_c1(const Config& cfg) {
  return detail::timed("C1", "CLT variance and shape", [&](std::vector<Check>& c) {
    const double sigma2 = analytics::sigma_squared();
    const auto sum = stats::clt_experiment(RngStream(cfg.seed, detail::kC1), 500.0, 2000, cfg.threads);
    c.push_back(detail::near("sample variance", sum.sample_variance, sigma2, 0.1 * sigma2));
    const double sd = std::sqrt(sigma2);
    c.push_back(detail::p_value("KS vs Normal(0, sigma2) p", stats::ks_test(sum.normalized_values, [sd](double x) {
                                  return stats::normal_cdf(x, 0.0, sd);
                                })));
  });
}

struct OracleComparison {
  std::size_t scan_points = 0;
  std::size_t ladder_points = 0;
  double max_mismatch = 0.0;
  bool equal = true;
};

/// Compares scan and ladder jump sets of one path on their common certified
/// window (cut back by `margin` in log scale).
inline OracleComparison compare_oracles(const path::LatticePath& p, double h_min, double tol = 1e-4,
                                        double margin = 2e-4) {
  const PointSample a = path::extract_xi_scan(p, h_min, 1e12);
  const PointSample b = path::extract_xi_ladder(p, h_min, 1e12);
  const double hi = std::min(a.window_end, b.window_end) - margin;
  std::vector<double> pa, pb;
  for (double x : a.points)
    if (x <= hi) pa.push_back(x);
  for (double x : b.points)
    if (x <= hi) pb.push_back(x);
  OracleComparison out;
  out.scan_points = pa.size();
  out.ladder_points = pb.size();
  out.equal = pa.size() == pb.size();
  for (std::size_t i = 0; out.equal && i < pa.size(); ++i) {
    out.max_mismatch = std::max(out.max_mismatch, std::fabs(pa[i] - pb[i]));
    out.equal = std::fabs(pa[i] - pb[i]) <= tol;
  }
  return out;
}

/// X1: scan oracle vs ladder oracle on stored gaussian paths.
inline CriterionResult run_x1(const Config& cfg) {
  return detail::timed("X1", "scan and ladder oracles agree", [&](std::vector<Check>& c) {
    constexpr std::size_t kPaths = 20;
    const RngStream base(cfg.seed, detail::kX1);
    std::vector<OracleComparison> res(kPaths);
    parallel_for(kPaths, cfg.threads, [&](std::size_t i) {
      RngStream s = base.substream(i);
      const auto p = path::generate_path(s, 500000, 1.0, path::PathMode::Gaussian);
      res[i] = compare_oracles(p, 10.0);
    });
    std::size_t agree = 0, points = 0;
    double worst = 0.0;
    for (const auto& r : res) {
      agree += r.equal;
      points += r.scan_points;
      worst = std::max(worst, r.max_mismatch);
    }
    c.push_back(detail::near("paths with identical jump sets", static_cast<double>(agree), kPaths, 0.0));
    c.push_back(detail::near("largest log-scale mismatch", worst, 0.0, 1e-4));
    c.push_back({"jumps compared (at least 20)", static_cast<double>(points), 20.0, 0.0, points >= 20});
  });
}

inline constexpr std::size_t kStreamingReplicates = 2000;
inline constexpr double kStreamingWindow = 3.0;

/// Output of the streaming two-sided ladder experiment behind D2, D3 and L1.
struct StreamingOracle {
  std::size_t replicates = 0;
  double log_start = 0.0;
  double log_end = 0.0;
  std::size_t jumps = 0;
  std::size_t sign_changes = 0;
  std::vector<double> interarrivals;  // within-window spacings
  std::vector<double> log_overshoot;  // ln(h~/h), events in window
  std::vector<double> log_gap;        // ln(h+/h~)
  bool exhausted = false;
};

/// Streaming ladder over on-demand Brownian sides (unit base spacing), window
/// [ln(50 sqrt(step)), +3] in log-depth.  Replicate r uses substreams 0 and 1
/// of base.substream(r) for its left and right sides.
inline StreamingOracle streaming_oracle(const RngStream& base, std::size_t replicates, unsigned threads,
                                        double step = 1.0, double resolution = path::kDefaultResolution) {
  StreamingOracle out;
  out.replicates = replicates;
  out.log_start = std::log(50.0 * std::sqrt(step));
  out.log_end = out.log_start + kStreamingWindow;
  struct Rep {
    std::vector<double> pts;
    std::size_t signs = 0;
    std::vector<double> over, gap;
    bool exhausted = false;
  };
  std::vector<Rep> reps(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    const RngStream rs = base.substream(r);
    using Source = path::BrownianHalfSource<RngStream>;
    constexpr std::uint64_t kCap = std::uint64_t{1} << 34;
    path::LadderEngine<Source> eng(Source(rs.substream(0), std::sqrt(step), kCap),
                                   Source(rs.substream(1), std::sqrt(step), kCap), resolution);
    const auto run = eng.run(std::exp(out.log_end));
    Rep& rep = reps[r];
    rep.exhausted = run.exhausted;
    rep.pts = path::ladder_points(run.events, out.log_start, out.log_end);
    rep.signs = path::ladder_sign_changes(run.events, out.log_start, out.log_end).size();
    for (std::size_t i = 0; i + 1 < run.events.size(); ++i) {
      const auto& e = run.events[i];
      const double t = std::log(e.benchmark);
      if (t < out.log_start || t > out.log_end) continue;
      rep.over.push_back(std::log(e.excursion_height / e.benchmark));
      rep.gap.push_back(std::log(run.events[i + 1].benchmark / e.excursion_height));
    }
  });
  for (const auto& rep : reps) {
    out.jumps += rep.pts.size();
    out.sign_changes += rep.signs;
    for (std::size_t i = 1; i < rep.pts.size(); ++i) out.interarrivals.push_back(rep.pts[i] - rep.pts[i - 1]);
    out.log_overshoot.insert(out.log_overshoot.end(), rep.over.begin(), rep.over.end());
    out.log_gap.insert(out.log_gap.end(), rep.gap.begin(), rep.gap.end());
    out.exhausted |= rep.exhausted;
  }
  return out;
}

/// Within-window spacings of model windows of the given length.
inline std::vector<double> model_interarrivals(const RngStream& base, std::size_t windows, double length,
                                               unsigned threads) {
  std::vector<std::vector<double>> per(windows);
  parallel_for(windows, threads, [&](std::size_t i) {
    RngStream s = base.substream(i);
    const PointSample w = cluster::synthesize_xi(s, 0.0, length);
    for (std::size_t k = 1; k < w.points.size(); ++k) per[i].push_back(w.points[k] - w.points[k - 1]);
  });
  std::vector<double> out;
  for (const auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

/// D2, D3 and L1 from one streaming run.
inline std::vector<CriterionResult> run_streaming(const Config& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const StreamingOracle o = streaming_oracle(RngStream(cfg.seed, detail::kD2Oracle), kStreamingReplicates, cfg.threads);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double area = kStreamingWindow * static_cast<double>(o.replicates);

  CriterionResult d2{"D2", "oracle density", {}, secs};
  const double density = static_cast<double>(o.jumps) / area;
  d2.checks.push_back(detail::near("pooled jump density", density, 4.0 / 3.0, 0.1 * 4.0 / 3.0));
  const auto model = model_interarrivals(RngStream(cfg.seed, detail::kD2Model), kStreamingReplicates,
                                         kStreamingWindow, cfg.threads);
  d2.checks.push_back(detail::p_value("interarrivals oracle vs model two-sample KS p",
                                      stats::two_sample_ks(o.interarrivals, model)));
  d2.checks.push_back(detail::truth("no source exhausted", !o.exhausted));

  CriterionResult d3{"D3", "sign-change density", {}, secs};
  const double signs = static_cast<double>(o.sign_changes) / area;
  d3.checks.push_back(detail::near("sign-change density", signs, 1.0 / 3.0, 0.15 / 3.0));

  CriterionResult l1{"L1", "overshoot laws", {}, secs};
  l1.checks.push_back(detail::p_value("ln(h~/h) KS vs Exp(1) p", stats::ks_test(o.log_overshoot, [](double x) {
                                        return stats::exponential_cdf(x, 1.0);
                                      })));
  l1.checks.push_back(detail::p_value("ln(h+/h~) KS vs Exp(2) p", stats::ks_test(o.log_gap, [](double x) {
                                        return stats::exponential_cdf(x, 2.0);
                                      })));
  return {d2, d3, l1};
}

/// N1: one-sided jump count.
inline CriterionResult run_n1(const Config& cfg) {
  return detail::timed("N1", "one-sided jump count", [&](std::vector<Check>& c) {
    RngStream s(cfg.seed, detail::kN1);
    const auto run = path::one_sided_nu(s, 1000, 1e-4);
    c.push_back(detail::truth("1000 rungs completed", !run.truncated && run.rungs.size() == 1000));
    if (run.rungs.empty()) return;
    const auto& last = run.rungs.back();
    c.push_back(detail::near("nu / ln h at n = 1000", static_cast<double>(last.nu) / last.log_h, 1.0, 0.1));
    std::vector<double> lw;
    for (const auto& r : run.rungs) lw.push_back(r.log_w);
    auto exp1 = [](double x) { return stats::exponential_cdf(x, 1.0); };
    c.push_back(detail::p_value("ln w KS vs Exp(1) p, 1000 rungs", stats::ks_test(lw, exp1)));
    RngStream s2(cfg.seed, detail::kN1Long);
    const auto longer = path::one_sided_nu(s2, 10000, 1e-4);
    std::vector<double> lw2;
    for (const auto& r : longer.rungs) lw2.push_back(r.log_w);
    c.push_back(detail::p_value("ln w KS vs Exp(1) p, 10000 rungs", stats::ks_test(lw2, exp1)));
  });
}

/// The hand-built environment E: B at offsets -4..4 is 1,3,2,1,0,-1,0.5,-2,4,
/// continued by unit ramps (B(-4-k) = 1+k, B(4+k) = 4+k).
inline path::LatticePath environment_e(int ramp = 20) {
  std::vector<double> v;
  for (int k = ramp; k >= 1; --k) v.push_back(1.0 + k);
  for (double x : {1.0, 3.0, 2.0, 1.0, 0.0, -1.0, 0.5, -2.0, 4.0}) v.push_back(x);
  for (int k = 1; k <= ramp; ++k) v.push_back(4.0 + k);
  return path::make_path(std::move(v), ramp + 4);
}

/// P1: hand traces.
inline CriterionResult run_p1(const Config&) {
  return detail::timed("P1", "hand traces", [](std::vector<Check>& c) {
    const auto e = environment_e();
    c.push_back(detail::truth("x_B(E, 0.5) = 1", path::scan_xb(e, 0.5) == std::optional<std::int64_t>(1)));
    c.push_back(detail::truth("x_B(E, 1.5) = 1", path::scan_xb(e, 1.5) == std::optional<std::int64_t>(1)));
    c.push_back(detail::truth("x_B(E, 2) = 3", path::scan_xb(e, 2.0) == std::optional<std::int64_t>(3)));
    const auto xs = path::extract_xi_scan(e, 0.5, 2.0);
    c.push_back(detail::truth("scan of E on [0.5, 2] = {ln 1.5}",
                              xs.points.size() == 1 && std::fabs(xs.points[0] - std::log(1.5)) < 1e-6));
    const auto ev = path::ladder_decompose(e, 0.1, 20.0);
    c.push_back(detail::truth("first ladder event (0.5, 1, 1.5, 2.5, right)",
                              !ev.empty() && ev[0].level == 0.5 && ev[0].depth == 1.0 && ev[0].benchmark == 1.5 &&
                                  ev[0].excursion_height == 2.5 && ev[0].side == path::Side::Right));
    const auto xl = path::extract_xi_ladder(e, 0.6, 3.0);
    c.push_back(detail::truth("ladder of E on [0.6, 3] = {ln 1.5}",
                              xl.points.size() == 1 && xl.points[0] == std::log(1.5)));
    c.push_back(detail::truth("no sign change for E on [0.5, 2]", path::detect_sign_changes(e, 0.5, 2.0).points.empty()));

    const std::vector<double> gamma{0, -1.2, -0.7, -1.5, -0.3, -1.6, 0};
    const auto g1 = path::count_excursion_jumps(gamma, 1.0);
    c.push_back(detail::truth("gamma, benchmark 1: count 2, jumps {1.2}, height 1.6",
                              g1.count == 2 && g1.jump_heights.size() == 1 && std::fabs(g1.jump_heights[0] - 1.2) < 1e-12 &&
                                  std::fabs(g1.height - 1.6) < 1e-12));
    c.push_back(detail::truth("gamma, benchmark 2: count 0", path::count_excursion_jumps(gamma, 2.0).count == 0));
    const auto v = path::count_excursion_jumps({0, -2, 0}, 1.0);
    c.push_back(detail::truth("V excursion: count 1, height 2", v.count == 1 && v.jump_heights.empty() && v.height == 2.0));

    auto u = [](double x) { return uniform_for_exp(x, 1.0); };
    ScriptedUniforms t1({u(0.5), u(1.0), 0.5});
    const auto d1 = cluster::draw_cluster(t1);
    c.push_back(detail::truth("cluster trace 1: N = 1, F = ln 1.5",
                              d1.count == 1 && d1.offsets == std::vector<double>{0.0} &&
                                  std::fabs(d1.endpoint - std::log(1.5)) < 1e-12));
    ScriptedUniforms t2({u(2.0), u(0.2), u(1.0), u(4.8), 0.5});
    const auto d2 = cluster::draw_cluster(t2);
    c.push_back(detail::truth("cluster trace 2: N = 2, offsets {0, 0.2}, F = ln(3 + e^0.2)",
                              d2.count == 2 && d2.offsets.size() == 2 && std::fabs(d2.offsets[1] - 0.2) < 1e-12 &&
                                  std::fabs(d2.endpoint - std::log(3.0 + std::exp(0.2))) < 1e-12));
    // phi = 1/(1 + u/(1-u)) = 1 - u
    ScriptedUniforms t3({u(1.0), 0.75});
    const auto c1 = cluster::draw_cluster_chain(t3);
    c.push_back(detail::truth("chain trace 1: M = 1, endpoint ln 2",
                              c1.count == 1 && std::fabs(c1.endpoint - std::numbers::ln2) < 1e-12));
    ScriptedUniforms t4({u(1.0), 0.1, u(0.1), 0.9});
    const auto c2 = cluster::draw_cluster_chain(t4);
    c.push_back(detail::truth("chain trace 2: M = 2, endpoint ln(2 (1 + 0.1/1.8))",
                              c2.count == 2 && std::fabs(c2.endpoint - std::log(2.0 * (1.0 + 0.1 / 1.8))) < 1e-12));
  });
}

inline const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids{"A1", "A2", "E1", "F1", "D1", "G3", "C1",
                                            "X1", "D2", "D3", "L1", "N1", "P1"};
  return ids;
}

/// Runs the selected criteria (all when `only` is empty) in the canonical
/// order.  D2, D3 and L1 share one streaming run.
inline std::vector<CriterionResult> run_criteria(const Config& cfg, const std::vector<std::string>& only = {}) {
  auto wanted = [&](const std::string& id) {
    return only.empty() || std::find(only.begin(), only.end(), id) != only.end();
  };
  for (const auto& id : only)
    if (std::find(criterion_ids().begin(), criterion_ids().end(), id) == criterion_ids().end())
      throw std::invalid_argument("unknown criterion: " + id);
  std::vector<CriterionResult> out;
  const std::vector<std::pair<std::string, std::function<CriterionResult(const Config&)>>> single{
      {"A1", run_a1}, {"A2", run_a2}, {"E1", run_e1}, {"F1", run_f1}, {"D1", run_d1},
      {"G3", run_g3}, {"C1", run_c1}, {"X1", run_x1}};
  for (const auto& [id, fn] : single)
    if (wanted(id)) out.push_back(fn(cfg));
  if (wanted("D2") || wanted("D3") || wanted("L1"))
    for (auto& r : run_streaming(cfg))
      if (wanted(r.id)) out.push_back(std::move(r));
  if (wanted("N1")) out.push_back(run_n1(cfg));
  if (wanted("P1")) out.push_back(run_p1(cfg));
  return out;
}

}  // namespace wellscan::validation

#endif  // WELLSCAN_VALIDATION_HPP
