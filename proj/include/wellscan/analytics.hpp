#ifndef WELLSCAN_ANALYTICS_HPP
#define WELLSCAN_ANALYTICS_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wellscan/hyp_u.hpp"

namespace wellscan::analytics {

inline constexpr double kMeanDensity = 4.0 / 3.0;
inline constexpr double kInterarrivalMean = 1.5;
inline constexpr double kInterarrivalVar = 1.25;
inline constexpr double kSignChangeDensity = 1.0 / 3.0;

/// Joint MGF E exp(lambda*count + mu*endpoint) of a cluster.
struct MgfValue {
  double lambda = 0.0;
  double mu = 0.0;
  double value = 0.0;  // +inf when !in_domain
  bool in_domain = true;
  bool infinite() const noexcept { return !in_domain; }
};

struct AnalyticReport {
  double mean_density = kMeanDensity;
  double sigma2 = 0.0;
  double z0 = 0.0;
  double lambda0 = 0.0;
  double expected_N = 0.0;
  double interarrival_mean = kInterarrivalMean;
  double interarrival_var = kInterarrivalVar;
};

namespace detail {

inline double mgf_denominator(double lambda, double mu) { return hyp::psi_u(-std::exp(lambda), mu, 1.0); }

inline double mgf_formula(double lambda, double mu) {
  const double e = std::exp(lambda);
  return e * hyp::psi_u(1.0 - e, 1.0 + mu, 1.0) / hyp::psi_u(-e, mu, 1.0);
}

inline constexpr int kDomainScanPoints = 200;

// True if the denominator stays strictly positive on the segment from `from`
// to `to` (inclusive) with the other argument fixed.
template <class F>
bool denominator_positive_along(F&& den, double from, double to) {
  for (int i = 0; i <= kDomainScanPoints; ++i) {
    const double x = from + (to - from) * i / kDomainScanPoints;
    if (!(den(x) > 0.0)) return false;
  }
  return true;
}

}  // namespace detail

/// Smallest zero in (1,2) of z -> Psi(-z, 0; 1): the radius of convergence of
/// the probability generating function of the cluster count.
inline double find_z0() {
  auto f = [](double z) { return hyp::psi_u(-z, 0.0, 1.0); };
  constexpr int kGrid = 64;
  double lo = 1.0;
  double f_lo = f(lo);
  if (!(f_lo > 0.0)) throw std::runtime_error("find_z0: expected positive value at z = 1");
  double hi = 0.0;
  for (int i = 1; i <= kGrid; ++i) {
    const double z = 1.0 + static_cast<double>(i) / kGrid;
    const double fz = f(z);
    if (fz <= 0.0) {
      hi = z;
      break;
    }
    lo = z;
    f_lo = fz;
  }
  if (hi == 0.0) throw std::runtime_error("find_z0: no sign change on [1, 2]; psi_u is suspect");
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double lambda0() { return std::log(find_z0()); }

/// Domain membership of (lambda, mu) by following an axis-aligned segment from
/// the origin and watching the denominator for a zero.  The negative quadrant
/// is always inside.
inline bool in_domain(double lambda, double mu) {
  if (lambda <= 0.0 && mu <= 0.0) return true;
  if (mu <= 0.0) {
    return detail::denominator_positive_along([mu](double l) { return detail::mgf_denominator(l, mu); }, 0.0,
                                              lambda);
  }
  if (lambda >= lambda0()) return false;
  // Along lambda = const the denominator starts positive at mu = 0 because
  // lambda < lambda0.
  return detail::denominator_positive_along([lambda](double m) { return detail::mgf_denominator(lambda, m); },
                                            0.0, mu);
}

/// E exp(lambda*N + mu*F) = e^lambda Psi(1-e^lambda, 1+mu; 1) / Psi(-e^lambda, mu; 1).
inline MgfValue mgf_xi(double lambda, double mu) {
  if (!(lambda < std::numbers::ln2)) throw std::domain_error("mgf_xi: lambda must be below ln 2");
  if (!std::isfinite(mu)) throw std::domain_error("mgf_xi: mu must be finite");
  MgfValue out{lambda, mu, 0.0, true};
  if (lambda == 0.0 && mu == 0.0) {
    out.value = 1.0;
    return out;
  }
  out.in_domain = in_domain(lambda, mu);
  out.value = out.in_domain ? detail::mgf_formula(lambda, mu) : std::numeric_limits<double>::infinity();
  return out;
}

/// 64/27 - (4/9) * int_0^inf e^{-t}/(1+t) dt.
inline double sigma_squared() { return 64.0 / 27.0 - 4.0 / 9.0 * hyp::exp_rel_integral(); }

/// Probability that the log-scale jump process has no point in an interval of
/// length s: e^{-2s} (5/3 - (2/3) e^{1 - e^s}).
inline double gap_probability(double s) {
  if (!(s >= 0.0)) throw std::domain_error("gap_probability: s must be nonnegative");
  return std::exp(-2.0 * s) * (5.0 / 3.0 - 2.0 / 3.0 * std::exp(-std::expm1(s)));
}

/// The same expression in the linear scale t = e^s, valid for t >= 1.
inline double gap_probability_raw(double t) {
  if (!(t >= 1.0)) throw std::domain_error("gap_probability_raw: t must be at least 1");
  return (5.0 / 3.0 - 2.0 / 3.0 * std::exp(1.0 - t)) / (t * t);
}

/// P(W1 + W2 > x) for independent W1 ~ Exp(1), W2 ~ Exp(2).
inline double interarrival_survival(double x) {
  if (!(x >= 0.0)) throw std::domain_error("interarrival_survival: x must be nonnegative");
  return 2.0 * std::exp(-x) - std::exp(-2.0 * x);
}

inline double mean_density() { return kMeanDensity; }

/// E(count) as the lambda-slope of the MGF at the origin (central difference).
inline double expected_count(double h = 1e-4) {
  return (detail::mgf_formula(h, 0.0) - detail::mgf_formula(-h, 0.0)) / (2.0 * h);
}

inline AnalyticReport analytic_report() {
  AnalyticReport r;
  r.sigma2 = sigma_squared();
  r.z0 = find_z0();
  r.lambda0 = std::log(r.z0);
  r.expected_N = expected_count();
  return r;
}

}  // namespace wellscan::analytics

#endif  // WELLSCAN_ANALYTICS_HPP
