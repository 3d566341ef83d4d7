#ifndef WELLSCAN_HYP_U_HPP
#define WELLSCAN_HYP_U_HPP

// Tricomi's confluent hypergeometric function U(a,b;z) (written Psi here) on
// the positive real axis, for the first-argument range the cluster MGF needs.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wellscan/quadrature.hpp"

namespace wellscan::hyp {

inline constexpr double kPsiMinA = -2.0;
inline constexpr double kPsiMaxA = 3.0;

/// Gamma function on (0, 4] (Lanczos g=7, n=9, with reflection below 1/2).
inline double gamma_fn(double x) {
  if (!(x > 0.0 && x <= 4.0)) throw std::domain_error("gamma_fn: argument outside (0, 4]");
  constexpr double kCoeff[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  auto lanczos = [&](double y) {  // Gamma(y) for y >= 1/2
    const double w = y - 1.0;
    double sum = kCoeff[0];
    for (int i = 1; i < 9; ++i) sum += kCoeff[i] / (w + i);
    const double t = w + 7.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, w + 0.5) * std::exp(-t) * sum;
  };
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  return lanczos(x);
}

namespace detail {

inline constexpr double kQuadRelTol = 1e-14;

// Psi(a,b;z) for a > 0 from the integral representation
//   Gamma(a)^{-1} int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt,
// split at t = 1.  On [0,1] with a < 1 the endpoint value f(0) = 1 of
// f(t) = e^{-zt}(1+t)^{b-a-1} is subtracted: int t^{a-1} dt = 1/a exactly and
// the remainder t^{a-1}(f(t) - 1) ~ t^a is bounded, even for a near 0 where the
// power substitution t = u^{1/a} squeezes everything against u = 1.
// On [1,inf) t = 1 - log(w)/z maps the exponential tail onto w in (0,1].
inline double psi_positive(double a, double b, double z) {
  const double c = b - a - 1.0;
  double head;
  if (a < 1.0) {
    auto f = [&](double t) {
      if (t == 0.0) return 0.0;
      return std::pow(t, a - 1.0) * std::expm1(-z * t + c * std::log1p(t));
    };
    const double rest = integrate_adaptive(f, 0.0, 1.0, 1e-16, kQuadRelTol).value;
    head = 1.0 / gamma_fn(a + 1.0) + rest / gamma_fn(a);
  } else {
    auto f = [&](double t) { return std::exp(-z * t) * std::pow(t, a - 1.0) * std::pow(1.0 + t, c); };
    head = integrate_adaptive(f, 0.0, 1.0, 0.0, kQuadRelTol).value / gamma_fn(a);
  }
  auto g = [&](double w) {
    const double t = 1.0 - std::log(w) / z;
    return std::pow(t, a - 1.0) * std::pow(1.0 + t, c);
  };
  const double tail_scale = std::exp(-z) / z;
  double tail = 0.0;
  if (tail_scale > 0.0) {
    // Absolute floor keeps the tail from chasing relative accuracy on a term
    // that is already negligible next to the head.
    const double floor = 1e-17 * std::fabs(head) / tail_scale;
    tail = integrate_adaptive(g, 0.0, 1.0, floor, kQuadRelTol).value * tail_scale / gamma_fn(a);
  }
  return head + tail;
}

}  // namespace detail

/// Psi(a, b; z) for real a in [-2, 3], real b, z > 0.
///
/// a > 0 is evaluated by quadrature of the integral representation.  For
/// a <= 0 the three-term recurrence
///   Psi(a-1) = -(b - 2a - z) Psi(a) - a(a - b + 1) Psi(a+1)
/// is applied downward once or twice from positive first arguments, with the
/// exact anchors Psi(0,b;z) = 1 and Psi(-1,b;z) = z - b at the integers.
inline double psi_u(double a, double b, double z) {
  if (!(z > 0.0)) throw std::domain_error("psi_u: z must be positive");
  if (!(a >= kPsiMinA && a <= kPsiMaxA)) throw std::domain_error("psi_u: a outside supported range [-2, 3]");
  if (a > 0.0) return detail::psi_positive(a, b, z);
  if (a == 0.0) return 1.0;
  if (a == -1.0) return z - b;
  auto step_down = [b, z](double a_up, double psi_a, double psi_a_plus_1) {
    return -(b - 2.0 * a_up - z) * psi_a - a_up * (a_up - b + 1.0) * psi_a_plus_1;
  };
  if (a > -1.0) {
    const double a1 = a + 1.0;  // in (0, 1)
    return step_down(a1, detail::psi_positive(a1, b, z), detail::psi_positive(a1 + 1.0, b, z));
  }
  // a in [-2, -1): Psi(a+1) from one step below Psi(a+2) in (0, 1].
  const double a2 = a + 2.0;
  const double psi_a2 = a2 == 0.0 ? 1.0 : detail::psi_positive(a2, b, z);
  const double psi_a3 = detail::psi_positive(a2 + 1.0, b, z);
  const double psi_a1 = a2 == 0.0 ? z - b : step_down(a2, psi_a2, psi_a3);
  return step_down(a + 1.0, psi_a1, psi_a2);
}

/// int_0^inf e^{-t} (1+t)^{-1} dt  (= e * E1(1)).
inline double exp_rel_integral() {
  // t = -log(w) gives int_0^1 dw / (1 - log w).
  auto f = [](double w) { return 1.0 / (1.0 - std::log(w)); };
  return integrate_adaptive(f, 0.0, 1.0, 1e-15, 1e-15).value;
}

}  // namespace wellscan::hyp

#endif  // WELLSCAN_HYP_U_HPP
