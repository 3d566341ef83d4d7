#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "wellscan/analytics.hpp"
#include "wellscan/quadrature.hpp"

using namespace wellscan;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("mgf at and near the origin", "[analytics][mgf]") {
  CHECK(analytics::mgf_xi(0.0, 0.0).value == 1.0);
  CHECK_THAT(analytics::mgf_xi(0.0, 0.5).value, WithinRel(2.0, 1e-12));
  CHECK_THAT(analytics::mgf_xi(0.0, 0.999).value, WithinRel(1000.0, 1e-8));
  const auto edge = analytics::mgf_xi(0.0, 1.0);
  CHECK(edge.infinite());
  CHECK(std::isinf(edge.value));
}

TEST_CASE("endpoint marginal is Exp(1)", "[analytics][mgf]") {
  for (double mu = -5.0; mu < 0.99; mu += 0.0625) {
    INFO("mu=" << mu);
    CHECK_THAT(analytics::mgf_xi(0.0, mu).value, WithinRel(1.0 / (1.0 - mu), 1e-9));
  }
}

TEST_CASE("mgf against high-precision reference values", "[analytics][mgf][oracle]") {
  // Reference values from 30-digit evaluation of the same ratio of Kummer U functions.
  CHECK_THAT(analytics::mgf_xi(-1.0, -1.0).value, WithinRel(0.158350844435327, 1e-10));
  CHECK_THAT(analytics::mgf_xi(0.2, 0.1).value, WithinRel(1.96284111543171, 1e-10));
  CHECK_THAT(analytics::mgf_xi(-0.5, 0.3).value, WithinRel(0.563970963622266, 1e-10));
  CHECK_THAT(analytics::mgf_xi(0.3, -2.0).value, WithinRel(0.473647441927569, 1e-10));
}

TEST_CASE("mgf domain", "[analytics][mgf]") {
  CHECK(analytics::in_domain(-3.0, -3.0));
  CHECK(analytics::in_domain(0.2, 0.1));
  CHECK_FALSE(analytics::in_domain(0.4, 0.2));
  CHECK_FALSE(analytics::in_domain(0.46, 0.0));
  CHECK(analytics::in_domain(0.45, 0.0));
  CHECK_THROWS_AS(analytics::mgf_xi(std::numbers::ln2, 0.0), std::domain_error);
  CHECK_THROWS_AS(analytics::mgf_xi(0.0, std::nan("")), std::domain_error);
}

TEST_CASE("mean cluster count is 2", "[analytics]") {
  CHECK_THAT(analytics::expected_count(), WithinAbs(2.0, 1e-6));
  for (double h : {1e-3, 1e-4, 1e-5}) {
    const double slope = (analytics::mgf_xi(h, 0.0).value - 1.0) / h;
    CHECK_THAT(slope, WithinAbs(2.0, 10.0 * h + 1e-6));
  }
}

TEST_CASE("mgf is monotone", "[analytics][mgf]") {
  const double l0 = analytics::lambda0();
  double prev = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double l = l0 * i / 41.0;
    const double v = analytics::mgf_xi(l, 0.0).value;
    CHECK(std::isfinite(v));
    CHECK(v > prev);
    prev = v;
  }
  for (double l = -3.0; l <= 0.0; l += 0.25)
    for (double m = -3.0; m <= 0.0; m += 0.25) {
      const double v = analytics::mgf_xi(l, m).value;
      if (l + 0.25 <= 0.0) CHECK(analytics::mgf_xi(l + 0.25, m).value > v);
      if (m + 0.25 <= 0.0) CHECK(analytics::mgf_xi(l, m + 0.25).value > v);
    }
}

TEST_CASE("radius of convergence of the count", "[analytics][z0]") {
  const double z0 = analytics::find_z0();
  CHECK_THAT(z0, WithinAbs(1.57391, 1e-4));
  // 30-digit root of z -> U(-z, 0, 1).
  CHECK_THAT(z0, WithinAbs(1.57393402277021, 1e-9));
  CHECK(std::fabs(hyp::psi_u(-z0, 0.0, 1.0)) <= 1e-7);
  CHECK(hyp::psi_u(-1.0, 0.0, 1.0) == 1.0);
  CHECK_THAT(analytics::lambda0(), WithinAbs(std::log(z0), 1e-15));
  CHECK_THAT(analytics::lambda0(), WithinAbs(0.45359, 1e-4));
}

TEST_CASE("variance constant", "[analytics][sigma2]") {
  const double s2 = analytics::sigma_squared();
  CHECK_THAT(s2, WithinAbs(2.1053271, 1e-7));
  CHECK_THAT(s2, WithinRel((32.0 / 9.0 - 2.0 / 3.0 * hyp::exp_rel_integral()) / 1.5, 1e-14));
  CHECK(s2 > 2.0);
  CHECK(s2 < 64.0 / 27.0);
}

TEST_CASE("gap probability", "[analytics][gap]") {
  CHECK(analytics::gap_probability(0.0) == 1.0);
  CHECK_THAT(analytics::gap_probability(std::numbers::ln2), WithinAbs(0.25 * (5.0 / 3.0 - 2.0 / 3.0 / std::numbers::e), 1e-15));
  CHECK_THAT(analytics::gap_probability(std::numbers::ln2), WithinAbs(0.3553536, 1e-6));
  constexpr double h = 1e-5;
  // Central difference of G at 0 using the analytic continuation to s < 0.
  auto g = [](double s) { return std::exp(-2.0 * s) * (5.0 / 3.0 - 2.0 / 3.0 * std::exp(-std::expm1(s))); };
  CHECK_THAT(-(g(h) - g(-h)) / (2 * h), WithinAbs(4.0 / 3.0, 1e-6));
  CHECK_THAT(analytics::gap_probability(10.0) * std::exp(20.0), WithinAbs(5.0 / 3.0, 1e-6));
  for (double s = 0.0; s < 8.0; s += 0.05) {
    CHECK(analytics::gap_probability(s) <= 1.0);
    CHECK(analytics::gap_probability(s + 0.05) < analytics::gap_probability(s));
    CHECK_THAT(analytics::gap_probability_raw(std::exp(s)), WithinRel(analytics::gap_probability(s), 1e-12));
  }
  CHECK_THROWS_AS(analytics::gap_probability(-0.1), std::domain_error);
  CHECK_THROWS_AS(analytics::gap_probability_raw(0.5), std::domain_error);
}

TEST_CASE("interarrival law", "[analytics]") {
  CHECK(analytics::interarrival_survival(0.0) == 1.0);
  CHECK_THAT(analytics::interarrival_survival(std::numbers::ln2), WithinAbs(0.75, 1e-15));
  const double mean = integrate_adaptive([](double x) { return analytics::interarrival_survival(x); }, 0.0, 60.0,
                                         1e-14, 1e-13).value;
  CHECK_THAT(mean, WithinRel(analytics::kInterarrivalMean, 1e-10));
  const double second = integrate_adaptive([](double x) { return 2.0 * x * analytics::interarrival_survival(x); },
                                           0.0, 60.0, 1e-14, 1e-13).value;
  CHECK_THAT(second - mean * mean, WithinRel(analytics::kInterarrivalVar, 1e-10));
  CHECK_THROWS_AS(analytics::interarrival_survival(-1.0), std::domain_error);
}

TEST_CASE("analytic report", "[analytics]") {
  const auto r = analytics::analytic_report();
  CHECK_THAT(r.mean_density, WithinAbs(1.3333333, 1e-7));
  CHECK_THAT(r.sigma2, WithinAbs(2.1053271, 1e-7));
  CHECK_THAT(r.z0, WithinAbs(1.57391, 1e-4));
  CHECK_THAT(r.lambda0, WithinAbs(std::log(r.z0), 1e-15));
  CHECK_THAT(r.expected_N, WithinAbs(2.0, 1e-6));
  CHECK(r.interarrival_mean == 1.5);
  CHECK(r.interarrival_var == 1.25);
  CHECK_THAT(analytics::kSignChangeDensity, WithinAbs(1.0 / 3.0, 1e-15));
}
