#include <catch_amalgamated.hpp>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>
#include <gsl/gsl_sf_hyperg.h>

#include <cmath>
#include <numbers>

#include "wellscan/hyp_u.hpp"
#include "wellscan/quadrature.hpp"
#include "wellscan/sampling.hpp"

using namespace wellscan;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Reference values: GSL's Tricomi U, which is the same function.
double gsl_u(double a, double b, double z) {
  gsl_sf_result r;
  const int status = gsl_sf_hyperg_U_e(a, b, z, &r);
  REQUIRE(status == GSL_SUCCESS);
  return r.val;
}

struct GslQuiet {
  GslQuiet() { gsl_set_error_handler_off(); }
} const quiet;

}  // namespace

TEST_CASE("gamma function", "[hyp_u][gamma]") {
  CHECK_THAT(hyp::gamma_fn(1.0), WithinRel(1.0, 1e-14));
  CHECK_THAT(hyp::gamma_fn(3.0), WithinRel(2.0, 1e-14));
  CHECK_THAT(hyp::gamma_fn(0.5), WithinRel(std::sqrt(std::numbers::pi), 1e-14));
  for (double x = 0.01; x <= 4.0; x += 0.0731) CHECK_THAT(hyp::gamma_fn(x), WithinRel(std::tgamma(x), 1e-13));
  CHECK_THROWS(hyp::gamma_fn(0.0));
  CHECK_THROWS(hyp::gamma_fn(4.5));
}

TEST_CASE("psi anchors", "[hyp_u]") {
  CHECK(hyp::psi_u(0.0, 7.3, 2.5) == 1.0);
  CHECK_THAT(hyp::psi_u(-1.0, 0.5, 2.0), WithinAbs(1.5, 1e-15));
  CHECK_THAT(hyp::psi_u(1.0, 2.0, 2.0), WithinRel(0.5, 1e-12));
  // Psi(1, 1; 1) is the integral of e^-t / (1 + t), computed independently here.
  const double direct = integrate_adaptive([](double t) { return std::exp(-t) / (1.0 + t); }, 0.0, 60.0, 1e-15, 1e-14).value;
  CHECK_THAT(hyp::psi_u(1.0, 1.0, 1.0), WithinRel(direct, 1e-10));
  CHECK_THAT(hyp::psi_u(1.0, 1.0, 1.0), WithinAbs(0.596347, 1e-6));
}

TEST_CASE("psi against GSL on a grid", "[hyp_u][oracle]") {
  for (double a : {-1.9, -1.5, -1.0001, -0.7, -0.3, -1e-4, 1e-4, 0.05, 0.3, 0.5, 0.999, 1.0, 1.37, 2.0, 2.6, 3.0}) {
    for (double b : {-1.5, -0.4, 0.0, 0.3, 1.0, 1.7, 2.5}) {
      for (double z : {0.2, 1.0, 2.5, 7.0}) {
        INFO("a=" << a << " b=" << b << " z=" << z);
        const double ref = gsl_u(a, b, z);
        CHECK_THAT(hyp::psi_u(a, b, z), WithinAbs(ref, 1e-9 * std::max(1.0, std::fabs(ref))));
      }
    }
  }
}

TEST_CASE("psi domain errors", "[hyp_u]") {
  CHECK_THROWS_AS(hyp::psi_u(0.5, 0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(hyp::psi_u(0.5, 0.5, -1.0), std::domain_error);
  CHECK_THROWS_AS(hyp::psi_u(3.5, 0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(hyp::psi_u(-2.5, 0.5, 1.0), std::domain_error);
}

TEST_CASE("three-term recurrence in a at z = 1", "[hyp_u][identity]") {
  // U(a-1,b,z) + (b - 2a - z) U(a,b,z) + a (a - b + 1) U(a+1,b,z) = 0
  RngStream s(0, 77);
  for (int i = 0; i < 100; ++i) {
    const double a = 0.1 + 0.9 * s.next_uniform();
    const double b = -1.0 + 3.0 * s.next_uniform();
    const double z = 1.0;
    const double res = hyp::psi_u(a - 1.0, b, z) + (b - 2.0 * a - z) * hyp::psi_u(a, b, z) +
                       a * (a - b + 1.0) * hyp::psi_u(a + 1.0, b, z);
    INFO("a=" << a << " b=" << b);
    CHECK(std::fabs(res) <= 1e-8);
  }
}

TEST_CASE("Kummer transformation", "[hyp_u][identity]") {
  for (double a : {0.2, 0.6, 1.1, 1.8})
    for (double b : {0.1, 0.5, 0.9, 1.4})
      for (double z : {0.5, 1.0, 3.0}) {
        const double a2 = a - b + 1.0;
        if (a2 < hyp::kPsiMinA || a2 > hyp::kPsiMaxA) continue;
        INFO("a=" << a << " b=" << b << " z=" << z);
        CHECK_THAT(hyp::psi_u(a, b, z), WithinAbs(std::pow(z, 1.0 - b) * hyp::psi_u(a2, 2.0 - b, z), 1e-8));
      }
}

TEST_CASE("contiguous relation in a and b", "[hyp_u][identity]") {
  // U(a-1,b,z) - z U(a,b+1,z) = (a - b) U(a,b,z)
  for (double a : {-0.8, 0.15, 0.5, 1.3, 2.2})
    for (double b : {-0.5, 0.0, 0.7, 1.6})
      for (double z : {0.4, 1.0, 2.0}) {
        INFO("a=" << a << " b=" << b << " z=" << z);
        const double lhs = hyp::psi_u(a - 1.0, b, z) - z * hyp::psi_u(a, b + 1.0, z);
        CHECK_THAT(lhs, WithinAbs((a - b) * hyp::psi_u(a, b, z), 1e-8));
      }
}

TEST_CASE("z-derivative", "[hyp_u][identity]") {
  constexpr double h = 1e-4;
  for (double a : {0.3, 0.8, 1.5})
    for (double b : {0.2, 1.0})
      for (double z : {0.7, 1.0, 2.0}) {
        const double fd = (hyp::psi_u(a, b, z + h) - hyp::psi_u(a, b, z - h)) / (2 * h);
        CHECK_THAT(fd, WithinAbs(-a * hyp::psi_u(a + 1.0, b + 1.0, z), 1e-5));
      }
}

TEST_CASE("large-z behaviour", "[hyp_u]") {
  const double z = 1000.0;
  CHECK_THAT(std::pow(z, 0.5) * hyp::psi_u(0.5, 0.3, z), WithinAbs(1.0, 0.02));
}

TEST_CASE("exponential-relative integral", "[hyp_u]") {
  // e * E1(1) from GSL's exponential integral.
  const double ref = std::numbers::e * gsl_sf_expint_E1(1.0);
  const double v = hyp::exp_rel_integral();
  CHECK_THAT(v, WithinRel(ref, 1e-12));
  CHECK_THAT(v, WithinAbs(0.5963474, 1e-7));
  CHECK(v > 0.5);
  CHECK(v < 1.0);
  CHECK_THAT(v, WithinAbs(hyp::psi_u(1.0, 1.0, 1.0), 1e-9));
  // Independent series: e E1(1) = e (-gamma - sum_{k>=1} (-1)^k / (k k!)).
  double sum = 0.0, fact = 1.0;
  for (int k = 1; k < 30; ++k) {
    fact *= k;
    sum += ((k % 2) ? 1.0 : -1.0) / (k * fact);
  }
  CHECK_THAT(v, WithinRel(std::numbers::e * (-std::numbers::egamma + sum), 1e-13));
}
