#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "wellscan/ladder.hpp"
#include "wellscan/lattice_path.hpp"
#include "wellscan/one_sided.hpp"
#include "wellscan/validation.hpp"
#include "wellscan/well_scan.hpp"

using namespace wellscan;
using namespace wellscan::path;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Values at offsets -4..4, continued by unit ramps on both sides.
LatticePath with_ramps(std::vector<double> core, int ramp = 20) {
  std::vector<double> v;
  for (int k = ramp; k >= 1; --k) v.push_back(core.front() + k);
  v.insert(v.end(), core.begin(), core.end());
  for (int k = 1; k <= ramp; ++k) v.push_back(core.back() + k);
  return make_path(std::move(v), ramp + static_cast<int>(core.size() / 2));
}

LatticePath gaussian(std::uint64_t k, std::int64_t half) {
  RngStream s = RngStream(99, 1).substream(k);
  return generate_path(s, half, 1.0, PathMode::Gaussian);
}

std::optional<std::int64_t> off(std::int64_t x) { return x; }

}  // namespace

TEST_CASE("path construction", "[path][lattice]") {
  RngStream s(1, 1);
  const auto p = generate_path(s, 1, 1.0, PathMode::Gaussian);
  REQUIRE(p.values.size() == 3);
  CHECK(p.values[1] == 0.0);
  CHECK(p.origin_index == 1);
  CHECK(p.seed_info == SeedInfo{1, 1});
  CHECK_THROWS_AS(generate_path(s, 0, 1.0, PathMode::Gaussian), std::invalid_argument);
  CHECK_THROWS_AS(generate_path(s, 5, 0.0, PathMode::Gaussian), std::invalid_argument);
  CHECK_THROWS_AS(generate_path(s, std::int64_t{1} << 30, 1.0, PathMode::Gaussian), std::length_error);
  CHECK_THROWS_AS(make_path({1.0, 2.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_path({0.0, 2.0}, 2), std::invalid_argument);
}

TEST_CASE("walk mode is an exact staircase", "[path][lattice]") {
  // Right side first: +, -, +; then left side outward: -, +, -.
  ScriptedUniforms u({0.7, 0.2, 0.9, 0.1, 0.6, 0.3});
  const auto p = generate_path(u, 3, 0.25, PathMode::Walk);
  const std::vector<double> want{-0.5, 0.0, -0.5, 0.0, 0.5, 0.0, 0.5};
  CHECK(p.values == want);
  for (std::size_t i = 1; i < p.values.size(); ++i) CHECK(std::fabs(p.values[i] - p.values[i - 1]) == 0.5);
}

TEST_CASE("gaussian endpoint stays within five standard deviations", "[path][lattice]") {
  const auto p = gaussian(0, 1000000);
  CHECK(std::fabs(p.values.back()) < 5.0 * std::sqrt(1e6));
  CHECK(std::fabs(p.values.front()) < 5.0 * std::sqrt(1e6));
  CHECK(p.at(0) == 0.0);
}

TEST_CASE("binary path dump round-trips", "[path][io]") {
  const auto p = gaussian(1, 1000);
  const auto file = std::filesystem::temp_directory_path() / "wellscan_test_path.bin";
  write_path(p, file);
  const auto q = read_path(file);
  CHECK(q.values == p.values);
  CHECK(q.origin_index == p.origin_index);
  CHECK(q.step == p.step);
  {
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    os << "garbage!";
  }
  CHECK_THROWS(read_path(file));
  std::filesystem::remove(file);
}

TEST_CASE("x_B on the hand-built environment", "[path][scan][trace]") {
  const auto e = validation::environment_e();
  CHECK(scan_xb(e, 0.5) == off(1));
  CHECK(scan_xb(e, 1.5) == off(1));
  CHECK(scan_xb(e, 1.5 * (1 + 1e-12)) == off(3));
  CHECK(scan_xb(e, 2.0) == off(3));
  CHECK_THROWS_AS(scan_xb(e, 0.0), std::invalid_argument);
  const auto xs = extract_xi_scan(e, 0.5, 2.0);
  REQUIRE(xs.points.size() == 1);
  CHECK_THAT(xs.points[0], WithinAbs(std::log(1.5), 1e-6));
  CHECK(xs.generator_tag == GeneratorTag::PathScan);
  CHECK(detect_sign_changes(e, 0.5, 2.0).points.empty());
}

TEST_CASE("single well gives no jumps", "[path][scan]") {
  std::vector<double> v;
  for (int k = -50; k <= 50; ++k) v.push_back(std::fabs(k));
  const auto p = make_path(v, 50);
  CHECK(extract_xi_scan(p, 0.5, 20.0).points.empty());
  CHECK(extract_xi_ladder(p, 0.5, 20.0).points.empty());
}

TEST_CASE("mirrored deep well produces one sign change", "[path][sign]") {
  // The two halves of E swapped: the 1.5-deep well stays at offset 1, the
  // deep well moves to offset -3.
  const auto m = with_ramps({4.0, -2.0, 0.5, 0.2, 0.0, -1.0, 0.5, 3.0, 1.0});
  CHECK(scan_xb(m, 0.5) == off(1));
  CHECK(scan_xb(m, 2.0) == off(-3));
  const auto sc = detect_sign_changes(m, 0.5, 2.0);
  REQUIRE(sc.points.size() == 1);
  CHECK_THAT(sc.points[0], WithinAbs(std::log(1.5), 1e-6));
  const auto ev = ladder_decompose(m, 0.1, 10.0);
  const auto lad = ladder_sign_changes(ev, std::log(0.5), std::log(2.0));
  REQUIRE(lad.size() == 1);
  CHECK_THAT(lad[0], WithinAbs(std::log(1.5), 1e-12));
}

TEST_CASE("ladder on the hand-built environment", "[path][ladder][trace]") {
  const auto e = validation::environment_e();
  const auto ev = ladder_decompose(e, 0.1, 20.0);
  REQUIRE_FALSE(ev.empty());
  CHECK(ev[0].level == 0.5);
  CHECK(ev[0].depth == 1.0);
  CHECK(ev[0].benchmark == 1.5);
  CHECK(ev[0].excursion_height == 2.5);
  CHECK(ev[0].side == Side::Right);
  CHECK(ev[0].inner_jump_heights.empty());
  const auto xl = extract_xi_ladder(e, 0.6, 3.0);
  REQUIRE(xl.points.size() == 1);
  CHECK(xl.points[0] == std::log(1.5));
  CHECK_THROWS_AS(ladder_decompose(e, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("excursion jump counts", "[path][ladder][trace]") {
  const std::vector<double> gamma{0, -1.2, -0.7, -1.5, -0.3, -1.6, 0};
  const auto a = count_excursion_jumps(gamma, 1.0);
  CHECK(a.count == 2);
  REQUIRE(a.jump_heights.size() == 1);
  CHECK_THAT(a.jump_heights[0], WithinAbs(1.2, 1e-12));
  CHECK_THAT(a.height, WithinAbs(1.6, 1e-12));
  CHECK(count_excursion_jumps(gamma, 2.0).count == 0);
  const auto v = count_excursion_jumps({0, -2, 0}, 1.0);
  CHECK(v.count == 1);
  CHECK(v.jump_heights.empty());
  CHECK(v.height == 2.0);
  CHECK_THROWS_AS(count_excursion_jumps({0, 0.5, 0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(count_excursion_jumps({0, -1, -1}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(count_excursion_jumps({0, -1, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("excursion counts are scale equivariant", "[path][ladder][property]") {
  RngStream s(5, 5);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> g{0.0};
    double b = 0.0;
    const int n = 5 + static_cast<int>(40 * s.next_uniform());
    for (int i = 0; i < n; ++i) {
      b += sample_normal(s);
      g.push_back(-std::fabs(b) - 1e-3);
    }
    g.push_back(0.0);
    const double bench = 0.2 + 2.0 * s.next_uniform();
    const double c = 0.1 + 10.0 * s.next_uniform();
    std::vector<double> gc(g);
    for (auto& x : gc) x *= c;
    const auto r1 = count_excursion_jumps(g, bench);
    const auto r2 = count_excursion_jumps(gc, c * bench);
    REQUIRE(r1.count == r2.count);
    REQUIRE(r1.jump_heights.size() == r2.jump_heights.size());
    for (std::size_t k = 0; k < r1.jump_heights.size(); ++k)
      CHECK_THAT(r2.jump_heights[k], WithinRel(c * r1.jump_heights[k], 1e-12));
    CHECK_THAT(r2.height, WithinRel(c * r1.height, 1e-12));
  }
}

TEST_CASE("excursion embedded in a path", "[path][ladder]") {
  // Left: a ramp up to 40 followed by a deep well, so the scan can certify
  // extrema there.  Right: a dip to -0.5 (depth 0.5), a new max 0.5, then the
  // excursion 0.5 + gamma, which is entered with benchmark 0.5 + 0.5 = 1.
  std::vector<double> right{-0.5, 0.5};
  for (double g : {-1.2, -0.7, -1.5, -0.3, -1.6, 0.0}) right.push_back(0.5 + g);
  for (int k = 5; k <= 60; ++k) right.push_back(k);
  std::vector<double> left;
  for (int k = 1; k <= 40; ++k) left.push_back(k);
  for (int j = 1; j <= 140; ++j) left.push_back(40 - j);
  for (int j = 1; j <= 300; ++j) left.push_back(-100 + j);
  std::vector<double> v(left.rbegin(), left.rend());
  const auto origin = static_cast<std::int64_t>(v.size());
  v.push_back(0.0);
  v.insert(v.end(), right.begin(), right.end());
  const auto p = make_path(v, origin);
  const auto ev = ladder_decompose(p, 0.9, 1.1);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].benchmark == 1.0);
  CHECK_THAT(ev[0].excursion_height, WithinAbs(1.6, 1e-12));
  REQUIRE(ev[0].inner_jump_heights.size() == 1);
  CHECK_THAT(ev[0].inner_jump_heights[0], WithinAbs(1.2, 1e-12));
  const auto lad = extract_xi_ladder(p, 0.9, 1.5);
  REQUIRE(lad.points.size() == 2);
  CHECK_THAT(lad.points[0], WithinAbs(0.0, 1e-12));
  CHECK_THAT(lad.points[1], WithinAbs(std::log(1.2), 1e-12));
  const auto sc = extract_xi_scan(p, 0.9, 1.5);
  REQUIRE(sc.points.size() == 2);
  CHECK_THAT(sc.points[0], WithinAbs(0.0, 1e-6));
  CHECK_THAT(sc.points[1], WithinAbs(std::log(1.2), 1e-6));
}

TEST_CASE("jumps are left-continuous and sit at well depths", "[path][scan][property]") {
  for (std::uint64_t k = 0; k < 4; ++k) {
    const auto p = gaussian(10 + k, 200000);
    const DepthIndex idx(p);
    const auto t = scan_jumps(idx, 5.0, 1e6);
    REQUIRE(t.jumps.size() >= 5);
    for (const auto& j : t.jumps) {
      const double h = idx.min_depth(p.origin_index + j.before);
      INFO("path " << k << " jump at " << j.log_h);
      CHECK(std::fabs(std::log(h) - j.log_h) < 1e-6);
      CHECK(idx.x_b(h) == off(j.before));
      CHECK(idx.x_b(h * (1 + 1e-9)) == off(j.after));
    }
  }
}

TEST_CASE("influence intervals grow with every jump", "[path][scan][property]") {
  for (std::uint64_t k = 0; k < 4; ++k) {
    const auto p = gaussian(20 + k, 200000);
    const auto t = scan_jumps(DepthIndex(p), 5.0, 1e6);
    REQUIRE(!t.jumps.empty());
    for (const auto& j : t.jumps) {
      const auto j0 = influence_interval(p, j.before);
      const auto j1 = influence_interval(p, j.after);
      CHECK(j1.first <= j0.first);
      CHECK(j1.second >= j0.second);
      CHECK(j1 != j0);
      CHECK(j1.first <= 0);
      CHECK(j1.second >= 0);
    }
  }
}

TEST_CASE("ladder events interleave", "[path][ladder][property]") {
  for (std::uint64_t k = 0; k < 8; ++k) {
    const auto p = gaussian(30 + k, 200000);
    const auto run = run_ladder(p, 1e12);
    REQUIRE(run.events.size() >= 2);
    double prev_height = -1.0;
    for (const auto& e : run.events) {
      CHECK(e.benchmark == e.level + e.depth);
      CHECK(e.benchmark > prev_height);
      if (e.complete) CHECK(e.benchmark < e.excursion_height);
      double prev = e.benchmark;
      for (double h : e.inner_jump_heights) {
        CHECK(h > prev);
        CHECK(h < e.excursion_height);
        prev = h;
      }
      prev_height = e.excursion_height;
    }
  }
}

TEST_CASE("scan and ladder agree on gaussian paths", "[path][oracle]") {
  for (std::uint64_t k = 0; k < 6; ++k) {
    const auto p = gaussian(40 + k, 100000);
    const auto r = validation::compare_oracles(p, 5.0);
    INFO("path " << k << ": " << r.scan_points << " vs " << r.ladder_points);
    CHECK(r.equal);
    CHECK(r.max_mismatch <= 1e-4);
  }
}

TEST_CASE("scan and ladder agree on walk paths", "[path][oracle]") {
  for (std::uint64_t k = 0; k < 4; ++k) {
    RngStream s = RngStream(99, 2).substream(k);
    const auto p = generate_path(s, 100000, 1.0, PathMode::Walk);
    const auto r = validation::compare_oracles(p, 5.0);
    INFO("path " << k << ": " << r.scan_points << " vs " << r.ladder_points);
    CHECK(r.equal);
  }
}

TEST_CASE("streaming half-path source", "[path][ladder]") {
  BrownianHalfSource<RngStream> a(RngStream(3, 3), 0.1, 5), b(RngStream(3, 3), 0.1, 5);
  for (int i = 0; i < 5; ++i) CHECK(a.next(0.0) == b.next(0.0));
  CHECK_FALSE(a.next(0.0).has_value());
  CHECK(a.steps() == 5);
  CHECK_THROWS_AS(BrownianHalfSource<RngStream>(RngStream(1, 1), 0.0, 5), std::invalid_argument);
}

TEST_CASE("one-sided rungs", "[path][one_sided]") {
  RngStream s(4, 4);
  const auto one = one_sided_nu(s, 1, 1e-3);
  REQUIRE(one.rungs.size() == 1);
  CHECK(one.rungs[0].nu == 1);
  CHECK(one.rungs[0].log_h > 0.0);
  CHECK(one.rungs[0].log_w == one.rungs[0].log_h);

  RngStream t(4, 5);
  const auto run = one_sided_nu(t, 200, 1e-3);
  REQUIRE(run.rungs.size() == 200);
  double sum = 0.0;
  for (std::size_t n = 0; n < run.rungs.size(); ++n) {
    CHECK(run.rungs[n].nu == static_cast<std::int64_t>(n + 1));
    CHECK(run.rungs[n].log_w > 0.0);
    sum += run.rungs[n].log_w;
    CHECK_THAT(run.rungs[n].log_h, WithinAbs(sum, 1e-9));
  }
  RngStream c(4, 6);
  CHECK(one_sided_nu(c, 100, 1e-3, 10).truncated);
  CHECK_THROWS_AS(one_sided_nu(c, 0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(one_sided_nu(c, 5, 1.5), std::invalid_argument);
}
