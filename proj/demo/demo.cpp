// Side-by-side look at the two ways of producing the jump process: the
// renewal-cluster model and a simulated Brownian path read through the
// well-depth scan.  Prints densities and a few gap probabilities.

#include <cmath>
#include <cstdio>
#include <vector>

#include "wellscan/wellscan.hpp"

using namespace wellscan;

int main() {
  const auto rep = analytics::analytic_report();
  std::printf("analytic: density %.6f  sigma2 %.6f  z0 %.6f  E[N] %.6f\n", rep.mean_density, rep.sigma2, rep.z0,
              rep.expected_N);

  RngStream model_stream(1, 1);
  const PointSample model = cluster::synthesize_xi(model_stream, 0.0, 2000.0);
  const auto dm = stats::empirical_density(model);
  std::printf("cluster model on [0, 2000]: %zu points, density %.4f +- %.4f\n", model.points.size(), dm.estimate,
              dm.std_error);

  // Eight paths of 2e6 steps; log-depth windows [ln 20, ln 20 + 6].
  std::vector<PointSample> oracle;
  std::size_t total = 0;
  double length = 0.0;
  for (std::uint64_t k = 0; k < 8; ++k) {
    RngStream s = RngStream(1, 2).substream(k);
    const auto p = path::generate_path(s, 1000000, 1.0, path::PathMode::Gaussian);
    oracle.push_back(path::extract_xi_scan(p, 20.0, 20.0 * std::exp(6.0)));
    total += oracle.back().points.size();
    length += oracle.back().length();
  }
  std::printf("path oracle, 8 paths: %zu jumps over log-length %.2f, density %.4f\n", total, length,
              static_cast<double>(total) / length);

  std::vector<PointSample> windows;
  const RngStream base(1, 3);
  for (std::uint64_t i = 0; i < 200; ++i) {
    RngStream s = base.substream(i);
    windows.push_back(cluster::synthesize_xi(s, 0.0, 100.0));
  }
  std::printf("\n%6s %10s %10s %10s\n", "s", "model", "analytic", "se");
  for (double s : {0.25, 0.5, 1.0, 2.0}) {
    const auto g = stats::empirical_gap(windows, s);
    std::printf("%6.2f %10.4f %10.4f %10.4f\n", s, g.estimate, analytics::gap_probability(s), g.std_error);
  }
  return 0;
}
