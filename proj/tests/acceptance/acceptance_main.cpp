// Runs every acceptance criterion and prints one PASS/FAIL line per id,
// followed by the individual checks.  Exit status is 1 if any criterion fails.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wellscan/validation.hpp"

int main(int argc, char** argv) {
  CLI::App app{"wellscan acceptance suite"};
  wellscan::validation::Config cfg;
  std::vector<std::string> only;
  bool verbose = true;
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--criteria", only, "subset of criterion ids");
  app.add_flag("!--quiet", verbose, "omit per-check lines");
  CLI11_PARSE(app, argc, argv);

  std::vector<wellscan::validation::CriterionResult> results;
  try {
    results = wellscan::validation::run_criteria(cfg, only);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }

  int failed = 0;
  for (const auto& r : results) {
    const bool ok = r.pass();
    if (!ok) ++failed;
    std::printf("%-3s %s  %s (%.1f s)\n", r.id.c_str(), ok ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
    if (!verbose) continue;
    for (const auto& c : r.checks)
      std::printf("      [%s] %s: value %.9g, target %.9g, tolerance %.3g\n", c.pass ? "ok" : "no", c.name.c_str(),
                  c.value, c.target, c.tolerance);
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
