// wellscan: command-line driver over the library.
//
//   wellscan analytic
//   wellscan cluster  --replicates N
//   wellscan xi       --window-start A --window-end B [--burn-in L]
//   wellscan path     --horizon X --step D --mode gaussian|walk --h-min a --h-max b [--oracle scan|ladder|sign]
//   wellscan gap      --replicates R --horizon T [--s 0.25,0.5,1,2]
//   wellscan clt      --horizon T --replicates M
//   wellscan validate [--criteria E1,D1]
//
// Every command takes --seed, --out, --format and --threads.  Exit status is
// 0 on success, 1 if a validation fails, 2 on a configuration error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unistd.h>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wellscan/wellscan.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace wellscan;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

// Stream ids used by the sampling commands.
constexpr std::uint64_t kStreamCluster = 1;
constexpr std::uint64_t kStreamXi = 2;
constexpr std::uint64_t kStreamPath = 3;
constexpr std::uint64_t kStreamGap = 4;
constexpr std::uint64_t kStreamClt = 5;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  unsigned threads = 1;
  double window_start = 0.0;
  double window_end = 100.0;
  double horizon = 0.0;
  std::size_t replicates = 0;
  double h_min = 0.0;
  double h_max = 0.0;
  double step = 1.0;
  std::string mode = "gaussian";
  std::string oracle = "scan";
  double grid_factor = path::kDefaultGridFactor;
  double burn_in = cluster::kDefaultBurnIn;
  std::vector<double> s_grid{0.25, 0.5, 1.0, 2.0};
  std::vector<std::string> criteria;
  std::string dump;
};

std::string fmt9(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// JSON numbers rounded to 9 significant digits.
json num9(double v) {
  if (!std::isfinite(v)) return fmt9(v);
  return std::stod(fmt9(v));
}

// Key/value metadata shared by the CSV comment header and the JSON "meta" object.
using Meta = std::vector<std::pair<std::string, std::string>>;

Meta base_meta(const std::string& command, const Options& o) {
  return {{"artifact", "wellscan"},
          {"version", std::string(kVersion)},
          {"schema", std::to_string(kOutputSchema)},
          {"command", command},
          {"seed", std::to_string(o.seed)}};
}

json meta_json(const Meta& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

/// Writes to a temp file next to `target` and renames it into place; an empty
/// target means stdout.
void emit(const std::string& target, const std::string& text) {
  if (target.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::filesystem::path dst(target);
  std::filesystem::path tmp = dst;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << text;
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, dst, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename into " + dst.string() + ": " + ec.message());
  }
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const Meta& meta, const Table& t) {
  std::ostringstream os;
  for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
  return os.str();
}

std::string render_json(json j) { return j.dump(2) + "\n"; }

void require_format(const Options& o, const std::string& fallback, std::string& fmt) {
  fmt = o.format.empty() ? fallback : o.format;
  if (fmt != "csv" && fmt != "json") throw ConfigError("--format: expected csv or json, got '" + fmt + "'");
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

path::PathMode parse_mode(const std::string& m) {
  if (m == "gaussian") return path::PathMode::Gaussian;
  if (m == "walk") return path::PathMode::Walk;
  throw ConfigError("--mode: expected gaussian or walk, got '" + m + "'");
}

// ---------------------------------------------------------------- commands

int cmd_analytic(const Options& o) {
  std::string fmt;
  require_format(o, "json", fmt);
  const auto r = analytics::analytic_report();
  const std::vector<std::pair<std::string, double>> kv{{"mean_density", r.mean_density},
                                                       {"sigma2", r.sigma2},
                                                       {"z0", r.z0},
                                                       {"lambda0", r.lambda0},
                                                       {"expected_N", r.expected_N},
                                                       {"interarrival_mean", r.interarrival_mean},
                                                       {"interarrival_var", r.interarrival_var}};
  const Meta meta = base_meta("analytic", o);
  if (fmt == "json") {
    json j = json::object();
    for (const auto& [k, v] : kv) j[k] = num9(v);
    j["meta"] = meta_json(meta);
    emit(o.out, render_json(j));
  } else {
    Table t{{"key", "value"}, {}};
    for (const auto& [k, v] : kv) t.rows.push_back({k, fmt9(v)});
    emit(o.out, render_csv(meta, t));
  }
  return kExitOk;
}

int cmd_cluster(const Options& o) {
  std::string fmt;
  require_format(o, "csv", fmt);
  const std::size_t n = o.replicates == 0 ? 10 : o.replicates;
  const RngStream base(o.seed, kStreamCluster);
  std::vector<cluster::ClusterDraw> draws(n);
  parallel_for(n, o.threads, [&](std::size_t i) {
    RngStream s = base.substream(i);
    draws[i] = cluster::draw_cluster(s);
  });
  Meta meta = base_meta("cluster", o);
  meta.emplace_back("replicates", std::to_string(n));
  meta.emplace_back("stream_id", std::to_string(kStreamCluster));
  if (fmt == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json offs = json::array();
      for (double v : draws[i].offsets) offs.push_back(num9(v));
      rows.push_back({{"draw_id", i},
                      {"count", draws[i].count},
                      {"endpoint", num9(draws[i].endpoint)},
                      {"next_center", num9(draws[i].next_center)},
                      {"offsets", offs},
                      {"truncated", draws[i].truncated}});
    }
    emit(o.out, render_json({{"meta", meta_json(meta)}, {"draws", rows}}));
    return kExitOk;
  }
  Table t{{"draw_id", "count", "endpoint", "next_center", "offsets"}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    std::string offs;
    for (std::size_t k = 0; k < draws[i].offsets.size(); ++k) offs += (k ? ";" : "") + fmt9(draws[i].offsets[k]);
    t.rows.push_back({std::to_string(i), std::to_string(draws[i].count), fmt9(draws[i].endpoint),
                      fmt9(draws[i].next_center), offs});
  }
  emit(o.out, render_csv(meta, t));
  return kExitOk;
}

std::string emit_points(const std::string& fmt, Meta meta, const PointSample& s) {
  meta.emplace_back("generator", std::string(to_string(s.generator_tag)));
  meta.emplace_back("stream_id", std::to_string(s.seed_info.stream_id));
  meta.emplace_back("window_start", fmt9(s.window_start));
  meta.emplace_back("window_end", fmt9(s.window_end));
  meta.emplace_back("points", std::to_string(s.points.size()));
  if (fmt == "json") {
    json pts = json::array();
    for (double p : s.points) pts.push_back(num9(p));
    return render_json({{"meta", meta_json(meta)},
                        {"window_start", num9(s.window_start)},
                        {"window_end", num9(s.window_end)},
                        {"points", pts}});
  }
  Table t{{"t"}, {}};
  for (double p : s.points) t.rows.push_back({fmt9(p)});
  return render_csv(meta, t);
}

int cmd_xi(const Options& o) {
  std::string fmt;
  require_format(o, "csv", fmt);
  require(std::isfinite(o.window_start) && std::isfinite(o.window_end), "--window-start/--window-end: must be finite");
  require(o.window_end >= o.window_start, "--window-end: must not precede --window-start");
  require(o.burn_in >= 0.0, "--burn-in: must be nonnegative");
  RngStream s(o.seed, kStreamXi);
  const PointSample w = cluster::synthesize_xi(s, o.window_start, o.window_end, o.burn_in);
  Meta meta = base_meta("xi", o);
  meta.emplace_back("burn_in", fmt9(o.burn_in));
  emit(o.out, emit_points(fmt, meta, w));
  return kExitOk;
}

int cmd_path(const Options& o) {
  std::string fmt;
  require_format(o, "csv", fmt);
  const path::PathMode mode = parse_mode(o.mode);
  require(o.step > 0.0 && std::isfinite(o.step), "--step: must be positive");
  const double horizon = o.horizon > 0.0 ? o.horizon : 1e6 * o.step;
  require(std::isfinite(horizon), "--horizon: must be finite");
  const double half = std::floor(horizon / o.step);
  require(half >= 1.0, "--horizon: shorter than one step");
  require(2.0 * half + 1.0 <= static_cast<double>(path::kMaxPathPoints), "--horizon: path would exceed 2^31 points");
  const double h_min = o.h_min > 0.0 ? o.h_min : 50.0 * std::sqrt(o.step);
  const double h_max = o.h_max > 0.0 ? o.h_max : h_min * std::exp(3.0);
  require(h_min > 0.0, "--h-min: must be positive");
  require(h_max > h_min, "--h-max: must exceed --h-min");
  require(o.grid_factor > 0.0, "--grid-factor: must be positive");
  if (o.oracle != "scan" && o.oracle != "ladder" && o.oracle != "sign")
    throw ConfigError("--oracle: expected scan, ladder or sign, got '" + o.oracle + "'");

  RngStream s(o.seed, kStreamPath);
  const path::LatticePath p = path::generate_path(s, static_cast<std::int64_t>(half), o.step, mode);
  if (!o.dump.empty()) path::write_path(p, o.dump);
  PointSample w;
  if (o.oracle == "scan") w = path::extract_xi_scan(p, h_min, h_max, o.grid_factor);
  else if (o.oracle == "ladder") w = path::extract_xi_ladder(p, h_min, h_max);
  else w = path::detect_sign_changes(p, h_min, h_max, o.grid_factor);

  Meta meta = base_meta("path", o);
  meta.emplace_back("mode", std::string(path::to_string(mode)));
  meta.emplace_back("oracle", o.oracle);
  meta.emplace_back("step", fmt9(o.step));
  meta.emplace_back("half_length", fmt9(half));
  meta.emplace_back("h_min", fmt9(h_min));
  meta.emplace_back("h_max", fmt9(h_max));
  meta.emplace_back("grid_factor", fmt9(o.grid_factor));
  emit(o.out, emit_points(fmt, meta, w));
  return kExitOk;
}

int cmd_gap(const Options& o) {
  std::string fmt;
  require_format(o, "csv", fmt);
  const std::size_t windows = o.replicates == 0 ? validation::kGapWindows : o.replicates;
  const double len = o.horizon > 0.0 ? o.horizon : validation::kGapWindowLength;
  require(std::isfinite(len), "--horizon: must be finite");
  require(!o.s_grid.empty(), "--s: need at least one gap length");
  for (double s : o.s_grid) {
    require(s > 0.0, "--s: gap lengths must be positive");
    require(len >= 3.0 * s, "--horizon: window must be at least 3 times every gap length");
  }
  const RngStream base(o.seed, kStreamGap);
  std::vector<PointSample> ws(windows);
  parallel_for(windows, o.threads, [&](std::size_t i) {
    RngStream s = base.substream(i);
    ws[i] = cluster::synthesize_xi(s, 0.0, len, o.burn_in);
  });
  Meta meta = base_meta("gap", o);
  meta.emplace_back("replicates", std::to_string(windows));
  meta.emplace_back("horizon", fmt9(len));
  meta.emplace_back("burn_in", fmt9(o.burn_in));
  Table t{{"s", "empirical", "analytic", "std_error"}, {}};
  json rows = json::array();
  for (double s : o.s_grid) {
    const auto est = stats::empirical_gap(ws, s);
    const double g = analytics::gap_probability(s);
    t.rows.push_back({fmt9(s), fmt9(est.estimate), fmt9(g), fmt9(est.std_error)});
    rows.push_back({{"s", num9(s)}, {"empirical", num9(est.estimate)}, {"analytic", num9(g)},
                    {"std_error", num9(est.std_error)}});
  }
  emit(o.out, fmt == "csv" ? render_csv(meta, t) : render_json({{"meta", meta_json(meta)}, {"rows", rows}}));
  return kExitOk;
}

int cmd_clt(const Options& o) {
  std::string fmt;
  require_format(o, "json", fmt);
  const double horizon = o.horizon > 0.0 ? o.horizon : 500.0;
  const std::size_t m = o.replicates == 0 ? 2000 : o.replicates;
  require(horizon >= 100.0 && std::isfinite(horizon), "--horizon: must be at least 100");
  require(m >= 100, "--replicates: need at least 100");
  const auto sum = stats::clt_experiment(RngStream(o.seed, kStreamClt), horizon, m, o.threads);
  const double sigma2 = analytics::sigma_squared();
  const double sd = std::sqrt(sigma2);
  const auto ks = stats::ks_test(sum.normalized_values, [sd](double x) { return stats::normal_cdf(x, 0.0, sd); });
  Meta meta = base_meta("clt", o);
  meta.emplace_back("horizon", fmt9(horizon));
  meta.emplace_back("replicates", std::to_string(m));
  if (fmt == "json") {
    json vals = json::array();
    for (double v : sum.normalized_values) vals.push_back(num9(v));
    emit(o.out, render_json({{"meta", meta_json(meta)},
                             {"horizon", num9(sum.horizon)},
                             {"replicates", sum.replicates},
                             {"mean", num9(sum.mean)},
                             {"sample_variance", num9(sum.sample_variance)},
                             {"sigma2", num9(sigma2)},
                             {"ks_statistic", num9(ks.statistic)},
                             {"ks_p_value", num9(ks.p_value)},
                             {"normalized_values", vals}}));
  } else {
    meta.emplace_back("mean", fmt9(sum.mean));
    meta.emplace_back("sample_variance", fmt9(sum.sample_variance));
    meta.emplace_back("sigma2", fmt9(sigma2));
    meta.emplace_back("ks_p_value", fmt9(ks.p_value));
    Table t{{"replicate", "normalized"}, {}};
    for (std::size_t i = 0; i < sum.normalized_values.size(); ++i)
      t.rows.push_back({std::to_string(i), fmt9(sum.normalized_values[i])});
    emit(o.out, render_csv(meta, t));
  }
  return kExitOk;
}

int cmd_validate(const Options& o) {
  std::string fmt;
  require_format(o, "json", fmt);
  for (const auto& id : o.criteria) {
    const auto& ids = validation::criterion_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw ConfigError("--criteria: unknown criterion '" + id + "'");
  }
  validation::Config cfg;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  const auto results = validation::run_criteria(cfg, o.criteria);
  bool all = true;
  Meta meta = base_meta("validate", o);
  json crit = json::array();
  Table t{{"id", "pass", "check", "value", "target", "tolerance", "check_pass"}, {}};
  for (const auto& r : results) {
    all = all && r.pass();
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name}, {"value", num9(c.value)}, {"target", num9(c.target)},
                        {"tolerance", num9(c.tolerance)}, {"pass", c.pass}});
      t.rows.push_back({r.id, r.pass() ? "1" : "0", '"' + c.name + '"', fmt9(c.value), fmt9(c.target),
                        fmt9(c.tolerance), c.pass ? "1" : "0"});
    }
    crit.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"checks", checks}});
    std::fprintf(stderr, "%-3s %s (%.1f s)\n", r.id.c_str(), r.pass() ? "PASS" : "FAIL", r.seconds);
  }
  emit(o.out, fmt == "csv" ? render_csv(meta, t)
                           : render_json({{"meta", meta_json(meta)}, {"all_pass", all}, {"criteria", crit}}));
  return all ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wellscan: jump process of the bottom of the deepest well, samplers and checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "master seed (default 0)");
    sub->add_option("--out", o.out, "output file (default stdout); written atomically");
    sub->add_option("--format", o.format, "csv or json");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  };

  auto* analytic = app.add_subcommand("analytic", "analytic constants as JSON");
  common(analytic);

  auto* clusters = app.add_subcommand("cluster", "independent cluster draws");
  common(clusters);
  clusters->add_option("--replicates", o.replicates, "number of draws (default 10)");

  auto* xi = app.add_subcommand("xi", "one window of the cluster-model point process");
  common(xi);
  xi->add_option("--window-start", o.window_start, "window start (log scale)");
  xi->add_option("--window-end", o.window_end, "window end (log scale)");
  xi->add_option("--burn-in", o.burn_in, "length simulated before the window");

  auto* pathc = app.add_subcommand("path", "jump log-depths read off a simulated path");
  common(pathc);
  pathc->add_option("--horizon", o.horizon, "half-length of the path (default 1e6 steps)");
  pathc->add_option("--step", o.step, "lattice spacing");
  pathc->add_option("--mode", o.mode, "gaussian or walk");
  pathc->add_option("--h-min", o.h_min, "smallest depth (default 50 sqrt(step))");
  pathc->add_option("--h-max", o.h_max, "largest depth (default e^3 h_min)");
  pathc->add_option("--grid-factor", o.grid_factor, "relative spacing of the scan grid");
  pathc->add_option("--oracle", o.oracle, "scan, ladder or sign");
  pathc->add_option("--dump", o.dump, "also write the path in binary form");

  auto* gap = app.add_subcommand("gap", "empirical and analytic gap probabilities");
  common(gap);
  gap->add_option("--replicates", o.replicates, "number of windows (default 400)");
  gap->add_option("--horizon", o.horizon, "window length (default 100)");
  gap->add_option("--burn-in", o.burn_in, "length simulated before each window");
  gap->add_option("--s", o.s_grid, "gap lengths")->delimiter(',');

  auto* clt = app.add_subcommand("clt", "normalized window counts");
  common(clt);
  clt->add_option("--horizon", o.horizon, "window length (default 500)");
  clt->add_option("--replicates", o.replicates, "number of windows (default 2000)");

  auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
  common(validate);
  validate->add_option("--criteria", o.criteria, "subset of criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*analytic) return cmd_analytic(o);
    if (*clusters) return cmd_cluster(o);
    if (*xi) return cmd_xi(o);
    if (*pathc) return cmd_path(o);
    if (*gap) return cmd_gap(o);
    if (*clt) return cmd_clt(o);
    if (*validate) return cmd_validate(o);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "wellscan: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "wellscan: invalid configuration: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "wellscan: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
