// Experiment orchestration shared by the CLI and the test suite: experiment
// specs (JSON), derived per-replica seeds, a small worker pool, the command
// implementations (generate/match/scheme/analyze/sweep/validate), and
// mean/stderr aggregation. Every command writes a manifest sufficient to
// re-run itself.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "stubmatch/analysis.hpp"
#include "stubmatch/io.hpp"
#include "stubmatch/matcher.hpp"
#include "stubmatch/sampler.hpp"
#include "stubmatch/schemes.hpp"

namespace stubmatch {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Engine { Rounds, Greedy };

inline const char* to_string(Engine e) { return e == Engine::Rounds ? "rounds" : "greedy"; }

inline Engine engine_from_string(const std::string& s) {
  if (s == "rounds") return Engine::Rounds;
  if (s == "greedy") return Engine::Greedy;
  throw ValidationError("unknown engine '" + s + "' (expected rounds or greedy)");
}

struct SweepAxis {
  std::string param;
  std::vector<double> values;
};

struct ExperimentSpec {
  SimParams sim;
  int replicas = 1;
  Engine engine = Engine::Rounds;
  std::string out_dir;
  int threads = 0;  // 0 = hardware concurrency
  std::string scheme;
  int truncation_stages = 4;
  double cube_side = 1.0;
  int cube_n = 2;
  std::vector<SweepAxis> axes;
};

inline json spec_to_json(const ExperimentSpec& spec) {
  json j{{"sim", simparams_to_json(spec.sim)},
         {"replicas", spec.replicas},
         {"engine", to_string(spec.engine)}};
  if (!spec.scheme.empty()) j["scheme"] = spec.scheme;
  j["truncation_stages"] = spec.truncation_stages;
  j["cube_side"] = spec.cube_side;
  j["cube_n"] = spec.cube_n;
  if (!spec.axes.empty()) {
    json axes = json::array();
    for (const auto& ax : spec.axes) axes.push_back({{"param", ax.param}, {"values", ax.values}});
    j["sweep"] = axes;
  }
  return j;
}

/// Accepts either a bare spec or a manifest wrapping one under "spec".
inline ExperimentSpec spec_from_json(const json& in) {
  const json& j = in.contains("spec") ? in.at("spec") : in;
  ExperimentSpec spec{simparams_from_json(j.at("sim"))};
  spec.replicas = j.value("replicas", 1);
  spec.engine = engine_from_string(j.value("engine", std::string("rounds")));
  spec.scheme = j.value("scheme", std::string());
  spec.truncation_stages = j.value("truncation_stages", 4);
  spec.cube_side = j.value("cube_side", 1.0);
  spec.cube_n = j.value("cube_n", 2);
  if (j.contains("sweep")) {
    for (const json& ax : j.at("sweep"))
      spec.axes.push_back(
          {ax.at("param").get<std::string>(), ax.at("values").get<std::vector<double>>()});
  }
  return spec;
}

inline std::uint64_t replica_seed(const ExperimentSpec& spec, int replica) {
  return spec.sim.seed + static_cast<std::uint64_t>(replica);
}

inline std::string replica_file(const std::string& stem, int replica, const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "_%03d", replica);
  return stem + buf + ext;
}

/// Runs fn(0..count-1) on a small worker pool; rethrows the first failure.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct Aggregate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::int64_t n = 0;
};

inline Aggregate aggregate(const std::vector<double>& xs) {
  Aggregate a;
  a.n = static_cast<std::int64_t>(xs.size());
  if (a.n == 0) return a;
  double sum = 0.0;
  for (double x : xs) sum += x;
  a.mean = sum / static_cast<double>(a.n);
  if (a.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.stderr_of_mean = std::sqrt(ss / static_cast<double>(a.n - 1)) /
                       std::sqrt(static_cast<double>(a.n));
  }
  return a;
}

inline std::string aggregate_csv(
    const std::vector<std::pair<std::string, std::vector<double>>>& metrics) {
  std::ostringstream out;
  out << "metric,mean,stderr,n\n";
  for (const auto& [name, xs] : metrics) {
    const Aggregate a = aggregate(xs);
    out << name << ',' << format_double(a.mean) << ',' << format_double(a.stderr_of_mean) << ','
        << a.n << '\n';
  }
  return out.str();
}

inline void write_manifest(const ExperimentSpec& spec, const std::string& command) {
  json manifest{{"version", kToolVersion}, {"command", command}, {"spec", spec_to_json(spec)}};
  write_text_atomic(std::filesystem::path(spec.out_dir) / "manifest.json", manifest.dump(2) + "\n");
}

inline void require_out_dir(const ExperimentSpec& spec) {
  if (spec.out_dir.empty()) throw ValidationError("an output directory is required (--out)");
}

inline void require_replicas(const ExperimentSpec& spec) {
  if (spec.replicas < 1) throw ValidationError("replicas must be >= 1");
}

inline std::filesystem::path config_path(const ExperimentSpec& spec, int replica) {
  return std::filesystem::path(spec.out_dir) / replica_file("config", replica, ".csv");
}

inline int cmd_generate(const ExperimentSpec& spec) {
  require_out_dir(spec);
  require_replicas(spec);
  parallel_for(spec.replicas, spec.threads, [&](int i) {
    SimParams params = spec.sim;
    params.seed = replica_seed(spec, i);
    write_point_config(config_path(spec, i), sample_config(params));
  });
  write_manifest(spec, "generate");
  return 0;
}

inline json match_report_json(const ExperimentSpec& spec, const PointConfig& cfg,
                              const Matching& m, const std::optional<Run2cimcResult>& rounds) {
  const MatchReport rep = match_report(m);
  const StubIntensities rates = stub_intensities(cfg, m);
  const std::int64_t red_total = cfg.total_stubs(Color::Red);
  const std::int64_t blue_total = cfg.total_stubs(Color::Blue);
  json j{{"matched_red_stubs", rep.matched_red_stubs},
         {"matched_blue_stubs", rep.matched_blue_stubs},
         {"unmatched_red_stubs", rep.unmatched_red_stubs},
         {"unmatched_blue_stubs", rep.unmatched_blue_stubs},
         {"edge_count", rep.edge_count}};
  j["n_red"] = cfg.count(Color::Red);
  j["n_blue"] = cfg.count(Color::Blue);
  j["matched_red_rate"] = rates.matched_red_rate;
  j["matched_blue_rate"] = rates.matched_blue_rate;
  j["unmatched_red_rate"] = rates.unmatched_red_rate;
  j["unmatched_blue_rate"] = rates.unmatched_blue_rate;
  j["saturating_color"] =
      red_total < blue_total ? "red" : blue_total < red_total ? "blue" : "balanced";
  j["engine"] = to_string(spec.engine);
  if (rounds) {
    j["rounds"] = rounds->rounds;
    j["tie_breaks"] = rounds->tie_breaks;
  }
  return j;
}

inline int cmd_match(const ExperimentSpec& spec) {
  require_out_dir(spec);
  require_replicas(spec);
  const std::filesystem::path dir(spec.out_dir);
  std::vector<double> edge_counts(spec.replicas), unmatched_fraction(spec.replicas),
      unmatched_red(spec.replicas), unmatched_blue(spec.replicas), rounds_used(spec.replicas);
  parallel_for(spec.replicas, spec.threads, [&](int i) {
    const PointConfig cfg = read_point_config(config_path(spec, i));
    std::optional<Run2cimcResult> rounds;
    std::optional<Matching> greedy;
    if (spec.engine == Engine::Rounds)
      rounds.emplace(run_2cimc(cfg));
    else
      greedy.emplace(run_greedy(cfg));
    const Matching& m = rounds ? rounds->matching : *greedy;
    write_matching_csv(dir / replica_file("matching", i, ".csv"), m);
    const json rep = match_report_json(spec, cfg, m, rounds);
    write_text_atomic(dir / replica_file("match_report", i, ".json"), rep.dump(2) + "\n");
    const auto r = match_report(m);
    const double total_stubs =
        static_cast<double>(cfg.total_stubs(Color::Red) + cfg.total_stubs(Color::Blue));
    edge_counts[i] = static_cast<double>(r.edge_count);
    unmatched_red[i] = static_cast<double>(r.unmatched_red_stubs);
    unmatched_blue[i] = static_cast<double>(r.unmatched_blue_stubs);
    unmatched_fraction[i] =
        total_stubs > 0.0
            ? static_cast<double>(r.unmatched_red_stubs + r.unmatched_blue_stubs) / total_stubs
            : 0.0;
    rounds_used[i] = rounds ? static_cast<double>(rounds->rounds) : 0.0;
  });
  std::vector<std::pair<std::string, std::vector<double>>> metrics{
      {"edge_count", edge_counts},
      {"unmatched_red_stubs", unmatched_red},
      {"unmatched_blue_stubs", unmatched_blue},
      {"unmatched_stub_fraction", unmatched_fraction}};
  if (spec.engine == Engine::Rounds) metrics.emplace_back("rounds", rounds_used);
  write_text_atomic(dir / "aggregate.csv", aggregate_csv(metrics));
  write_manifest(spec, "match");
  return 0;
}

inline int cmd_scheme(const ExperimentSpec& spec) {
  require_out_dir(spec);
  require_replicas(spec);
  if (spec.scheme != "finite_component" && spec.scheme != "percolating" &&
      spec.scheme != "truncation")
    throw ValidationError("unknown scheme '" + spec.scheme +
                          "' (expected finite_component, percolating, or truncation)");
  const std::filesystem::path dir(spec.out_dir);
  std::vector<std::pair<std::int64_t, std::int64_t>> caps;
  if (spec.scheme == "truncation")
    caps = choose_truncations(spec.sim.red_law, spec.sim.blue_law, spec.sim.lambda_red,
                              spec.sim.lambda_blue, spec.truncation_stages);
  std::vector<double> edge_counts(spec.replicas), fractions(spec.replicas);
  parallel_for(spec.replicas, spec.threads, [&](int i) {
    const PointConfig cfg = read_point_config(config_path(spec, i));
    json out;
    std::size_t edges = 0;
    double fraction = 0.0;
    if (spec.scheme == "finite_component") {
      const FiniteComponentResult res = finite_component_scheme(cfg);
      write_matching_csv(dir / replica_file("matching", i, ".csv"), res.matching);
      json groups = json::array();
      for (const SchemeGroup& g : res.groups) {
        json ids = json::array();
        for (std::int32_t id : g.red_chain) ids.push_back(id);
        for (std::int32_t id : g.blue_chain) ids.push_back(id);
        groups.push_back(std::move(ids));
      }
      out["groups"] = std::move(groups);
      out["leftover_ids"] = res.leftover_ids;
      json thresholds;
      for (const auto& [cls, d] : res.thresholds) thresholds[std::to_string(cls)] = d;
      out["thresholds"] = std::move(thresholds);
      fraction = cfg.size() > 0
                     ? static_cast<double>(res.leftover_ids.size()) / static_cast<double>(cfg.size())
                     : 0.0;
      out["leftover_fraction"] = fraction;
      edges = res.matching.size();
    } else if (spec.scheme == "percolating") {
      const PercolatingResult res = percolating_scheme(cfg);
      write_matching_csv(dir / replica_file("matching", i, ".csv"), res.matching);
      out["path"] = res.path;
      out["path_edge_count"] = res.path_edge_count;
      out["skeleton_color"] = to_string(res.skeleton_color);
      out["counts_close"] = res.counts_close;
      out["skeleton_leftovers"] = res.skeleton_leftovers;
      out["tree"] = res.tree_method;
      fraction = cfg.size() > 0
                     ? static_cast<double>(res.path.size()) / static_cast<double>(cfg.size())
                     : 0.0;
      out["path_vertex_fraction"] = fraction;
      edges = res.matching.size();
    } else {
      const TruncationResult res = alternating_truncation(cfg, caps);
      write_matching_csv(dir / replica_file("matching", i, ".csv"), res.matching);
      json caps_json = json::array();
      for (const auto& [jcap, kcap] : caps) caps_json.push_back({jcap, kcap});
      out["caps"] = std::move(caps_json);
      json stages = json::array();
      for (const StageReport& s : res.stages)
        stages.push_back({{"stage", s.stage},
                          {"cap_red", s.cap_red},
                          {"cap_blue", s.cap_blue},
                          {"saturated_color", s.saturated_color},
                          {"edges_added", s.edges_added}});
      out["stages"] = std::move(stages);
      fraction = res.stages.empty() ? 0.0
                                    : static_cast<double>(res.stages.back().edges_added);
      edges = res.matching.size();
    }
    write_text_atomic(dir / replica_file("scheme", i, ".json"), out.dump(2) + "\n");
    edge_counts[i] = static_cast<double>(edges);
    fractions[i] = fraction;
  });
  const char* fraction_name = spec.scheme == "finite_component" ? "leftover_fraction"
                              : spec.scheme == "percolating"    ? "path_vertex_fraction"
                                                                : "last_stage_edges";
  write_text_atomic(dir / "aggregate.csv", aggregate_csv({{"edge_count", edge_counts},
                                                          {fraction_name, fractions}}));
  write_manifest(spec, "scheme");
  return 0;
}

inline int cmd_analyze(const ExperimentSpec& spec) {
  require_out_dir(spec);
  require_replicas(spec);
  const std::filesystem::path dir(spec.out_dir);
  std::vector<double> largest(spec.replicas), comp_count(spec.replicas), mean_t(spec.replicas),
      percolates(spec.replicas), good_fraction(spec.replicas);
  parallel_for(spec.replicas, spec.threads, [&](int i) {
    const PointConfig cfg = read_point_config(config_path(spec, i));
    const auto edges = read_matching_csv(dir / replica_file("matching", i, ".csv"));
    Matching m(cfg);
    for (const Edge& e : edges) m.add_edge(e.red, e.blue);
    const ComponentReport comp = components(cfg, m);
    const StubIntensities rates = stub_intensities(cfg, m);
    const EdgeLengthStats lengths = total_edge_length(cfg, m);
    const CubeLattice lat = renormalize(cfg, spec.cube_side, spec.cube_n);

    json j;
    j["components"] = {{"largest_fraction", comp.largest_fraction},
                       {"component_count", comp.component_count},
                       {"isolated_points", comp.isolated_points},
                       {"paths", comp.paths},
                       {"cycles", comp.cycles},
                       {"other", comp.other}};
    j["stub_intensities"] = {{"matched_red_rate", rates.matched_red_rate},
                             {"matched_blue_rate", rates.matched_blue_rate},
                             {"unmatched_red_rate", rates.unmatched_red_rate},
                             {"unmatched_blue_rate", rates.unmatched_blue_rate}};
    j["edge_length"] = {{"mean", lengths.mean},
                        {"hill_tail_index", lengths.hill_k > 0 ? json(lengths.hill_tail_index)
                                                               : json(nullptr)},
                        {"hill_k", lengths.hill_k}};
    const double cube_total = static_cast<double>(lat.red_count.size());
    j["renormalization"] = {{"cube_side", lat.side},
                            {"side_adjusted", lat.side_adjusted},
                            {"extent", lat.extent},
                            {"n", lat.n},
                            {"m", lat.m},
                            {"k", lat.k},
                            {"adjacency", lat.adjacency},
                            {"acceptable_fraction", cube_total > 0
                                                        ? lat.acceptable_count / cube_total
                                                        : 0.0},
                            {"good_fraction", cube_total > 0 ? lat.good_count / cube_total : 0.0},
                            {"percolates", lat.percolates}};
    write_text_atomic(dir / replica_file("analysis", i, ".json"), j.dump(2) + "\n");

    std::ostringstream hist;
    hist << "size,count\n";
    for (const auto& [size, count] : comp.size_histogram) hist << size << ',' << count << '\n';
    write_text_atomic(dir / replica_file("histogram", i, ".csv"), hist.str());

    largest[i] = comp.largest_fraction;
    comp_count[i] = static_cast<double>(comp.component_count);
    mean_t[i] = lengths.mean;
    percolates[i] = lat.percolates ? 1.0 : 0.0;
    good_fraction[i] = cube_total > 0 ? lat.good_count / cube_total : 0.0;
  });
  write_text_atomic(dir / "aggregate.csv",
                    aggregate_csv({{"largest_fraction", largest},
                                   {"component_count", comp_count},
                                   {"mean_total_edge_length", mean_t},
                                   {"good_cube_fraction", good_fraction},
                                   {"percolation_rate", percolates}}));
  write_manifest(spec, "analyze");
  return 0;
}

inline const std::vector<std::string>& sweep_params() {
  static const std::vector<std::string> params{"L",           "lambda", "lambda_red",
                                               "lambda_blue", "k",      "geometric_p",
                                               "zipf_s"};
  return params;
}

inline void validate_sweep_axes(const ExperimentSpec& spec) {
  if (spec.axes.empty()) throw ValidationError("sweep requires at least one grid axis");
  std::vector<std::string> seen;
  for (const auto& ax : spec.axes) {
    const auto& allowed = sweep_params();
    if (std::find(allowed.begin(), allowed.end(), ax.param) == allowed.end())
      throw ValidationError("sweep: unknown parameter '" + ax.param + "'");
    if (ax.values.empty()) throw ValidationError("sweep: axis '" + ax.param + "' has no values");
    for (const auto& s : seen)
      if (s == ax.param || ((s == "lambda" || ax.param == "lambda") &&
                            (s.rfind("lambda", 0) == 0 && ax.param.rfind("lambda", 0) == 0)))
        throw ValidationError("sweep: conflicting axes '" + s + "' and '" + ax.param + "'");
    seen.push_back(ax.param);
    const bool red_det =
        std::holds_alternative<MarkLaw::Deterministic>(spec.sim.red_law.variant());
    const bool blue_det =
        std::holds_alternative<MarkLaw::Deterministic>(spec.sim.blue_law.variant());
    const bool red_geo = std::holds_alternative<MarkLaw::Geometric>(spec.sim.red_law.variant());
    const bool blue_geo = std::holds_alternative<MarkLaw::Geometric>(spec.sim.blue_law.variant());
    const bool red_zipf = std::holds_alternative<MarkLaw::Zipf>(spec.sim.red_law.variant());
    const bool blue_zipf = std::holds_alternative<MarkLaw::Zipf>(spec.sim.blue_law.variant());
    if (ax.param == "k" && (!red_det || !blue_det))
      throw ValidationError("sweep: axis 'k' conflicts with non-deterministic mark laws");
    if (ax.param == "geometric_p" && (!red_geo || !blue_geo))
      throw ValidationError("sweep: axis 'geometric_p' conflicts with non-geometric mark laws");
    if (ax.param == "zipf_s" && (!red_zipf || !blue_zipf))
      throw ValidationError("sweep: axis 'zipf_s' conflicts with non-zipf mark laws");
  }
}

inline void apply_sweep_param(SimParams& sim, const std::string& param, double value) {
  if (param == "L") {
    sim.window.side = value;
  } else if (param == "lambda") {
    sim.lambda_red = value;
    sim.lambda_blue = value;
  } else if (param == "lambda_red") {
    sim.lambda_red = value;
  } else if (param == "lambda_blue") {
    sim.lambda_blue = value;
  } else if (param == "k") {
    sim.red_law = MarkLaw::deterministic(static_cast<std::int64_t>(value));
    sim.blue_law = MarkLaw::deterministic(static_cast<std::int64_t>(value));
  } else if (param == "geometric_p") {
    sim.red_law = MarkLaw::geometric(value);
    sim.blue_law = MarkLaw::geometric(value);
  } else if (param == "zipf_s") {
    sim.red_law = MarkLaw::zipf(value);
    sim.blue_law = MarkLaw::zipf(value);
  } else {
    throw ValidationError("sweep: unknown parameter '" + param + "'");
  }
}

inline const char* kSweepColumns =
    "L,lambda_red,lambda_blue,k,geometric_p,zipf_s,replica,seed,n_red,n_blue,edge_count,"
    "unmatched_red_stubs,unmatched_blue_stubs,unmatched_stub_fraction,largest_fraction,"
    "component_count,paths,cycles,other,isolated_points,mean_total_edge_length,rounds,tie_breaks";

inline int cmd_sweep(const ExperimentSpec& spec) {
  require_out_dir(spec);
  require_replicas(spec);
  validate_sweep_axes(spec);
  std::vector<std::vector<double>> grid_points;  // one value per axis
  std::vector<double> current(spec.axes.size());
  auto build = [&](auto&& self, std::size_t axis) -> void {
    if (axis == spec.axes.size()) {
      grid_points.push_back(current);
      return;
    }
    for (double v : spec.axes[axis].values) {
      current[axis] = v;
      self(self, axis + 1);
    }
  };
  build(build, 0);

  const int total = static_cast<int>(grid_points.size()) * spec.replicas;
  std::vector<std::string> rows(total);
  parallel_for(total, spec.threads, [&](int task) {
    const int point = task / spec.replicas;
    const int replica = task % spec.replicas;
    SimParams sim = spec.sim;
    for (std::size_t a = 0; a < spec.axes.size(); ++a)
      apply_sweep_param(sim, spec.axes[a].param, grid_points[point][a]);
    sim.seed = spec.sim.seed + static_cast<std::uint64_t>(replica);
    const PointConfig cfg = sample_config(sim);
    std::optional<Run2cimcResult> rounds;
    std::optional<Matching> greedy;
    if (spec.engine == Engine::Rounds)
      rounds.emplace(run_2cimc(cfg));
    else
      greedy.emplace(run_greedy(cfg));
    const Matching& m = rounds ? rounds->matching : *greedy;
    const MatchReport rep = match_report(m);
    const ComponentReport comp = components(cfg, m);
    const EdgeLengthStats lengths = total_edge_length(cfg, m);

    std::ostringstream row;
    row << format_double(sim.window.side) << ',' << format_double(sim.lambda_red) << ','
        << format_double(sim.lambda_blue) << ',';
    if (const auto* det = std::get_if<MarkLaw::Deterministic>(&sim.red_law.variant()))
      row << det->k;
    row << ',';
    if (const auto* geo = std::get_if<MarkLaw::Geometric>(&sim.red_law.variant()))
      row << format_double(geo->p);
    row << ',';
    if (const auto* z = std::get_if<MarkLaw::Zipf>(&sim.red_law.variant()))
      row << format_double(z->s);
    row << ',' << replica << ',' << sim.seed << ',' << cfg.count(Color::Red) << ','
        << cfg.count(Color::Blue) << ',' << rep.edge_count << ',' << rep.unmatched_red_stubs
        << ',' << rep.unmatched_blue_stubs << ',';
    const double total_stubs =
        static_cast<double>(cfg.total_stubs(Color::Red) + cfg.total_stubs(Color::Blue));
    row << format_double(total_stubs > 0.0
                             ? (rep.unmatched_red_stubs + rep.unmatched_blue_stubs) / total_stubs
                             : 0.0);
    row << ',' << format_double(comp.largest_fraction) << ',' << comp.component_count << ','
        << comp.paths << ',' << comp.cycles << ',' << comp.other << ',' << comp.isolated_points
        << ',' << format_double(lengths.mean) << ',';
    if (rounds) row << rounds->rounds;
    row << ',';
    if (rounds) row << rounds->tie_breaks;
    rows[task] = row.str();
  });

  std::ostringstream out;
  out << kSweepColumns << '\n';
  for (const std::string& r : rows) out << r << '\n';
  write_text_atomic(std::filesystem::path(spec.out_dir) / "sweep.csv", out.str());
  write_manifest(spec, "sweep");
  return 0;
}

inline int cmd_validate(const ExperimentSpec& spec, std::ostream& log) {
  validate(spec.sim);
  require_replicas(spec);
  log << "config: ok\n";
  if (spec.out_dir.empty()) return 0;
  const std::filesystem::path dir(spec.out_dir);
  for (int i = 0; i < spec.replicas; ++i) {
    const auto cpath = config_path(spec, i);
    if (!std::filesystem::exists(cpath)) continue;
    const PointConfig cfg = read_point_config(cpath);
    std::string note;
    if (cfg.size() <= 2000) {
      const auto report = check_non_equidistant(cfg);
      note = report.ok ? ", non-equidistant" : ", HAS EQUAL DISTANCES";
    }
    log << cpath.filename().string() << ": ok (" << cfg.size() << " points" << note << ")\n";
    const auto mpath = dir / replica_file("matching", i, ".csv");
    if (!std::filesystem::exists(mpath)) continue;
    Matching m(cfg);
    for (const Edge& e : read_matching_csv(mpath)) m.add_edge(e.red, e.blue);
    log << mpath.filename().string() << ": ok (" << m.size() << " edges)\n";
  }
  return 0;
}

}  // namespace stubmatch
