#pragma once

#include <algorithm>
#include <chrono>
#include <limits>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lawnsearch/io.hpp"
#include "lawnsearch/lawnsearch.hpp"
#include "lawnsearch/render.hpp"

namespace lawnsearch::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kInfeasible = 3 };

struct RunConfig {
  std::string region_path;
  std::string algorithm = "exptree";  // exptree | minlatency | expplan | quota
  std::string cutter = "square";      // square | circle
  std::string motion = "rectilinear"; // rectilinear | arbitrary
  std::optional<double> quota_value;
  std::optional<double> budget;
  double epsilon = kDefaultEpsilon;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  std::string route_path;
  std::string cap_mode = "nodes";
  int digits = kDefaultRewardDigits;
  unsigned threads = 1;
  bool timing = true;
  std::optional<std::vector<double>> target;
};

/// Infeasible instance (exit code 3).
class InfeasibleInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Region plus its pixel grid and dual graph for a given cutter and motion.
struct Instance {
  PolygonalRegion region;
  PixelGrid grid;
  DualGraph graph;
  Cutter cutter;
};

inline Instance build_instance(const PolygonalRegion& region, const RunConfig& cfg) {
  Instance inst{region, {}, {}, Cutter::unit_square()};
  if (cfg.cutter == "circle") {
    auto [grid, graph] = build_hex_grid(region);
    inst.grid = std::move(grid);
    inst.graph = std::move(graph);
    inst.cutter = Cutter::unit_circle();
  } else {
    inst.grid = build_square_grid(region);
    inst.graph = build_dual_graph(inst.grid, cfg.motion == "arbitrary" ? Motion::arbitrary : Motion::rectilinear);
  }
  return inst;
}

inline std::filesystem::path output_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.output_dir);
  return std::filesystem::path(cfg.output_dir) / name;
}

inline std::unique_ptr<Metric> make_metric(const DualGraph& graph) {
  try {
    return std::make_unique<Metric>(graph);
  } catch (const std::invalid_argument& e) {
    throw InfeasibleInstance(e.what());
  }
}

/// Writes grid.json; returns the summary line.
inline std::string cmd_discretize(const RunConfig& cfg) {
  const Instance inst = build_instance(load_region(cfg.region_path), cfg);
  write_text_file(output_path(cfg, "grid.json").string(), grid_to_json(inst.grid, inst.graph).dump(2) + "\n");
  std::ostringstream ss;
  ss.precision(12);
  ss << "N=" << inst.grid.size() << " sum_r=" << inst.grid.total_reward() << " area=" << region_area(inst.region)
     << " bridges=" << inst.grid.bridge_count();
  return ss.str();
}

struct PlanOutcome {
  Route route;
  Json metadata;
};

inline PlanOutcome run_planner(const Instance& inst, const Metric& metric, const RunConfig& cfg) {
  const NodeId start = static_cast<NodeId>(inst.grid.start_index);
  PlanOutcome out;
  out.metadata["algorithm"] = cfg.algorithm;
  if (cfg.algorithm == "exptree") {
    const auto mode = cfg.cap_mode == "cost" ? CapMode::cost : CapMode::nodes;
    auto result = exponential_tree_heuristic(inst.graph, inst.grid, metric, start, mode);
    out.route = std::move(result.route);
    out.metadata["tree_sizes"] = result.tree_sizes;
    out.metadata["cap_mode"] = cfg.cap_mode;
  } else if (cfg.algorithm == "minlatency") {
    out.route = min_latency_heuristic(inst.graph, inst.grid, metric, start, cfg.epsilon);
    out.metadata["epsilon"] = cfg.epsilon;
  } else if (cfg.algorithm == "expplan") {
    const SearchPlan plan = exponential_plan(inst.graph, inst.grid, metric, start, cfg.digits);
    out.route = plan.route;
    const auto e = expected_detection_time(coverage_profile(plan.route, inst.grid, inst.graph));
    out.metadata["plan"] = plan_to_json(plan, e);
  } else if (cfg.algorithm == "quota") {
    QuotaPlanner planner(inst.graph, inst.grid, metric, start, cfg.digits);
    QuotaTour qt;
    if (cfg.quota_value) {
      try {
        qt = planner.tour_for_quota(*cfg.quota_value);
      } catch (const InfeasibleQuota& e) {
        throw InfeasibleInstance(e.what());
      }
      out.metadata["quota"] = *cfg.quota_value;
    } else if (cfg.budget) {
      if (*cfg.budget < 0.0) throw InputError("--budget", "must be non-negative");
      const BudgetedQuota bq = planner.max_quota_within_budget(*cfg.budget);
      qt = bq.tour;
      out.metadata["budget"] = *cfg.budget;
      out.metadata["scaled_quota"] = bq.scaled_quota;
      out.metadata["area_quota"] = bq.area_quota;
    } else {
      throw InputError("--quota", "the quota algorithm needs --quota or --budget");
    }
    out.metadata["collected_reward"] = qt.collected_reward;
    out.metadata["slack"] = qt.slack;
    out.metadata["tour"] = qt.tour.nodes;
    out.route = realize_route(qt.tour.nodes, metric, true);
  } else {
    throw InputError("--algorithm", "unknown algorithm '" + cfg.algorithm + "'");
  }
  return out;
}

/// Writes route.json and plan.json; returns the summary line.
inline std::string cmd_plan(const RunConfig& cfg) {
  const Instance inst = build_instance(load_region(cfg.region_path), cfg);
  const auto metric = make_metric(inst.graph);
  PlanOutcome out = run_planner(inst, *metric, cfg);
  const auto profile = coverage_profile(out.route, inst.grid, inst.graph);
  const auto e = expected_detection_time(profile);
  out.metadata["node_count"] = inst.grid.size();
  out.metadata["length"] = out.route.length();
  out.metadata["expected_T"] = e.finite() ? Json(e.value) : Json(nullptr);
  out.metadata["uncovered_fraction"] = e.uncovered_fraction;

  write_text_file(output_path(cfg, "route.json").string(),
                  route_to_json(out.route, inst.grid.kind, inst.grid.size()).dump() + "\n");
  write_text_file(output_path(cfg, "plan.json").string(), out.metadata.dump(2) + "\n");
  std::ostringstream ss;
  ss.precision(12);
  ss << "algorithm=" << cfg.algorithm << " N=" << inst.grid.size() << " length=" << out.route.length()
     << " expected_T=" << (e.finite() ? std::to_string(e.value) : "inf");
  return ss.str();
}

inline void check_route_matches(const RouteFile& rf, const Instance& inst) {
  if (rf.kind != to_string(inst.grid.kind) || (rf.node_count != 0 && rf.node_count != inst.grid.size())) {
    throw InputError("route", "route was planned on a different grid (kind " + rf.kind + ", " +
                                  std::to_string(rf.node_count) + " nodes)");
  }
  for (NodeId v : rf.route.waypoints) {
    if (v >= inst.grid.size()) throw InputError("waypoints", "node id out of range for this region");
  }
}

/// Writes report.json and report.csv; returns the summary line.
inline std::string cmd_simulate(const RunConfig& cfg) {
  const Instance inst = build_instance(load_region(cfg.region_path), cfg);
  const RouteFile rf = load_route(cfg.route_path);
  check_route_matches(rf, inst);
  const SimulationReport report =
      monte_carlo(rf.route, inst.grid.centers, inst.region, inst.cutter, cfg.trials, cfg.seed, cfg.threads);
  const std::string name = std::filesystem::path(cfg.route_path).stem().string();
  write_text_file(output_path(cfg, "report.json").string(), report_to_json(name, report, cfg.timing).dump(2) + "\n");
  ComparisonRow row{name, report.mean, report.std, cfg.timing ? report.wall_time : 0.0, report.trials, report.seed};
  write_text_file(output_path(cfg, "report.csv").string(), to_csv(std::span<const ComparisonRow>(&row, 1)));
  std::ostringstream ss;
  ss << "trials=" << report.trials << " mean=" << format_fixed(report.mean) << " std=" << format_fixed(report.std)
     << " undetected=" << report.undetected;
  return ss.str();
}

/// Fastest of `repeats` runs of `fn`, in seconds.
template <class Fn>
double best_wall_time(Fn&& fn, int repeats = 3) {
  using Clock = std::chrono::steady_clock;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

/// Runs both heuristics on one region, simulates each with the same seed and
/// writes bench.csv (one row per heuristic; wall_time is the planner's own
/// time, best of three, with the shared distance table built beforehand) and
/// bench.json (adds the mean ratio). Returns the summary line.
inline std::string cmd_bench(const RunConfig& cfg) {
  const Instance inst = build_instance(load_region(cfg.region_path), cfg);
  const NodeId start = static_cast<NodeId>(inst.grid.start_index);
  const auto metric = make_metric(inst.graph);
  const auto mode = cfg.cap_mode == "cost" ? CapMode::cost : CapMode::nodes;

  Route exp_route;
  const double exp_time = best_wall_time([&] {
    exp_route = exponential_tree_heuristic(inst.graph, inst.grid, *metric, start, mode).route;
  });
  Route lat_route;
  const double lat_time = best_wall_time([&] {
    lat_route = min_latency_heuristic(inst.graph, inst.grid, *metric, start, cfg.epsilon);
  });

  const auto sim = [&](const Route& r) {
    return monte_carlo(r, inst.grid.centers, inst.region, inst.cutter, cfg.trials, cfg.seed, cfg.threads);
  };
  const SimulationReport exp_report = sim(exp_route);
  const SimulationReport lat_report = sim(lat_route);

  std::vector<ComparisonRow> rows = compare(std::vector<NamedReport>{
      {"Exponential Tree Heuristic", exp_report}, {"Minimum Latency Heuristic", lat_report}});
  rows[0].wall_time = cfg.timing ? exp_time : 0.0;
  rows[1].wall_time = cfg.timing ? lat_time : 0.0;
  write_text_file(output_path(cfg, "bench.csv").string(), to_csv(rows));

  const double ratio = lat_report.mean > 0.0 ? exp_report.mean / lat_report.mean : 0.0;
  const auto discrete = [&](const Route& r) {
    return expected_detection_time(coverage_profile(r, inst.grid, inst.graph)).value;
  };
  Json summary = {{"node_count", inst.grid.size()},
                  {"mean_ratio", ratio},
                  {"rows", Json::array()},
                  {"discrete_expected_T", {discrete(exp_route), discrete(lat_route)}}};
  for (const auto& r : rows) {
    summary["rows"].push_back({{"name", r.name}, {"mean", r.mean}, {"std", r.std}, {"wall_time_seconds", r.wall_time}});
  }
  write_text_file(output_path(cfg, "bench.json").string(), summary.dump(2) + "\n");
  return "N=" + std::to_string(inst.grid.size()) + " mean_ratio=" + format_fixed(ratio, 4);
}

/// Writes route.svg.
inline std::string cmd_render(const RunConfig& cfg) {
  const Instance inst = build_instance(load_region(cfg.region_path), cfg);
  Route route;
  if (!cfg.route_path.empty()) {
    const RouteFile rf = load_route(cfg.route_path);
    check_route_matches(rf, inst);
    route = rf.route;
  }
  RenderOptions opt;
  if (cfg.target) {
    if (cfg.target->size() != 2) throw InputError("--target", "expected two coordinates");
    opt.target = Point{(*cfg.target)[0], (*cfg.target)[1]};
  }
  const auto path = output_path(cfg, "route.svg");
  write_text_file(path.string(), render_svg(inst.region, inst.grid, route, opt));
  return path.string();
}

/// Writes region.json for a seeded generated region.
inline std::string cmd_generate(const RunConfig& cfg) {
  const PolygonalRegion region = generate_rectilinear_region(cfg.seed);
  const auto path = output_path(cfg, "region.json");
  write_text_file(path.string(), region_to_json(region).dump(2) + "\n");
  return path.string();
}

inline void report_error(std::ostream& err, int code, const std::string& kind, const std::string& message,
                         const std::string& field = "") {
  Json line = {{"level", "error"}, {"code", code}, {"kind", kind}, {"message", message}};
  if (!field.empty()) line["field"] = field;
  err << line.dump() << "\n";
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Quota lawn mowing and expected-detection-time search planning"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_region = [&](CLI::App* sub) { sub->add_option("--region", cfg.region_path, "Region JSON file")->required(); };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--cutter", cfg.cutter, "Cutter shape")->check(CLI::IsMember({"square", "circle"}));
    sub->add_option("--motion", cfg.motion, "Motion model for square cutters")
        ->check(CLI::IsMember({"rectilinear", "arbitrary"}));
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.output_dir, "Output directory"); };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Master seed");
    sub->add_option("--threads", cfg.threads, "Simulation worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("!--no-timing", cfg.timing, "Write wall times as 0 for reproducible output files");
  };
  auto add_planner = [&](CLI::App* sub) {
    sub->add_option("--epsilon", cfg.epsilon, "Block ratio for the minimum latency heuristic")
        ->check(CLI::PositiveNumber);
    sub->add_option("--cap-mode", cfg.cap_mode, "Tree cap for the exponential tree heuristic")
        ->check(CLI::IsMember({"nodes", "cost"}));
  };

  auto* discretize = app.add_subcommand("discretize", "Write the pixel grid and dual graph");
  add_region(discretize);
  add_grid(discretize);
  add_out(discretize);

  auto* plan = app.add_subcommand("plan", "Plan a search route");
  add_region(plan);
  add_grid(plan);
  add_out(plan);
  add_planner(plan);
  plan->add_option("--algorithm", cfg.algorithm, "Planner")
      ->check(CLI::IsMember({"exptree", "minlatency", "expplan", "quota"}));
  plan->add_option("--quota", cfg.quota_value, "Area quota (quota algorithm)");
  plan->add_option("--budget", cfg.budget, "Length budget (quota algorithm)");
  plan->add_option("--digits", cfg.digits, "Maximum reward decimal digits")->check(CLI::Range(0, 12));

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo detection times for a planned route");
  add_region(simulate);
  add_grid(simulate);
  add_out(simulate);
  add_sim(simulate);
  simulate->add_option("--route", cfg.route_path, "Route JSON from plan")->required();

  auto* bench = app.add_subcommand("bench", "Compare the two heuristics on one region");
  add_region(bench);
  add_grid(bench);
  add_out(bench);
  add_sim(bench);
  add_planner(bench);

  auto* render = app.add_subcommand("render", "Render region, grid and route as SVG");
  add_region(render);
  add_grid(render);
  add_out(render);
  render->add_option("--route", cfg.route_path, "Route JSON from plan");
  render->add_option("--target", cfg.target, "Target marker x y")->expected(2);

  auto* generate = app.add_subcommand("generate", "Write a seeded random test region");
  add_out(generate);
  generate->add_option("--seed", cfg.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    report_error(err, kInputError, "usage", e.what());
    return kInputError;
  }

  try {
    std::string summary;
    if (*discretize) summary = cmd_discretize(cfg);
    else if (*plan) summary = cmd_plan(cfg);
    else if (*simulate) summary = cmd_simulate(cfg);
    else if (*bench) summary = cmd_bench(cfg);
    else if (*render) summary = cmd_render(cfg);
    else if (*generate) summary = cmd_generate(cfg);
    out << summary << "\n";
    return kOk;
  } catch (const InputError& e) {
    report_error(err, kInputError, "input", e.what(), e.field());
    return kInputError;
  } catch (const InfeasibleInstance& e) {
    report_error(err, kInfeasible, "infeasible", e.what());
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    report_error(err, kInputError, "input", e.what());
    return kInputError;
  }
}

}  // namespace lawnsearch::cli
