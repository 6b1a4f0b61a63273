#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "lawnsearch/discretize.hpp"
#include "lawnsearch/quota.hpp"
#include "lawnsearch/tours.hpp"

namespace lawnsearch {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Cumulative covered area after time `time`.
struct Breakpoint {
  double time = 0.0;
  double covered = 0.0;
};

/// Pixel-level coverage profile C(γ, t) of a route: covered area is a step
/// function of time, jumping when the route first reaches a pixel center.
struct CoverageProfile {
  std::vector<Breakpoint> breakpoints;  // strictly increasing times
  double total_area = 0.0;
  std::vector<double> pixel_latency;    // first-arrival time per pixel, +inf if never reached

  double covered_at(double t) const {
    double covered = 0.0;
    for (const Breakpoint& b : breakpoints) {
      if (b.time > t) break;
      covered = b.covered;
    }
    return covered;
  }

  /// f(t): fraction of the area still uncovered at time t.
  double uncovered_fraction(double t) const { return 1.0 - covered_at(t) / total_area; }

  double final_covered() const { return breakpoints.empty() ? 0.0 : breakpoints.back().covered; }

  bool complete() const { return final_covered() >= total_area - 1e-9 * std::max(1.0, total_area); }
};

/// Profile from per-pixel latencies and rewards; the total area defaults to
/// the reward sum.
inline CoverageProfile profile_from_latencies(std::span<const double> latency, std::span<const double> rewards,
                                              double total_area = -1.0) {
  if (latency.size() != rewards.size()) throw std::invalid_argument("profile_from_latencies: size mismatch");
  CoverageProfile profile;
  profile.pixel_latency.assign(latency.begin(), latency.end());
  profile.total_area = total_area >= 0.0 ? total_area : std::accumulate(rewards.begin(), rewards.end(), 0.0);

  std::vector<std::size_t> order(latency.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return latency[a] < latency[b]; });
  double covered = 0.0;
  for (std::size_t idx : order) {
    if (!std::isfinite(latency[idx])) break;
    covered += rewards[idx];
    if (!profile.breakpoints.empty() && profile.breakpoints.back().time == latency[idx]) {
      profile.breakpoints.back().covered = covered;
    } else {
      profile.breakpoints.push_back({latency[idx], covered});
    }
  }
  return profile;
}

/// Coverage profile of a route realized on the dual graph. A pixel's latency
/// is the arc length at which the route first reaches its center. Throws
/// std::invalid_argument if consecutive waypoints are not graph-adjacent.
inline CoverageProfile coverage_profile(const Route& route, const PixelGrid& grid, const DualGraph& graph) {
  if (route.waypoints.size() != route.cumulative_length.size()) {
    throw std::invalid_argument("coverage_profile: waypoint and arc-length counts differ");
  }
  std::vector<double> latency(grid.size(), kInfinity);
  for (std::size_t i = 0; i < route.waypoints.size(); ++i) {
    const NodeId v = route.waypoints[i];
    if (v >= grid.size()) throw std::invalid_argument("coverage_profile: waypoint out of range");
    if (i > 0 && v != route.waypoints[i - 1] && !graph.adjacent(route.waypoints[i - 1], v)) {
      throw std::invalid_argument("coverage_profile: route not realized on the graph");
    }
    latency[v] = std::min(latency[v], route.cumulative_length[i]);
  }
  return profile_from_latencies(latency, grid.rewards);
}

/// E[T | γ], or +inf with the uncovered fraction when coverage is incomplete.
struct DetectionTime {
  double value = 0.0;
  double uncovered_fraction = 0.0;

  bool finite() const { return std::isfinite(value); }
};

/// E[T] = Σ_p r(p) t(p) / |R| over the profile's steps.
inline DetectionTime expected_detection_time(const CoverageProfile& profile) {
  if (!profile.complete()) {
    return {kInfinity, 1.0 - profile.final_covered() / profile.total_area};
  }
  double weighted = 0.0;
  double previous = 0.0;
  for (const Breakpoint& b : profile.breakpoints) {
    weighted += (b.covered - previous) * b.time;
    previous = b.covered;
  }
  return {weighted / profile.total_area, 0.0};
}

/// One step of f'(p): for uncovered fractions in [uncovered, the previous
/// step's uncovered), the minimum latency reaching that fraction is `time`.
struct SwapStep {
  double uncovered = 0.0;
  double time = 0.0;
};

/// Axis-swapped profile f'(p) = min { t : f(t) <= p }.
inline std::vector<SwapStep> axis_swap(const CoverageProfile& profile) {
  std::vector<SwapStep> steps;
  steps.reserve(profile.breakpoints.size());
  for (const Breakpoint& b : profile.breakpoints) {
    steps.push_back({1.0 - b.covered / profile.total_area, b.time});
  }
  return steps;
}

/// ∫_0^1 f'(p) dp, summed over the swapped steps; +inf if f never reaches 0.
inline double swapped_integral(std::span<const SwapStep> steps) {
  if (steps.empty() || steps.back().uncovered > 1e-9) return kInfinity;
  double area = 0.0;
  double upper = 1.0;
  for (const SwapStep& s : steps) {
    area += s.time * (upper - s.uncovered);
    upper = s.uncovered;
  }
  return area;
}

/// ∫_0^∞ f(t) dt, integrating the step function along the time axis.
inline double uncovered_integral(const CoverageProfile& profile) {
  if (!profile.complete()) return kInfinity;
  double area = 0.0;
  double t_prev = 0.0;
  double f_prev = 1.0;
  for (const Breakpoint& b : profile.breakpoints) {
    area += (b.time - t_prev) * f_prev;
    t_prev = b.time;
    f_prev = 1.0 - b.covered / profile.total_area;
  }
  return area;
}

struct PlanLeg {
  double budget = 0.0;
  std::int64_t quota = 0;
  Tour tour;
  double slack = 1.0;
};

/// Concatenation of quota tours with doubling budgets 2, 4, 8, ...
struct SearchPlan {
  std::vector<PlanLeg> legs;
  Route route;
  double measured_c = 1.0;
  std::int64_t scale = 1;
};

/// Doubling search plan: for j = 1, 2, ... take the largest quota whose tour
/// fits budget 2^j, traverse it and return to start, until a leg reaches
/// full coverage. measured_c is the largest per-leg slack.
inline SearchPlan exponential_plan(const DualGraph& graph, const PixelGrid& grid, const Metric& metric, NodeId start,
                                   int max_digits = kDefaultRewardDigits) {
  QuotaPlanner planner(graph, grid, metric, start, max_digits);
  SearchPlan plan;
  plan.scale = planner.scaled().scale;
  plan.route.waypoints.push_back(start);
  plan.route.cumulative_length.push_back(0.0);
  for (int j = 1; j < 63; ++j) {
    const double budget = std::ldexp(1.0, j);
    const BudgetedQuota bq = planner.max_quota_within_budget(budget);
    plan.legs.push_back({budget, bq.scaled_quota, bq.tour.tour, bq.tour.slack});
    plan.measured_c = std::max(plan.measured_c, bq.tour.slack);
    append_leg(plan.route, bq.tour.tour.nodes, metric, true);
    if (bq.scaled_quota >= planner.scaled().scaled_total) return plan;
  }
  throw std::logic_error("exponential_plan: budget doubling did not reach full coverage");
}

}  // namespace lawnsearch
