#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lawnsearch/geometry.hpp"
#include "lawnsearch/tours.hpp"

namespace lawnsearch {

enum class CutterShape { square, circle };

/// Sensor footprint centered on the robot: a square of half side
/// `half_extent` or a disk of radius `half_extent`.
struct Cutter {
  CutterShape shape = CutterShape::square;
  double half_extent = 0.5;

  static Cutter unit_square() { return {CutterShape::square, 0.5}; }
  static Cutter unit_circle() { return {CutterShape::circle, 1.0}; }
};

namespace detail {

// Parameters s in [0, length] where the robot at a + s*u covers `target`.
inline std::optional<std::pair<double, double>> covering_interval(Point a, Point u, double length, Point target,
                                                                  const Cutter& cutter) {
  const Point rel = a - target;
  double lo = 0.0, hi = length;
  if (cutter.shape == CutterShape::square) {
    const double h = cutter.half_extent;
    for (int axis = 0; axis < 2; ++axis) {
      const double p = axis == 0 ? rel.x : rel.y;
      const double v = axis == 0 ? u.x : u.y;
      if (v == 0.0) {
        if (std::abs(p) > h) return std::nullopt;
        continue;
      }
      double s1 = (-h - p) / v, s2 = (h - p) / v;
      if (s1 > s2) std::swap(s1, s2);
      lo = std::max(lo, s1);
      hi = std::min(hi, s2);
    }
  } else {
    // |rel + s u|^2 <= h^2 with |u| = 1.
    const double b = dot(rel, u);
    const double c = dot(rel, rel) - cutter.half_extent * cutter.half_extent;
    const double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    lo = std::max(lo, -b - root);
    hi = std::min(hi, -b + root);
  }
  if (lo > hi) return std::nullopt;
  return std::pair{lo, hi};
}

inline bool covers(Point robot, Point target, const Cutter& cutter) {
  const Point d = robot - target;
  if (cutter.shape == CutterShape::square) {
    return std::abs(d.x) <= cutter.half_extent && std::abs(d.y) <= cutter.half_extent;
  }
  return dot(d, d) <= cutter.half_extent * cutter.half_extent;
}

}  // namespace detail

/// Earliest arc length at which the cutter, moving along the polyline
/// through `path`, contains `target`; nullopt if it never does.
inline std::optional<double> first_detection_time(std::span<const Point> path, Point target, const Cutter& cutter) {
  if (path.empty()) return std::nullopt;
  if (detail::covers(path.front(), target, cutter)) return 0.0;
  double elapsed = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Point a = path[i - 1];
    const Point d = path[i] - a;
    const double len = norm(d);
    if (len == 0.0) continue;
    const Point u = (1.0 / len) * d;
    if (auto hit = detail::covering_interval(a, u, len, target, cutter)) return elapsed + hit->first;
    elapsed += len;
  }
  return std::nullopt;
}

/// Polyline through the pixel centers of a route's waypoints.
inline std::vector<Point> route_polyline(const Route& route, std::span<const Point> centers) {
  std::vector<Point> pts;
  pts.reserve(route.waypoints.size());
  for (NodeId v : route.waypoints) {
    if (v >= centers.size()) throw std::invalid_argument("route_polyline: waypoint out of range");
    pts.push_back(centers[v]);
  }
  return pts;
}

inline std::optional<double> first_detection_time(const Route& route, std::span<const Point> centers, Point target,
                                                  const Cutter& cutter) {
  const auto pts = route_polyline(route, centers);
  return first_detection_time(std::span<const Point>(pts), target, cutter);
}

/// SplitMix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Per-trial seed: splitmix64(master ^ splitmix64(trial)). Independent of
/// evaluation order, so trials can run in any partition.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(master ^ splitmix64(trial));
}

struct SimulationReport {
  std::size_t trials = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation over detected trials
  std::size_t undetected = 0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;

  double standard_error() const {
    const std::size_t detected = trials - undetected;
    return detected > 0 ? std / std::sqrt(static_cast<double>(detected)) : 0.0;
  }
};

/// Detection times of `trials` uniformly drawn targets. Each worker fills a
/// disjoint slice; the aggregate is reduced in trial order, so the result is
/// identical for any thread count.
inline SimulationReport monte_carlo(const Route& route, std::span<const Point> centers, const PolygonalRegion& region,
                                    const Cutter& cutter, std::size_t trials, std::uint64_t seed,
                                    unsigned threads = 1) {
  if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be at least 1");
  const auto started = std::chrono::steady_clock::now();
  const auto path = route_polyline(route, centers);
  std::vector<std::optional<double>> times(trials);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const Point target = sample_uniform(region, trial_seed(seed, t));
      times[t] = first_detection_time(std::span<const Point>(path), target, cutter);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (threads == 1) {
    work(0, trials);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(trials, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  SimulationReport report;
  report.trials = trials;
  report.seed = seed;
  double sum = 0.0;
  std::size_t detected = 0;
  for (const auto& t : times) {
    if (t) {
      sum += *t;
      ++detected;
    }
  }
  report.undetected = trials - detected;
  if (detected > 0) report.mean = sum / static_cast<double>(detected);
  if (detected > 1) {
    double sq = 0.0;
    for (const auto& t : times) {
      if (t) sq += (*t - report.mean) * (*t - report.mean);
    }
    report.std = std::sqrt(sq / static_cast<double>(detected - 1));
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

struct ComparisonRow {
  std::string name;
  double mean = 0.0;
  double std = 0.0;
  double wall_time = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct NamedReport {
  std::string name;
  SimulationReport report;
};

/// Table rows in input order.
inline std::vector<ComparisonRow> compare(std::span<const NamedReport> reports) {
  if (reports.empty()) throw std::invalid_argument("compare: need at least one report");
  std::vector<ComparisonRow> rows;
  for (const auto& [name, r] : reports) rows.push_back({name, r.mean, r.std, r.wall_time, r.trials, r.seed});
  return rows;
}

inline std::string format_fixed(double value, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

inline constexpr const char* kReportCsvHeader = "name,mean,std,wall_time_seconds,trials,seed";

inline std::string to_csv(std::span<const ComparisonRow> rows) {
  std::string out = std::string(kReportCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += r.name + "," + format_fixed(r.mean) + "," + format_fixed(r.std) + "," + format_fixed(r.wall_time) + "," +
           std::to_string(r.trials) + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

}  // namespace lawnsearch
