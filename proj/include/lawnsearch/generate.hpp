#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "lawnsearch/geometry.hpp"

namespace lawnsearch {

/// Size knobs for generated test regions, in region units (cutter side = 1).
struct RegionGeneratorOptions {
  double width_min = 16.0;
  double width_max = 28.0;
  double height_min = 10.0;
  double height_max = 20.0;
  int holes_min = 1;
  int holes_max = 3;
};

namespace detail {

inline double round_to_hundredths(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace detail

/// Seeded random rectilinear region with rectangular holes.
///
/// The outer ring is x-monotone: a row of columns, each with its own floor
/// in the lower quarter and ceiling in the upper quarter, so every column
/// spans the middle band. Holes and the start point are drawn inside that
/// band. Coordinates are rounded to two decimals so boundary pixels get
/// fractional rewards.
inline PolygonalRegion generate_rectilinear_region(std::uint64_t seed, const RegionGeneratorOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return detail::round_to_hundredths(lo + (hi - lo) * unit_interval(rng()));
  };
  auto uniform_int = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };

  const double width = uniform(opt.width_min, opt.width_max);
  const double height = uniform(opt.height_min, opt.height_max);
  const int columns = uniform_int(3, 6);

  std::vector<double> xs{0.0};
  for (int c = 1; c < columns; ++c) {
    xs.push_back(detail::round_to_hundredths(width * (c + 0.6 * (unit_interval(rng()) - 0.5)) / columns));
  }
  xs.push_back(width);
  std::vector<double> floors, ceilings;
  for (int c = 0; c < columns; ++c) {
    floors.push_back(uniform(0.0, 0.25 * height));
    ceilings.push_back(uniform(0.75 * height, height));
  }

  Ring outer;
  auto push = [&](Point p) {
    if (outer.empty() || !(outer.back() == p)) outer.push_back(p);
  };
  for (int c = 0; c < columns; ++c) {
    push({xs[c], floors[c]});
    push({xs[c + 1], floors[c]});
  }
  for (int c = columns - 1; c >= 0; --c) {
    push({xs[c + 1], ceilings[c]});
    push({xs[c], ceilings[c]});
  }
  if (outer.front() == outer.back()) outer.pop_back();

  const double band_lo = 0.25 * height + 0.5;
  const double band_hi = 0.75 * height - 0.5;
  struct Rect {
    double x0, y0, x1, y1;
  };
  std::vector<Rect> rects;
  const int hole_target = uniform_int(opt.holes_min, opt.holes_max);
  for (int attempt = 0; attempt < 200 && static_cast<int>(rects.size()) < hole_target; ++attempt) {
    const double w = uniform(1.0, std::min(4.0, 0.25 * width));
    const double h = uniform(1.0, std::min(3.0, band_hi - band_lo - 0.1));
    const double x0 = uniform(0.5, width - 0.5 - w);
    const double y0 = uniform(band_lo, band_hi - h);
    const Rect r{x0, y0, detail::round_to_hundredths(x0 + w), detail::round_to_hundredths(y0 + h)};
    bool clear = true;
    for (const Rect& o : rects) {
      if (r.x0 < o.x1 + 1.0 && o.x0 < r.x1 + 1.0 && r.y0 < o.y1 + 1.0 && o.y0 < r.y1 + 1.0) clear = false;
    }
    if (clear) rects.push_back(r);
  }
  std::vector<Ring> holes;
  for (const Rect& r : rects) holes.push_back({{r.x0, r.y0}, {r.x0, r.y1}, {r.x1, r.y1}, {r.x1, r.y0}});

  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Point s{uniform(1.0, width - 1.0), uniform(band_lo, band_hi)};
    bool clear = true;
    for (const Rect& r : rects) {
      if (s.x > r.x0 - 0.5 && s.x < r.x1 + 0.5 && s.y > r.y0 - 0.5 && s.y < r.y1 + 0.5) clear = false;
    }
    if (clear) return make_region(std::move(outer), std::move(holes), s);
  }
  throw std::runtime_error("generate_rectilinear_region: could not place a start point");
}

}  // namespace lawnsearch
