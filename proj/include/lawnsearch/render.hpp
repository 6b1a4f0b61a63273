#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lawnsearch/discretize.hpp"
#include "lawnsearch/geometry.hpp"
#include "lawnsearch/tours.hpp"

namespace lawnsearch {

/// Stroke color of leg `i`: a fixed palette, then golden-angle hues, so
/// every leg index maps to a distinct color.
inline std::string leg_color(std::size_t i) {
  static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  if (i < std::size(palette)) return palette[i];
  const double hue = std::fmod(static_cast<double>(i) * 137.50776405, 360.0);
  std::ostringstream ss;
  ss << "hsl(" << hue << ",70%," << (35 + (i % 3) * 10) << "%)";
  return ss.str();
}

struct RenderOptions {
  double pixels_per_unit = 20.0;
  std::optional<Point> target;
};

/// SVG of the region, its pixels, the route (one polyline per leg) and the
/// start marker.
inline std::string render_svg(const PolygonalRegion& region, const PixelGrid& grid, const Route& route,
                              const RenderOptions& opt = {}) {
  BoundingBox box = region.bounds();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (Point p : pixel_polygon(grid, i)) box.extend(p);
  }
  const double margin = 1.0;
  const double s = opt.pixels_per_unit;
  const double w = (box.width() + 2 * margin) * s;
  const double h = (box.height() + 2 * margin) * s;
  auto sx = [&](double x) { return (x - box.min_x + margin) * s; };
  auto sy = [&](double y) { return (box.max_y + margin - y) * s; };

  std::ostringstream out;
  out.precision(10);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
      << w << " " << h << "\">\n";

  out << "  <g id=\"pixels\" fill=\"#eeeeee\" stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << "    <polygon points=\"";
    for (Point p : pixel_polygon(grid, i)) out << sx(p.x) << "," << sy(p.y) << " ";
    out << "\"" << (grid.rewards[i] == 0.0 ? " fill=\"#ffffff\"" : "") << "/>\n";
  }
  out << "  </g>\n";

  out << "  <path id=\"region\" fill=\"#88aadd\" fill-opacity=\"0.25\" stroke=\"#000000\" stroke-width=\"1.5\" "
         "fill-rule=\"evenodd\" d=\"";
  auto ring_path = [&](const Ring& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) out << (i == 0 ? "M" : "L") << sx(ring[i].x) << "," << sy(ring[i].y) << " ";
    out << "Z ";
  };
  ring_path(region.outer);
  for (const auto& hole : region.holes) ring_path(hole);
  out << "\"/>\n";

  std::vector<std::size_t> starts = route.leg_starts;
  if (starts.empty() && route.waypoints.size() > 1) starts.push_back(0);
  out << "  <g id=\"route\" fill=\"none\" stroke-width=\"2\" stroke-linejoin=\"round\">\n";
  for (std::size_t leg = 0; leg < starts.size(); ++leg) {
    const std::size_t begin = starts[leg];
    const std::size_t end = leg + 1 < starts.size() ? starts[leg + 1] : route.waypoints.size() - 1;
    if (end <= begin) continue;
    out << "    <polyline class=\"leg\" stroke=\"" << leg_color(leg) << "\" points=\"";
    for (std::size_t i = begin; i <= end; ++i) {
      const Point c = grid.centers[route.waypoints[i]];
      out << sx(c.x) << "," << sy(c.y) << " ";
    }
    out << "\"/>\n";
  }
  out << "  </g>\n";

  const Point st = region.start;
  out << "  <circle id=\"start\" cx=\"" << sx(st.x) << "\" cy=\"" << sy(st.y) << "\" r=\"" << 0.3 * s
      << "\" fill=\"#000000\"/>\n";
  if (opt.target) {
    out << "  <circle id=\"target\" cx=\"" << sx(opt.target->x) << "\" cy=\"" << sy(opt.target->y) << "\" r=\""
        << 0.3 * s << "\" fill=\"#00aa00\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace lawnsearch
