#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lawnsearch {

/// Tolerance for collinearity and on-boundary tests, in region units.
inline constexpr double kGeometryEpsilon = 1e-12;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

/// Closed vertex loop; the last vertex connects back to the first.
using Ring = std::vector<Point>;

struct BoundingBox {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void extend(Point p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  bool overlaps(const BoundingBox& o) const {
    return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
  }
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

inline BoundingBox bounding_box(std::span<const Point> pts) {
  BoundingBox box;
  for (Point p : pts) box.extend(p);
  return box;
}

/// Shoelace sum; positive for counterclockwise rings.
inline double signed_area(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(ring[i], ring[(i + 1) % n]);
  }
  return 0.5 * twice;
}

/// Polygon with holes plus the robot's starting point. Use make_region() to
/// build one; it normalizes orientation (outer CCW, holes CW) and validates.
struct PolygonalRegion {
  Ring outer;
  std::vector<Ring> holes;
  Point start;

  BoundingBox bounds() const { return bounding_box(outer); }
  std::size_t vertex_count() const {
    std::size_t n = outer.size();
    for (const auto& h : holes) n += h.size();
    return n;
  }
};

namespace detail {

inline int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({1.0, norm(b - a), norm(c - a)});
  if (std::abs(v) <= kGeometryEpsilon * scale) return 0;
  return v > 0 ? 1 : -1;
}

inline bool on_segment(Point p, Point a, Point b) {
  return std::min(a.x, b.x) - kGeometryEpsilon <= p.x && p.x <= std::max(a.x, b.x) + kGeometryEpsilon &&
         std::min(a.y, b.y) - kGeometryEpsilon <= p.y && p.y <= std::max(a.y, b.y) + kGeometryEpsilon;
}

// Closed segments; touching counts as intersecting.
inline bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

inline double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

inline bool on_ring_boundary(std::span<const Point> ring, Point p) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, ring[i], ring[(i + 1) % n]) <= kGeometryEpsilon) return true;
  }
  return false;
}

// Even-odd crossing test; boundary points are unspecified.
inline bool ring_crossing_parity(std::span<const Point> ring, Point p) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = ring[i];
    const Point b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

inline bool ring_is_simple(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ring[i], b = ring[(i + 1) % n];
    if (distance(a, b) <= kGeometryEpsilon) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const Point c = ring[j], d = ring[(j + 1) % n];
      if (adjacent) {
        // Adjacent edges may only share their common vertex, so reject folds back.
        const Point shared = j == i + 1 ? b : a;
        const Point other_first = j == i + 1 ? a : b;
        const Point other_second = j == i + 1 ? d : c;
        if (orientation(other_first, shared, other_second) == 0 &&
            dot(other_first - shared, other_second - shared) > 0.0) {
          return false;
        }
        continue;
      }
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

inline bool rings_cross(std::span<const Point> r1, std::span<const Point> r2) {
  for (std::size_t i = 0; i < r1.size(); ++i) {
    for (std::size_t j = 0; j < r2.size(); ++j) {
      if (segments_intersect(r1[i], r1[(i + 1) % r1.size()], r2[j], r2[(j + 1) % r2.size()])) return true;
    }
  }
  return false;
}

// Keeps the part of `poly` left of the directed line a->b (Sutherland-Hodgman step).
inline void clip_half_plane(const std::vector<Point>& poly, Point a, Point b, std::vector<Point>& out) {
  out.clear();
  const std::size_t n = poly.size();
  if (n == 0) return;
  const Point dir = b - a;
  for (std::size_t i = 0; i < n; ++i) {
    const Point cur = poly[i];
    const Point nxt = poly[(i + 1) % n];
    const double sc = cross(dir, cur - a);
    const double sn = cross(dir, nxt - a);
    if (sc >= 0.0) out.push_back(cur);
    if ((sc >= 0.0) != (sn >= 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
}

// Area of convex ∩ triangle(o, a, b), where (o, a, b) is counterclockwise.
inline double convex_triangle_overlap(std::span<const Point> convex, Point o, Point a, Point b,
                                      std::vector<Point>& buf1, std::vector<Point>& buf2) {
  buf1.assign(convex.begin(), convex.end());
  clip_half_plane(buf1, o, a, buf2);
  clip_half_plane(buf2, a, b, buf1);
  clip_half_plane(buf1, b, o, buf2);
  return std::abs(signed_area(buf2));
}

}  // namespace detail

/// Builds a validated region. Throws std::invalid_argument describing the
/// first violated invariant.
inline PolygonalRegion make_region(Ring outer, std::vector<Ring> holes, Point start) {
  auto check_ring = [](const Ring& ring, const std::string& what) {
    if (ring.size() < 3) throw std::invalid_argument(what + ": ring needs at least 3 vertices");
    for (Point p : ring) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::invalid_argument(what + ": non-finite coordinate");
    }
    if (std::abs(signed_area(ring)) <= kGeometryEpsilon) throw std::invalid_argument(what + ": ring has zero area");
    if (!detail::ring_is_simple(ring)) throw std::invalid_argument(what + ": ring is not simple");
  };

  check_ring(outer, "outer");
  if (signed_area(outer) < 0.0) std::reverse(outer.begin(), outer.end());

  for (std::size_t h = 0; h < holes.size(); ++h) {
    const std::string what = "holes[" + std::to_string(h) + "]";
    check_ring(holes[h], what);
    if (signed_area(holes[h]) > 0.0) std::reverse(holes[h].begin(), holes[h].end());
    if (detail::rings_cross(outer, holes[h]) || !detail::ring_crossing_parity(outer, holes[h].front())) {
      throw std::invalid_argument(what + ": hole is not strictly inside the outer ring");
    }
    for (std::size_t g = 0; g < h; ++g) {
      if (detail::rings_cross(holes[g], holes[h]) || detail::ring_crossing_parity(holes[g], holes[h].front()) ||
          detail::ring_crossing_parity(holes[h], holes[g].front())) {
        throw std::invalid_argument(what + ": hole overlaps holes[" + std::to_string(g) + "]");
      }
    }
  }
  if (!std::isfinite(start.x) || !std::isfinite(start.y)) throw std::invalid_argument("start: non-finite coordinate");

  PolygonalRegion region{std::move(outer), std::move(holes), start};
  // Closed-region containment, inlined to avoid a forward declaration.
  bool inside = detail::on_ring_boundary(region.outer, start);
  for (const auto& h : region.holes) inside = inside || detail::on_ring_boundary(h, start);
  if (!inside) {
    bool parity = detail::ring_crossing_parity(region.outer, start);
    for (const auto& h : region.holes) parity = parity != detail::ring_crossing_parity(h, start);
    inside = parity;
  }
  if (!inside) throw std::invalid_argument("start: point lies outside the region");
  return region;
}

/// |R|: outer ring area minus hole areas.
inline double region_area(const PolygonalRegion& region) {
  double area = std::abs(signed_area(region.outer));
  for (const auto& h : region.holes) area -= std::abs(signed_area(h));
  return area;
}

/// True iff `p` lies in the closed region (boundary counts as inside).
inline bool contains_point(const PolygonalRegion& region, Point p) {
  if (detail::on_ring_boundary(region.outer, p)) return true;
  for (const auto& h : region.holes) {
    if (detail::on_ring_boundary(h, p)) return true;
  }
  if (!detail::ring_crossing_parity(region.outer, p)) return false;
  for (const auto& h : region.holes) {
    if (detail::ring_crossing_parity(h, p)) return false;
  }
  return true;
}

/// Area of `convex ∩ region` for a convex polygon (vertices in either order).
///
/// Each ring is fanned into triangles from the pixel centroid; each triangle
/// is clipped against the convex polygon and its area added with the sign of
/// the triangle's orientation. Outer rings are CCW and holes CW, so the signed
/// sum over all rings is exactly the area inside the region.
inline double clip_pixel(const PolygonalRegion& region, std::span<const Point> convex) {
  if (convex.size() < 3) return 0.0;
  std::vector<Point> pixel(convex.begin(), convex.end());
  if (signed_area(pixel) < 0.0) std::reverse(pixel.begin(), pixel.end());
  const double pixel_area = signed_area(pixel);
  const BoundingBox pixel_box = bounding_box(pixel);

  Point origin{0.0, 0.0};
  for (Point p : pixel) origin = origin + p;
  origin = (1.0 / static_cast<double>(pixel.size())) * origin;

  std::vector<Point> buf1, buf2;
  buf1.reserve(16);
  buf2.reserve(16);
  double total = 0.0;
  auto accumulate_ring = [&](const Ring& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      Point a = ring[i];
      Point b = ring[(i + 1) % n];
      BoundingBox tri_box;
      tri_box.extend(origin);
      tri_box.extend(a);
      tri_box.extend(b);
      if (!tri_box.overlaps(pixel_box)) continue;
      const double orient = cross(a - origin, b - origin);
      if (orient == 0.0) continue;
      double sign = 1.0;
      if (orient < 0.0) {
        std::swap(a, b);
        sign = -1.0;
      }
      total += sign * detail::convex_triangle_overlap(pixel, origin, a, b, buf1, buf2);
    }
  };
  accumulate_ring(region.outer);
  for (const auto& h : region.holes) accumulate_ring(h);
  return std::clamp(total, 0.0, pixel_area);
}

/// Maps a 64-bit generator output to [0, 1) using its top 53 bits.
inline double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline constexpr int kSampleAttemptCap = 1'000'000;

/// A point distributed uniformly over the region, by rejection sampling in
/// the bounding box. Deterministic for a given seed. Throws std::runtime_error
/// after kSampleAttemptCap rejections (degenerate region).
inline Point sample_uniform(const PolygonalRegion& region, std::uint64_t seed) {
  const BoundingBox box = region.bounds();
  std::mt19937_64 engine(seed);
  for (int attempt = 0; attempt < kSampleAttemptCap; ++attempt) {
    const Point p{box.min_x + unit_interval(engine()) * box.width(),
                  box.min_y + unit_interval(engine()) * box.height()};
    if (contains_point(region, p)) return p;
  }
  throw std::runtime_error("sample_uniform: no point accepted within the attempt cap; region is degenerate");
}

}  // namespace lawnsearch
