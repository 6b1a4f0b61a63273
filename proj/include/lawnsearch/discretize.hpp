#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lawnsearch/geometry.hpp"

namespace lawnsearch {

using NodeId = std::uint32_t;

enum class GridKind { square, hexagonal };
enum class Motion { rectilinear, arbitrary, triangular };

/// Pixels with clipped area at or below this are treated as tangent and dropped.
inline constexpr double kRewardFloor = 1e-12;

inline const double kSqrt2 = std::sqrt(2.0);
inline const double kSqrt3 = std::sqrt(3.0);
/// Area of a regular hexagon of diameter 2.
inline const double kHexagonArea = 1.5 * kSqrt3;

/// Integer lattice coordinates: (column, row) for square pixels, axial (q, r)
/// for hexagons.
using Cell = std::array<int, 2>;

/// Pixel set with rewards. Rewards are strictly positive except for bridge
/// pixels (reward exactly 0) that keep the dual graph connected.
struct PixelGrid {
  GridKind kind = GridKind::square;
  std::vector<Point> centers;
  std::vector<double> rewards;
  std::vector<Cell> cells;
  Point origin_shift;
  std::size_t start_index = 0;

  std::size_t size() const { return centers.size(); }
  double total_reward() const { return std::accumulate(rewards.begin(), rewards.end(), 0.0); }
  std::size_t bridge_count() const {
    return static_cast<std::size_t>(std::count(rewards.begin(), rewards.end(), 0.0));
  }
};

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  double length = 0.0;
};

/// Dual graph over pixel centers. Edges are stored once with from < to;
/// adjacency lists hold both directions sorted by neighbor id.
class DualGraph {
 public:
  DualGraph() = default;
  DualGraph(std::size_t node_count, std::vector<Edge> edges, Motion motion)
      : node_count_(node_count), edges_(std::move(edges)), motion_(motion), adjacency_(node_count) {
    for (const Edge& e : edges_) {
      if (e.from >= node_count_ || e.to >= node_count_ || e.from == e.to) {
        throw std::invalid_argument("DualGraph: edge endpoint out of range or self loop");
      }
      adjacency_[e.from].push_back({e.to, e.length});
      adjacency_[e.to].push_back({e.from, e.length});
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  }

  std::size_t node_count() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Motion motion() const { return motion_; }
  std::span<const std::pair<NodeId, double>> neighbors(NodeId v) const { return adjacency_[v]; }

  bool adjacent(NodeId a, NodeId b) const {
    const auto& adj = adjacency_[a];
    auto it = std::lower_bound(adj.begin(), adj.end(), std::pair<NodeId, double>{b, -1.0});
    return it != adj.end() && it->first == b;
  }

  double min_edge_length() const {
    double best = std::numeric_limits<double>::infinity();
    for (const Edge& e : edges_) best = std::min(best, e.length);
    return best;
  }

  bool connected() const {
    if (node_count_ == 0) return true;
    std::vector<bool> seen(node_count_, false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (auto [w, len] : adjacency_[v]) {
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == node_count_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  Motion motion_ = Motion::rectilinear;
  std::vector<std::vector<std::pair<NodeId, double>>> adjacency_;
};

namespace detail {

inline constexpr std::array<Cell, 4> kSquareSideOffsets{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
inline constexpr std::array<Cell, 6> kHexOffsets{{{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

inline Point square_center(Point start, Cell c) { return {start.x + c[0], start.y + c[1]}; }

// Flat-top layout: adjacent centers are sqrt(3) apart.
inline Point hex_center(Point start, Cell c) {
  return {start.x + 1.5 * c[0], start.y + kSqrt3 * (c[1] + 0.5 * c[0])};
}

inline std::span<const Cell> lattice_offsets(GridKind kind) {
  if (kind == GridKind::square) return kSquareSideOffsets;
  return kHexOffsets;
}

inline Cell add(Cell a, Cell b) { return {a[0] + b[0], a[1] + b[1]}; }

// Adds zero-reward cells along shortest lattice chains until every cell is
// reachable from `start`. Searches stay inside the cells' bounding box grown
// by one, which always contains a connecting chain.
inline void bridge_components(std::map<Cell, double>& cells, Cell start, GridKind kind) {
  const auto offsets = lattice_offsets(kind);
  int lo0 = start[0], hi0 = start[0], lo1 = start[1], hi1 = start[1];
  for (const auto& [c, r] : cells) {
    lo0 = std::min(lo0, c[0]);
    hi0 = std::max(hi0, c[0]);
    lo1 = std::min(lo1, c[1]);
    hi1 = std::max(hi1, c[1]);
  }
  --lo0, --lo1, ++hi0, ++hi1;
  auto in_box = [&](Cell c) { return c[0] >= lo0 && c[0] <= hi0 && c[1] >= lo1 && c[1] <= hi1; };

  for (;;) {
    // Component containing start.
    std::map<Cell, bool> reached;
    std::deque<Cell> queue{start};
    reached[start] = true;
    while (!queue.empty()) {
      const Cell c = queue.front();
      queue.pop_front();
      for (Cell d : offsets) {
        const Cell nb = add(c, d);
        if (cells.contains(nb) && !reached.contains(nb)) {
          reached[nb] = true;
          queue.push_back(nb);
        }
      }
    }
    if (reached.size() == cells.size()) return;

    // Multi-source BFS through empty lattice cells to the nearest unreached cell.
    std::map<Cell, Cell> parent;
    for (const auto& [c, flag] : reached) {
      parent[c] = c;
      queue.push_back(c);
    }
    bool linked = false;
    while (!queue.empty() && !linked) {
      const Cell c = queue.front();
      queue.pop_front();
      for (Cell d : offsets) {
        const Cell nb = add(c, d);
        if (!in_box(nb) || parent.contains(nb)) continue;
        parent[nb] = c;
        if (cells.contains(nb)) {
          for (Cell walk = c; !reached.contains(walk); walk = parent[walk]) cells[walk] = 0.0;
          linked = true;
          break;
        }
        queue.push_back(nb);
      }
    }
    if (!linked) throw std::logic_error("bridge_components: no connecting chain found");
  }
}

template <typename CenterFn>
PixelGrid assemble_grid(GridKind kind, const std::map<Cell, double>& cells, Cell start_cell, Point origin_shift,
                        CenterFn center_of) {
  // Row-major order (row, then column) for deterministic node ids.
  std::vector<std::pair<Cell, double>> ordered(cells.begin(), cells.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return std::pair(a.first[1], a.first[0]) < std::pair(b.first[1], b.first[0]);
  });
  PixelGrid grid;
  grid.kind = kind;
  for (const auto& [c, r] : ordered) {
    if (c == start_cell) grid.start_index = grid.cells.size();
    grid.cells.push_back(c);
    grid.centers.push_back(center_of(c));
    grid.rewards.push_back(r);
  }
  grid.origin_shift = origin_shift;
  return grid;
}

}  // namespace detail

/// Vertices (CCW) of the unit square pixel centered at `c`.
inline std::array<Point, 4> square_pixel(Point c) {
  return {{{c.x - 0.5, c.y - 0.5}, {c.x + 0.5, c.y - 0.5}, {c.x + 0.5, c.y + 0.5}, {c.x - 0.5, c.y + 0.5}}};
}

/// Vertices (CCW) of the flat-top hexagon of diameter 2 centered at `c`.
inline std::array<Point, 6> hex_pixel(Point c) {
  std::array<Point, 6> v{};
  for (int k = 0; k < 6; ++k) {
    const double angle = k * (M_PI / 3.0);
    v[k] = {c.x + std::cos(angle), c.y + std::sin(angle)};
  }
  return v;
}

/// Polygon of pixel `i` of `grid`.
inline std::vector<Point> pixel_polygon(const PixelGrid& grid, std::size_t i) {
  if (grid.kind == GridKind::square) {
    const auto v = square_pixel(grid.centers[i]);
    return {v.begin(), v.end()};
  }
  const auto v = hex_pixel(grid.centers[i]);
  return {v.begin(), v.end()};
}

namespace detail {

// Interior pixels come out of the fan clipping with rounding noise; snap them
// to the exact pixel area so reward ties compare equal.
inline double snap_reward(double r, double pixel_area) {
  if (std::abs(r - pixel_area) <= 1e-12 * pixel_area) return pixel_area;
  return r;
}

}  // namespace detail

/// Unit-square pixels on the lattice whose centers include `region.start`.
/// Throws std::invalid_argument for an empty region.
inline PixelGrid build_square_grid(const PolygonalRegion& region) {
  if (region_area(region) <= kRewardFloor) throw std::invalid_argument("build_square_grid: region has zero area");
  const Point s = region.start;
  const BoundingBox box = region.bounds();
  const int i_lo = static_cast<int>(std::floor(box.min_x - s.x + 0.5)) - 1;
  const int i_hi = static_cast<int>(std::ceil(box.max_x - s.x - 0.5)) + 1;
  const int j_lo = static_cast<int>(std::floor(box.min_y - s.y + 0.5)) - 1;
  const int j_hi = static_cast<int>(std::ceil(box.max_y - s.y - 0.5)) + 1;

  std::map<Cell, double> cells;
  for (int j = j_lo; j <= j_hi; ++j) {
    for (int i = i_lo; i <= i_hi; ++i) {
      const Cell c{i, j};
      const auto poly = square_pixel(detail::square_center(s, c));
      const double r = detail::snap_reward(clip_pixel(region, poly), 1.0);
      if (r > kRewardFloor) cells[c] = r;
    }
  }
  const Cell start_cell{0, 0};
  if (!cells.contains(start_cell)) cells[start_cell] = 0.0;
  detail::bridge_components(cells, start_cell, GridKind::square);
  // Integer-grid offset that puts s at a pixel center.
  const Point shift{s.x - 0.5 - std::floor(s.x - 0.5), s.y - 0.5 - std::floor(s.y - 0.5)};
  return detail::assemble_grid(GridKind::square, cells, start_cell, shift,
                               [&](Cell c) { return detail::square_center(s, c); });
}

/// Square grid from explicit lattice cells and rewards (cell (0,0) centered at
/// `origin`). Used for synthetic instances; rewards may be any non-negative values.
inline PixelGrid make_square_grid(std::span<const Cell> cells, std::span<const double> rewards, Cell start_cell,
                                  Point origin = {0.0, 0.0}) {
  if (cells.size() != rewards.size()) throw std::invalid_argument("make_square_grid: size mismatch");
  std::map<Cell, double> table;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (rewards[i] < 0.0) throw std::invalid_argument("make_square_grid: negative reward");
    table[cells[i]] = rewards[i];
  }
  if (!table.contains(start_cell)) throw std::invalid_argument("make_square_grid: start cell missing");
  const Point shift{origin.x - 0.5 - std::floor(origin.x - 0.5), origin.y - 0.5 - std::floor(origin.y - 0.5)};
  return detail::assemble_grid(GridKind::square, table, start_cell, shift,
                               [&](Cell c) { return Point{origin.x + c[0], origin.y + c[1]}; });
}

/// Side-adjacency edges of length 1, plus sqrt(2) diagonals for arbitrary motion.
inline DualGraph build_dual_graph(const PixelGrid& grid, Motion motion) {
  if (grid.kind != GridKind::square) throw std::invalid_argument("build_dual_graph: grid must be square");
  if (motion == Motion::triangular) throw std::invalid_argument("build_dual_graph: triangular motion needs a hex grid");
  std::map<Cell, NodeId> index;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) index[grid.cells[i]] = static_cast<NodeId>(i);

  std::vector<Cell> forward{{1, 0}, {0, 1}};
  if (motion == Motion::arbitrary) {
    forward.push_back({1, 1});
    forward.push_back({1, -1});
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    for (Cell d : forward) {
      auto it = index.find(detail::add(grid.cells[i], d));
      if (it == index.end()) continue;
      const double len = (d[0] != 0 && d[1] != 0) ? kSqrt2 : 1.0;
      const NodeId a = static_cast<NodeId>(i), b = it->second;
      edges.push_back({std::min(a, b), std::max(a, b), len});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return std::pair(x.from, x.to) < std::pair(y.from, y.to); });
  return DualGraph(grid.size(), std::move(edges), motion);
}

/// Hexagonal pixels of diameter 2 (for the unit-circle cutter) and their
/// triangular dual graph. Throws std::invalid_argument for an empty region.
inline std::pair<PixelGrid, DualGraph> build_hex_grid(const PolygonalRegion& region) {
  if (region_area(region) <= kRewardFloor) throw std::invalid_argument("build_hex_grid: region has zero area");
  const Point s = region.start;
  const BoundingBox box = region.bounds();
  const int q_lo = static_cast<int>(std::floor((box.min_x - s.x) / 1.5)) - 1;
  const int q_hi = static_cast<int>(std::ceil((box.max_x - s.x) / 1.5)) + 1;

  std::map<Cell, double> cells;
  for (int q = q_lo; q <= q_hi; ++q) {
    const int r_lo = static_cast<int>(std::floor((box.min_y - s.y) / kSqrt3 - 0.5 * q)) - 1;
    const int r_hi = static_cast<int>(std::ceil((box.max_y - s.y) / kSqrt3 - 0.5 * q)) + 1;
    for (int r = r_lo; r <= r_hi; ++r) {
      const Cell c{q, r};
      const auto poly = hex_pixel(detail::hex_center(s, c));
      const double reward = detail::snap_reward(clip_pixel(region, poly), kHexagonArea);
      if (reward > kRewardFloor) cells[c] = reward;
    }
  }
  const Cell start_cell{0, 0};
  if (!cells.contains(start_cell)) cells[start_cell] = 0.0;
  detail::bridge_components(cells, start_cell, GridKind::hexagonal);
  // The hex lattice is anchored at s itself.
  PixelGrid grid = detail::assemble_grid(GridKind::hexagonal, cells, start_cell, s,
                                         [&](Cell c) { return detail::hex_center(s, c); });

  std::map<Cell, NodeId> index;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) index[grid.cells[i]] = static_cast<NodeId>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    for (Cell d : detail::kHexOffsets) {
      auto it = index.find(detail::add(grid.cells[i], d));
      if (it == index.end() || it->second <= i) continue;
      edges.push_back({static_cast<NodeId>(i), it->second, kSqrt3});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return std::pair(x.from, x.to) < std::pair(y.from, y.to); });
  DualGraph graph(grid.size(), std::move(edges), Motion::triangular);
  return {std::move(grid), std::move(graph)};
}

}  // namespace lawnsearch
