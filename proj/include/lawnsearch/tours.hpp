#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "lawnsearch/discretize.hpp"

namespace lawnsearch {

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// All-pairs shortest-path distances over a dual graph, with parent tables so
/// any pair can be realized as a walk along graph edges.
///
/// Uniform-weight graphs use breadth-first layering; weighted graphs run one
/// Dijkstra per source. Ties resolve toward the lowest node id, so the
/// realized walks are reproducible. Memory is O(N^2).
class Metric {
 public:
  explicit Metric(const DualGraph& graph) : n_(graph.node_count()) {
    if (!graph.connected()) throw std::invalid_argument("Metric: dual graph is disconnected");
    dist_.assign(n_ * n_, std::numeric_limits<double>::infinity());
    parent_.assign(n_ * n_, kNoNode);

    bool uniform = true;
    const auto& edges = graph.edges();
    for (const Edge& e : edges) uniform = uniform && e.length == edges.front().length;

    for (NodeId s = 0; s < n_; ++s) {
      double* dist = &dist_[static_cast<std::size_t>(s) * n_];
      NodeId* parent = &parent_[static_cast<std::size_t>(s) * n_];
      dist[s] = 0.0;
      parent[s] = s;
      if (uniform) {
        std::vector<NodeId> frontier{s};
        std::vector<std::size_t> hops(n_, 0);
        for (std::size_t head = 0; head < frontier.size(); ++head) {
          const NodeId v = frontier[head];
          for (auto [w, len] : graph.neighbors(v)) {
            if (parent[w] != kNoNode) continue;
            parent[w] = v;
            hops[w] = hops[v] + 1;
            dist[w] = static_cast<double>(hops[w]) * len;
            frontier.push_back(w);
          }
        }
      } else {
        using Entry = std::pair<double, NodeId>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        heap.push({0.0, s});
        std::vector<bool> done(n_, false);
        while (!heap.empty()) {
          const auto [d, v] = heap.top();
          heap.pop();
          if (done[v]) continue;
          done[v] = true;
          for (auto [w, len] : graph.neighbors(v)) {
            const double cand = d + len;
            if (cand < dist[w] || (cand == dist[w] && !done[w] && v < parent[w])) {
              dist[w] = cand;
              parent[w] = v;
              heap.push({cand, w});
            }
          }
        }
      }
    }
  }

  std::size_t size() const { return n_; }

  double operator()(NodeId a, NodeId b) const { return dist_[static_cast<std::size_t>(a) * n_ + b]; }

  /// Node sequence of a shortest walk from a to b, both endpoints included.
  std::vector<NodeId> realize(NodeId a, NodeId b) const {
    std::vector<NodeId> walk{b};
    const NodeId* parent = &parent_[static_cast<std::size_t>(a) * n_];
    for (NodeId v = b; v != a;) {
      v = parent[v];
      walk.push_back(v);
    }
    std::reverse(walk.begin(), walk.end());
    return walk;
  }

 private:
  std::size_t n_;
  std::vector<double> dist_;
  std::vector<NodeId> parent_;
};

/// Closed tour; nodes.front() is the start and the return leg is implicit.
struct Tour {
  std::vector<NodeId> nodes;
  double length = 0.0;
};

/// Open walk from nodes.front().
struct Path {
  std::vector<NodeId> nodes;
  double length = 0.0;
};

inline double cycle_length(std::span<const NodeId> order, const Metric& metric) {
  if (order.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) total += metric(order[i], order[(i + 1) % order.size()]);
  return total;
}

inline double path_length(std::span<const NodeId> order, const Metric& metric) {
  double total = 0.0;
  for (std::size_t i = 1; i < order.size(); ++i) total += metric(order[i - 1], order[i]);
  return total;
}

/// Walk along graph edges, realized from a stop sequence, with arc-length
/// prefix sums. leg_starts marks the waypoint index where each leg begins.
struct Route {
  std::vector<NodeId> waypoints;
  std::vector<double> cumulative_length;
  std::vector<std::size_t> leg_starts;

  double length() const { return cumulative_length.empty() ? 0.0 : cumulative_length.back(); }
  bool empty() const { return waypoints.empty(); }
};

/// Appends the realized walk through `stops` (and back to stops.front() when
/// `closed`) as a new leg. The route must currently end at stops.front(), or
/// be empty.
inline void append_leg(Route& route, std::span<const NodeId> stops, const Metric& metric, bool closed) {
  if (stops.empty()) return;
  if (route.waypoints.empty()) {
    route.waypoints.push_back(stops.front());
    route.cumulative_length.push_back(0.0);
  } else if (route.waypoints.back() != stops.front()) {
    throw std::invalid_argument("append_leg: leg does not start where the route ends");
  }
  route.leg_starts.push_back(route.waypoints.size() - 1);
  auto hop_to = [&](NodeId target) {
    const NodeId from = route.waypoints.back();
    if (from == target) return;
    const auto walk = metric.realize(from, target);
    for (std::size_t i = 1; i < walk.size(); ++i) {
      route.cumulative_length.push_back(route.cumulative_length.back() + metric(walk[i - 1], walk[i]));
      route.waypoints.push_back(walk[i]);
    }
  };
  for (std::size_t i = 1; i < stops.size(); ++i) hop_to(stops[i]);
  if (closed) hop_to(stops.front());
}

inline Route realize_route(std::span<const NodeId> stops, const Metric& metric, bool closed) {
  Route route;
  append_leg(route, stops, metric, closed);
  return route;
}

/// Tree grown greedily by reward. parent[i] is the parent node of nodes[i]
/// (kNoNode for the root). already_visited flags nodes that were in the
/// exclude set: they are kept for connectivity only.
struct RewardTree {
  std::vector<NodeId> nodes;
  std::vector<NodeId> parent;
  std::vector<double> attach_cost;
  std::vector<bool> already_visited;
  double cost = 0.0;
  double reward = 0.0;

  std::size_t size() const { return nodes.size(); }
};

/// Incremental greedy tree: each step adds the frontier node of maximum
/// reward, ties to the lowest node id. A node attaches through its cheapest
/// edge into the tree (ties to the lowest parent id).
class GreedyTreeGrower {
 public:
  GreedyTreeGrower(const DualGraph& graph, std::span<const double> rewards, NodeId start,
                   const std::vector<bool>& exclude = {})
      : graph_(graph), rewards_(rewards), exclude_(exclude), in_tree_(graph.node_count(), false) {
    if (rewards.size() != graph.node_count()) throw std::invalid_argument("GreedyTreeGrower: reward count mismatch");
    if (start >= graph.node_count()) throw std::invalid_argument("GreedyTreeGrower: start out of range");
    if (is_excluded(start)) throw std::invalid_argument("GreedyTreeGrower: start is excluded");
    add(start, kNoNode, 0.0);
  }

  /// Next node the grower would add and its attach cost, without adding it.
  std::optional<std::pair<NodeId, double>> peek() {
    drop_stale();
    if (frontier_.empty()) return std::nullopt;
    const NodeId v = frontier_.top().second;
    return std::pair{v, attachment(v).second};
  }

  /// Adds the next node; false when the tree spans its component.
  bool grow() {
    drop_stale();
    if (frontier_.empty()) return false;
    const NodeId v = frontier_.top().second;
    frontier_.pop();
    const auto [parent, cost] = attachment(v);
    add(v, parent, cost);
    return true;
  }

  const RewardTree& tree() const { return tree_; }

 private:
  struct Priority {
    bool operator()(const std::pair<double, NodeId>& a, const std::pair<double, NodeId>& b) const {
      if (a.first != b.first) return a.first < b.first;
      return a.second > b.second;
    }
  };

  bool is_excluded(NodeId v) const { return v < exclude_.size() && exclude_[v]; }

  void drop_stale() {
    while (!frontier_.empty() && in_tree_[frontier_.top().second]) frontier_.pop();
  }

  std::pair<NodeId, double> attachment(NodeId v) const {
    NodeId best = kNoNode;
    double best_len = std::numeric_limits<double>::infinity();
    for (auto [w, len] : graph_.neighbors(v)) {
      if (in_tree_[w] && len < best_len) {
        best = w;
        best_len = len;
      }
    }
    return {best, best_len};
  }

  void add(NodeId v, NodeId parent, double cost) {
    in_tree_[v] = true;
    tree_.nodes.push_back(v);
    tree_.parent.push_back(parent);
    tree_.attach_cost.push_back(cost);
    tree_.already_visited.push_back(is_excluded(v));
    tree_.cost += cost;
    tree_.reward += rewards_[v];
    for (auto [w, len] : graph_.neighbors(v)) {
      if (!in_tree_[w]) frontier_.push({rewards_[w], w});
    }
  }

  const DualGraph& graph_;
  std::span<const double> rewards_;
  std::vector<bool> exclude_;
  std::vector<bool> in_tree_;
  std::priority_queue<std::pair<double, NodeId>, std::vector<std::pair<double, NodeId>>, Priority> frontier_;
  RewardTree tree_;
};

/// Greedy reward tree with at most `node_cap` nodes.
inline RewardTree greedy_reward_tree(const DualGraph& graph, std::span<const double> rewards, NodeId start,
                                     std::size_t node_cap, const std::vector<bool>& exclude = {}) {
  if (node_cap < 1) throw std::invalid_argument("greedy_reward_tree: node_cap must be at least 1");
  GreedyTreeGrower grower(graph, rewards, start, exclude);
  while (grower.tree().size() < node_cap && grower.grow()) {
  }
  return grower.tree();
}

/// Greedy reward tree grown while its total edge cost stays within `cost_cap`.
inline RewardTree greedy_reward_tree_by_cost(const DualGraph& graph, std::span<const double> rewards, NodeId start,
                                             double cost_cap, const std::vector<bool>& exclude = {}) {
  GreedyTreeGrower grower(graph, rewards, start, exclude);
  for (;;) {
    const auto next = grower.peek();
    if (!next || grower.tree().cost + next->second > cost_cap + 1e-9) break;
    grower.grow();
  }
  return grower.tree();
}

/// Depth-first traversal of the tree (children in id order) with repeated
/// nodes shortcut. Its length never exceeds twice the tree cost.
inline Tour double_tree_tour(const RewardTree& tree, const Metric& metric) {
  Tour tour;
  if (tree.nodes.empty()) return tour;
  std::vector<std::vector<NodeId>> children(tree.nodes.size());
  std::vector<std::size_t> slot(metric.size(), 0);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) slot[tree.nodes[i]] = i;
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) children[slot[tree.parent[i]]].push_back(tree.nodes[i]);
  for (auto& c : children) std::sort(c.begin(), c.end(), std::greater<>());

  std::vector<NodeId> stack{tree.nodes.front()};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    tour.nodes.push_back(v);
    for (NodeId c : children[slot[v]]) stack.push_back(c);
  }
  tour.length = cycle_length(tour.nodes, metric);
  return tour;
}

inline constexpr double kImprovementEpsilon = 1e-10;

/// 2-opt to a local optimum, keeping order.front() in place. For closed
/// tours every exchange of two edges is examined; for open paths the final
/// edge may also be dropped (tail reversal). First-improvement, deterministic.
inline void two_opt(std::vector<NodeId>& order, const Metric& metric, bool closed) {
  const std::size_t n = order.size();
  if (n < 3 || (closed && n < 4)) return;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const NodeId a = order[i - 1];
      for (std::size_t k = i + 1; k < n; ++k) {
        const NodeId b = order[i];
        const NodeId c = order[k];
        double delta = metric(a, c) - metric(a, b);
        if (k + 1 < n) {
          const NodeId d = order[k + 1];
          delta += metric(b, d) - metric(c, d);
        } else if (closed) {
          const NodeId d = order[0];
          delta += metric(b, d) - metric(c, d);
        }
        if (delta < -kImprovementEpsilon) {
          std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(k) + 1);
          improved = true;
        }
      }
    }
  }
}

namespace detail {

inline std::vector<NodeId> unique_nodes(std::span<const NodeId> nodes, NodeId start) {
  std::vector<NodeId> uniq(nodes.begin(), nodes.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  if (!std::binary_search(uniq.begin(), uniq.end(), start)) throw std::invalid_argument("start is not in the node set");
  return uniq;
}

// Nearest-neighbor order from start; ties go to the lowest id.
inline std::vector<NodeId> nearest_neighbor_order(std::span<const NodeId> nodes, const Metric& metric, NodeId start) {
  std::vector<NodeId> remaining;
  for (NodeId v : nodes) {
    if (v != start) remaining.push_back(v);
  }
  std::vector<NodeId> order{start};
  while (!remaining.empty()) {
    const NodeId cur = order.back();
    std::size_t best = 0;
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      if (metric(cur, remaining[i]) < metric(cur, remaining[best])) best = i;
    }
    order.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return order;
}

}  // namespace detail

/// Closed tour through `nodes` from `start`: nearest neighbor, then 2-opt.
inline Tour tsp_tour(std::span<const NodeId> nodes, const Metric& metric, NodeId start) {
  const auto uniq = detail::unique_nodes(nodes, start);
  Tour tour{detail::nearest_neighbor_order(uniq, metric, start), 0.0};
  two_opt(tour.nodes, metric, true);
  tour.length = cycle_length(tour.nodes, metric);
  return tour;
}

/// Open path through `nodes` beginning at `start`: nearest neighbor, then 2-opt.
inline Path tsp_path(std::span<const NodeId> nodes, const Metric& metric, NodeId start) {
  const auto uniq = detail::unique_nodes(nodes, start);
  Path path{detail::nearest_neighbor_order(uniq, metric, start), 0.0};
  two_opt(path.nodes, metric, false);
  path.length = path_length(path.nodes, metric);
  return path;
}

}  // namespace lawnsearch
