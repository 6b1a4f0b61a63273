#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lawnsearch/discretize.hpp"
#include "lawnsearch/tours.hpp"

namespace lawnsearch {

/// How the exponential tree heuristic caps its j-th tree: by node count
/// min(2^j, N), or by total edge cost 2^j.
enum class CapMode { nodes, cost };

struct TreeSearchResult {
  Route route;
  std::vector<std::size_t> tree_sizes;  // one entry per iteration j = 0, 1, ...
};

/// Exponential tree heuristic.
///
/// For j = 0, 1, ...: regrow the greedy reward tree from the start up to the
/// j-th cap, tour the tree nodes not visited by earlier iterations (the start
/// is always kept), traverse that tour and mark the tree visited. Stops once
/// every node has been visited. j advances once per outer iteration.
inline TreeSearchResult exponential_tree_heuristic(const DualGraph& graph, const PixelGrid& grid, const Metric& metric,
                                                   NodeId start, CapMode cap_mode = CapMode::nodes) {
  const std::size_t n = grid.size();
  if (graph.node_count() != n) throw std::invalid_argument("exponential_tree_heuristic: graph/grid size mismatch");
  TreeSearchResult result;
  result.route.waypoints.push_back(start);
  result.route.cumulative_length.push_back(0.0);

  std::vector<bool> visited(n, false);
  std::size_t visited_count = 0;
  for (int j = 0; visited_count < n; ++j) {
    if (j > 62) throw std::logic_error("exponential_tree_heuristic: cap stopped growing");
    std::vector<bool> exclude = visited;
    exclude[start] = false;

    RewardTree tree;
    if (cap_mode == CapMode::nodes) {
      const std::size_t cap = std::min<std::size_t>(std::size_t{1} << j, n);
      tree = greedy_reward_tree(graph, grid.rewards, start, cap, exclude);
    } else {
      tree = greedy_reward_tree_by_cost(graph, grid.rewards, start, std::ldexp(1.0, j), exclude);
    }
    result.tree_sizes.push_back(tree.size());

    std::vector<NodeId> stops;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      if (!tree.already_visited[i]) stops.push_back(tree.nodes[i]);
    }
    if (stops.size() > 1) {
      const Tour tour = tsp_tour(stops, metric, start);
      append_leg(result.route, tour.nodes, metric, true);
    }
    for (NodeId v : tree.nodes) {
      if (!visited[v]) {
        visited[v] = true;
        ++visited_count;
      }
    }
  }
  return result;
}

inline constexpr double kDefaultEpsilon = 0.01;

/// Sizes ⌊εN/(1+ε)^i⌋ for i = 1, 2, ... while positive, clipped so their
/// sum stays within N.
inline std::vector<std::size_t> latency_block_sizes(std::size_t n, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("latency_block_sizes: epsilon must be positive");
  std::vector<std::size_t> sizes;
  std::size_t used = 0;
  double denom = 1.0 + epsilon;
  while (used < n) {
    const auto b = static_cast<std::size_t>(std::floor(epsilon * static_cast<double>(n) / denom));
    if (b == 0) break;
    sizes.push_back(std::min(b, n - used));
    used += sizes.back();
    denom *= 1.0 + epsilon;
  }
  return sizes;
}

/// Minimum latency heuristic.
///
/// Takes the TSP tour over all pixel centers, then replaces its first
/// ⌊εN/(1+ε)⌋ nodes by a TSP path over them, the next ⌊εN/(1+ε)^2⌋ by a TSP
/// path starting where the previous one ended, and so on until the block size
/// floors to zero. The remaining nodes keep the tour order. Each block is
/// one route leg.
inline Route min_latency_heuristic(const DualGraph& graph, const PixelGrid& grid, const Metric& metric, NodeId start,
                                   double epsilon = kDefaultEpsilon) {
  const std::size_t n = grid.size();
  if (graph.node_count() != n) throw std::invalid_argument("min_latency_heuristic: graph/grid size mismatch");
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  const Tour tour = tsp_tour(all, metric, start);

  Route route;
  route.waypoints.push_back(start);
  route.cumulative_length.push_back(0.0);
  std::size_t pos = 0;
  NodeId current = start;
  for (std::size_t b : latency_block_sizes(n, epsilon)) {
    std::vector<NodeId> block{current};
    block.insert(block.end(), tour.nodes.begin() + static_cast<std::ptrdiff_t>(pos),
                 tour.nodes.begin() + static_cast<std::ptrdiff_t>(pos + b));
    const Path path = tsp_path(block, metric, current);
    append_leg(route, path.nodes, metric, false);
    current = path.nodes.back();
    pos += b;
  }
  if (pos < n) {
    std::vector<NodeId> rest{current};
    rest.insert(rest.end(), tour.nodes.begin() + static_cast<std::ptrdiff_t>(pos), tour.nodes.end());
    append_leg(route, rest, metric, false);
  }
  return route;
}

}  // namespace lawnsearch
