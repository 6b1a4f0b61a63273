#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace lawnsearch;

namespace {

struct Instance {
  PixelGrid grid;
  DualGraph graph;
};

Instance lattice(int w, int h, Cell start = {0, 0}) {
  std::vector<Cell> cells;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) cells.push_back({x, y});
  }
  PixelGrid grid = make_square_grid(cells, std::vector<double>(cells.size(), 1.0), start);
  DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
  return {std::move(grid), std::move(graph)};
}

double expected_time(const Route& r, const Instance& inst) {
  return expected_detection_time(coverage_profile(r, inst.grid, inst.graph)).value;
}

}  // namespace

TEST(ExponentialTree, SingleNode) {
  const auto inst = lattice(1, 1);
  const Metric m(inst.graph);
  const auto res = exponential_tree_heuristic(inst.graph, inst.grid, m, 0);
  EXPECT_EQ(res.route.length(), 0.0);
  EXPECT_EQ(res.route.waypoints, (std::vector<NodeId>{0}));
}

TEST(ExponentialTree, CapSequenceOnThreeByThree) {
  const auto inst = lattice(3, 3, {1, 1});
  const Metric m(inst.graph);
  const auto res = exponential_tree_heuristic(inst.graph, inst.grid, m, inst.grid.start_index);
  EXPECT_EQ(res.tree_sizes, (std::vector<std::size_t>{1, 2, 4, 8, 9}));
}

TEST(ExponentialTree, StripWithinThreeTimesOptimal) {
  const auto inst = lattice(4, 1);
  const Metric m(inst.graph);
  const auto res = exponential_tree_heuristic(inst.graph, inst.grid, m, 0);
  const double opt = oracle::optimal_expected_time(oracle::lattice_distances(inst.grid), inst.grid.rewards, 0);
  EXPECT_DOUBLE_EQ(opt, 1.5);
  EXPECT_LE(expected_time(res.route, inst), 3.0 * opt);
}

TEST(ExponentialTree, CapSequenceAndCoverageOnRegions) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const PixelGrid grid = build_square_grid(seed % 2 ? generate_rectilinear_region(seed) : oracle::star_region(seed, true));
    const DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
    const Metric m(graph);
    const NodeId start = grid.start_index;
    const auto res = exponential_tree_heuristic(graph, grid, m, start);
    for (std::size_t j = 0; j < res.tree_sizes.size(); ++j) {
      EXPECT_EQ(res.tree_sizes[j], std::min<std::size_t>(std::size_t{1} << j, grid.size()));
    }
    const auto profile = coverage_profile(res.route, grid, graph);
    EXPECT_TRUE(profile.complete());
    EXPECT_NEAR(profile.final_covered(), grid.total_reward(), 1e-9);

    // Every node of the j-th tree is reached by the end of the j-th traversal.
    std::vector<bool> visited(grid.size(), false);
    std::size_t leg = 0;
    double reached_by = 0.0;
    for (std::size_t j = 0; j < res.tree_sizes.size(); ++j) {
      const RewardTree t = greedy_reward_tree(graph, grid.rewards, start, res.tree_sizes[j]);
      bool has_new = false;
      for (NodeId v : t.nodes) has_new = has_new || (v != start && !visited[v]);
      if (has_new) {
        const std::size_t end = leg + 1 < res.route.leg_starts.size() ? res.route.leg_starts[leg + 1]
                                                                       : res.route.waypoints.size() - 1;
        reached_by = res.route.cumulative_length[end];
        ++leg;
      }
      for (NodeId v : t.nodes) {
        EXPECT_LE(profile.pixel_latency[v], reached_by + 1e-9);
        visited[v] = true;
      }
    }
    EXPECT_EQ(leg, res.route.leg_starts.size());

    const auto by_cost = exponential_tree_heuristic(graph, grid, m, start, CapMode::cost);
    EXPECT_TRUE(coverage_profile(by_cost.route, grid, graph).complete());
  }
}

TEST(ExponentialTree, ArbitraryMotion) {
  const PixelGrid grid = build_square_grid(oracle::star_region(4, true));
  const DualGraph graph = build_dual_graph(grid, Motion::arbitrary);
  const Metric m(graph);
  const auto res = exponential_tree_heuristic(graph, grid, m, grid.start_index);
  EXPECT_TRUE(coverage_profile(res.route, grid, graph).complete());
}

TEST(LatencyBlocks, Sizes) {
  EXPECT_TRUE(latency_block_sizes(100, 0.01).empty());  // floor(100 * 0.01 / 1.01) = 0
  EXPECT_EQ(latency_block_sizes(1000, 0.01).front(), 9u);
  const auto sizes = latency_block_sizes(100, 0.5);
  EXPECT_EQ(sizes.front(), 33u);
  EXPECT_EQ(sizes[1], 22u);
  std::size_t sum = 0;
  for (std::size_t b : sizes) sum += b;
  EXPECT_LE(sum, 100u);
  EXPECT_THROW(latency_block_sizes(10, 0.0), std::invalid_argument);
}

TEST(MinLatency, SingleNode) {
  const auto inst = lattice(1, 1);
  const Metric m(inst.graph);
  EXPECT_EQ(min_latency_heuristic(inst.graph, inst.grid, m, 0).length(), 0.0);
}

TEST(MinLatency, StripOrderIsOptimal) {
  const auto inst = lattice(6, 1);
  const Metric m(inst.graph);
  const Route r = min_latency_heuristic(inst.graph, inst.grid, m, 0);
  EXPECT_EQ(r.waypoints, (std::vector<NodeId>{0, 1, 2, 3, 4, 5}));
  EXPECT_DOUBLE_EQ(expected_time(r, inst), 2.5);
  EXPECT_DOUBLE_EQ(oracle::optimal_expected_time(oracle::lattice_distances(inst.grid), inst.grid.rewards, 0), 2.5);
}

TEST(MinLatency, FullCoverageWithBlocks) {
  for (double eps : {0.01, 0.1, 0.5, 2.0}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const PixelGrid grid = build_square_grid(generate_rectilinear_region(seed));
      const DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
      const Metric m(graph);
      const Route r = min_latency_heuristic(graph, grid, m, grid.start_index, eps);
      EXPECT_EQ(r.waypoints.front(), grid.start_index);
      const auto profile = coverage_profile(r, grid, graph);
      EXPECT_TRUE(profile.complete());
      EXPECT_NEAR(profile.final_covered(), grid.total_reward(), 1e-9);
    }
  }
}

TEST(Heuristics, Deterministic) {
  const PixelGrid grid = build_square_grid(generate_rectilinear_region(11));
  const DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
  const Metric m(graph);
  EXPECT_EQ(exponential_tree_heuristic(graph, grid, m, grid.start_index).route.waypoints,
            exponential_tree_heuristic(graph, grid, m, grid.start_index).route.waypoints);
  EXPECT_EQ(min_latency_heuristic(graph, grid, m, grid.start_index, 0.2).waypoints,
            min_latency_heuristic(graph, grid, m, grid.start_index, 0.2).waypoints);
}
