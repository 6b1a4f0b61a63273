#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace lawnsearch;

namespace {

struct Instance {
  PixelGrid grid;
  DualGraph graph;
};

Instance strip(int n, int start = 0) {
  std::vector<Cell> cells;
  for (int i = 0; i < n; ++i) cells.push_back({i, 0});
  PixelGrid grid = make_square_grid(cells, std::vector<double>(n, 1.0), {start, 0});
  DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
  return {std::move(grid), std::move(graph)};
}

}  // namespace

TEST(ScaleRewards, DecimalScaling) {
  const std::vector<double> r{0.5, 1.0, 0.25};
  const ScaledRewards s = scale_rewards(r, 6);
  EXPECT_EQ(s.digits, 2);
  EXPECT_EQ(s.scale, 100);
  EXPECT_EQ(s.scaled, (std::vector<std::int64_t>{50, 100, 25}));
  EXPECT_EQ(s.scaled_total, 175);
  EXPECT_EQ(s.to_scaled(1.6), 160);
}

TEST(ScaleRewards, IntegerRewards) {
  const std::vector<double> r{1.0, 3.0, 2.0};
  const ScaledRewards s = scale_rewards(r, 6);
  EXPECT_EQ(s.digits, 0);
  EXPECT_EQ(s.scale, 1);
  EXPECT_EQ(s.scaled, (std::vector<std::int64_t>{1, 3, 2}));
}

TEST(ScaleRewards, CapAndRounding) {
  const std::vector<double> r{1.0 / 3.0, 2.0 / 3.0};
  const ScaledRewards s = scale_rewards(r, 4);
  EXPECT_EQ(s.digits, 4);
  EXPECT_EQ(s.scaled, (std::vector<std::int64_t>{3333, 6667}));
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_LE(std::abs(s.scale * r[i] - s.scaled[i]), 0.5);
  std::int64_t sum = 0;
  for (auto v : s.scaled) sum += v;
  EXPECT_EQ(s.scaled_total, sum);
}

TEST(QuotaTour, FullQuotaVisitsEverything) {
  const PixelGrid grid = build_square_grid(generate_rectilinear_region(2));
  const DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
  const Metric m(graph);
  const QuotaTour qt = quota_tour(graph, grid, m, grid.start_index, grid.total_reward());
  EXPECT_EQ(qt.tour.nodes.size(), grid.size());
  EXPECT_NEAR(qt.collected_reward, grid.total_reward(), 1e-9);
}

TEST(QuotaTour, StartFootprintSuffices) {
  const auto s = strip(4);
  const Metric m(s.graph);
  const QuotaTour qt = quota_tour(s.graph, s.grid, m, 0, 0.7);
  EXPECT_EQ(qt.tour.length, 0.0);
  EXPECT_EQ(qt.tour.nodes, (std::vector<NodeId>{0}));
}

TEST(QuotaTour, StripOutAndBack) {
  const auto s = strip(4);
  const Metric m(s.graph);
  const QuotaTour qt = quota_tour(s.graph, s.grid, m, 0, 3.0);
  EXPECT_DOUBLE_EQ(qt.tour.length, 4.0);
  const auto subsets = oracle::subset_tour_lengths(oracle::lattice_distances(s.grid), 0);
  EXPECT_DOUBLE_EQ(oracle::optimal_quota_tour(subsets, s.grid.rewards, 3.0), 4.0);
}

TEST(QuotaTour, InfeasibleQuotaThrows) {
  const auto s = strip(4);
  const Metric m(s.graph);
  EXPECT_THROW(quota_tour(s.graph, s.grid, m, 0, 4.5), InfeasibleQuota);
  EXPECT_NO_THROW(quota_tour(s.graph, s.grid, m, 0, 4.0 + 1e-10));
}

TEST(QuotaTour, SatisfiesQuotaAndStaysWithinThreeTimesOptimal) {
  const auto corpus = oracle::small_grid_corpus(7);
  std::mt19937_64 rng(3);
  for (std::size_t i = 0; i < corpus.size(); i += 3) {
    const auto& inst = corpus[i];
    const PixelGrid grid = make_square_grid(inst.cells, inst.rewards, inst.start);
    const DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
    const Metric m(graph);
    const auto subsets = oracle::subset_tour_lengths(oracle::lattice_distances(grid), grid.start_index);
    QuotaPlanner planner(graph, grid, m, grid.start_index);
    for (int q = 0; q < 5; ++q) {
      const double quota = std::uniform_real_distribution<double>(0, 1)(rng) * grid.total_reward();
      const QuotaTour qt = planner.tour_for_quota(quota);
      EXPECT_GE(qt.collected_reward, quota - 1e-9);
      const double opt = oracle::optimal_quota_tour(subsets, grid.rewards, quota);
      EXPECT_LE(qt.tour.length, 3.0 * opt + 1e-9);
      EXPECT_LE(qt.lower_bound, opt + 1e-9);  // the certified bound really is a lower bound
    }
  }
}

TEST(MaxQuota, ZeroBudget) {
  const auto s = strip(4);
  const Metric m(s.graph);
  const BudgetedQuota bq = max_quota_within_budget(s.graph, s.grid, m, 0, 0.0);
  EXPECT_EQ(bq.scaled_quota, 1);
  EXPECT_EQ(bq.tour.tour.length, 0.0);
}

TEST(MaxQuota, LargeBudgetReachesFullCoverage) {
  const PixelGrid grid = build_square_grid(generate_rectilinear_region(5));
  const DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
  const Metric m(graph);
  QuotaPlanner planner(graph, grid, m, grid.start_index);
  const double full = planner.tour_for_quota(grid.total_reward()).tour.length;
  EXPECT_EQ(planner.max_quota_within_budget(full).scaled_quota, planner.scaled().scaled_total);
}

TEST(MaxQuota, StripBudgetTwo) {
  const auto s = strip(4);
  const Metric m(s.graph);
  const BudgetedQuota bq = max_quota_within_budget(s.graph, s.grid, m, 0, 2.0);
  EXPECT_EQ(bq.scaled_quota, 2);
  EXPECT_DOUBLE_EQ(bq.tour.tour.length, 2.0);
}

TEST(MaxQuota, MonotoneInBudget) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const PixelGrid grid = build_square_grid(oracle::star_region(seed, true));
    const DualGraph graph = build_dual_graph(grid, seed % 2 ? Motion::arbitrary : Motion::rectilinear);
    const Metric m(graph);
    QuotaPlanner planner(graph, grid, m, grid.start_index);
    std::int64_t last = -1;
    for (double budget = 0.0; budget < 200.0; budget += 0.75) {
      const BudgetedQuota bq = planner.max_quota_within_budget(budget);
      EXPECT_GE(bq.scaled_quota, last);
      EXPECT_LE(bq.tour.tour.length, budget + 1e-9);
      last = bq.scaled_quota;
    }
  }
}

TEST(MaxQuota, NegativeBudgetRejected) {
  const auto s = strip(3);
  const Metric m(s.graph);
  EXPECT_THROW(max_quota_within_budget(s.graph, s.grid, m, 0, -1.0), std::invalid_argument);
}
