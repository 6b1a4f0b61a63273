#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace lawnsearch;

namespace {

const std::vector<Point> kLine{{0, 0}, {3, 0}};

std::optional<double> detect(const std::vector<Point>& path, Point target, const Cutter& c) {
  return first_detection_time(std::span<const Point>(path), target, c);
}

}  // namespace

TEST(FirstDetection, SquareInterval) {
  const auto t = detect(kLine, {2.0, 0.2}, Cutter::unit_square());
  ASSERT_TRUE(t);
  EXPECT_NEAR(*t, 1.5, 1e-12);
}

TEST(FirstDetection, SquareMissesFarTarget) { EXPECT_FALSE(detect(kLine, {2.0, 0.9}, Cutter::unit_square())); }

TEST(FirstDetection, CircleRoot) {
  const auto t = detect(kLine, {2.0, 0.0}, Cutter::unit_circle());
  ASSERT_TRUE(t);
  EXPECT_NEAR(*t, 1.0, 1e-12);
}

TEST(FirstDetection, StartAndDegenerateRoutes) {
  EXPECT_EQ(detect({{0, 0}}, {0.3, -0.4}, Cutter::unit_square()), 0.0);
  EXPECT_FALSE(detect({{0, 0}}, {0.6, 0}, Cutter::unit_square()));
  EXPECT_FALSE(detect({}, {0, 0}, Cutter::unit_square()));
  EXPECT_EQ(detect({{0, 0}, {0, 0}, {1, 0}}, {1.2, 0}, Cutter::unit_square()), 0.7);
}

TEST(FirstDetection, MatchesDenseStepping) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    std::vector<Point> path{{0, 0}};
    for (int s = 0; s < 6; ++s) path.push_back(path.back() + Point{std::round(2 * u(rng)), std::round(2 * u(rng))});
    const Point target{3 * u(rng), 3 * u(rng)};
    for (bool circle : {false, true}) {
      const auto a = detect(path, target, circle ? Cutter::unit_circle() : Cutter::unit_square());
      const auto s = oracle::stepped_detection_time(path, target, circle, 1e-3);
      ASSERT_EQ(a.has_value(), s.has_value());
      if (a) {
        EXPECT_NEAR(*a, *s, 2e-3);
      }
    }
  }
}

TEST(FirstDetection, ExtendingARouteNeverDelays) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<Point> path{{0, 0}};
  for (int s = 0; s < 30; ++s) path.push_back(path.back() + Point{(rng() % 3) - 1.0, (rng() % 3) - 1.0});
  for (int i = 0; i < 200; ++i) {
    const Point target{u(rng), u(rng)};
    std::optional<double> previous;
    for (std::size_t k = 1; k <= path.size(); ++k) {
      const std::vector<Point> prefix(path.begin(), path.begin() + k);
      const auto t = detect(prefix, target, Cutter::unit_square());
      if (previous) {
        ASSERT_TRUE(t);
        EXPECT_EQ(*t, *previous);
      }
      previous = t;
    }
  }
}

TEST(FirstDetection, PixelModelBracket) {
  // Along grid-edge routes a target in pixel p is detected during the final
  // approach to p's center: within one unit before its pixel latency.
  const PolygonalRegion region = generate_rectilinear_region(8);
  const PixelGrid grid = build_square_grid(region);
  const DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
  const Metric m(graph);
  const Route route = min_latency_heuristic(graph, grid, m, grid.start_index);
  const auto profile = coverage_profile(route, grid, graph);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const Point x = sample_uniform(region, i);
    std::size_t p = 0;
    double best = 1e9;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double d = std::max(std::abs(grid.centers[k].x - x.x), std::abs(grid.centers[k].y - x.y));
      if (d < best) best = d, p = k;
    }
    const auto t = first_detection_time(route, grid.centers, x, Cutter::unit_square());
    ASSERT_TRUE(t);
    EXPECT_LE(*t, profile.pixel_latency[p] + 1e-9);
    EXPECT_GE(*t, profile.pixel_latency[p] - 1.0 - 1e-9);
  }
}

TEST(MonteCarlo, SinglePixelStandingStill) {
  const auto region = make_region({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}, {0.5, 0.5});
  const PixelGrid grid = build_square_grid(region);
  Route r;
  r.waypoints = {0};
  r.cumulative_length = {0.0};
  const SimulationReport rep = monte_carlo(r, grid.centers, region, Cutter::unit_square(), 100, 1);
  EXPECT_EQ(rep.mean, 0.0);
  EXPECT_EQ(rep.std, 0.0);
  EXPECT_EQ(rep.undetected, 0u);
  EXPECT_EQ(rep.trials, 100u);
}

TEST(MonteCarlo, DeterministicAcrossRunsAndThreads) {
  const PolygonalRegion region = generate_rectilinear_region(4);
  const PixelGrid grid = build_square_grid(region);
  const DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
  const Metric m(graph);
  const Route route = exponential_tree_heuristic(graph, grid, m, grid.start_index).route;
  const auto a = monte_carlo(route, grid.centers, region, Cutter::unit_square(), 3000, 99, 1);
  const auto b = monte_carlo(route, grid.centers, region, Cutter::unit_square(), 3000, 99, 1);
  const auto c = monte_carlo(route, grid.centers, region, Cutter::unit_square(), 3000, 99, 7);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std, b.std);
  EXPECT_EQ(a.mean, c.mean);
  EXPECT_EQ(a.std, c.std);
  EXPECT_EQ(a.undetected, 0u);
  const auto d = monte_carlo(route, grid.centers, region, Cutter::unit_square(), 3000, 100, 1);
  EXPECT_NE(a.mean, d.mean);
}

TEST(MonteCarlo, StripSweep) {
  // Pixel-model E = 1.5. Detection in pixel k is uniform on [k - 1, k], so
  // the continuous mean is (0 + 0.5 + 1.5 + 2.5) / 4 = 1.125.
  const auto region = make_region({{0, 0}, {4, 0}, {4, 1}, {0, 1}}, {}, {0.5, 0.5});
  const PixelGrid grid = build_square_grid(region);
  const DualGraph graph = build_dual_graph(grid, Motion::rectilinear);
  const Metric m(graph);
  const std::vector<NodeId> stops{0, 3};
  const Route route = realize_route(stops, m, false);
  const double e = expected_detection_time(coverage_profile(route, grid, graph)).value;
  EXPECT_DOUBLE_EQ(e, 1.5);
  const auto rep = monte_carlo(route, grid.centers, region, Cutter::unit_square(), 10000, 3, 2);
  EXPECT_GE(rep.mean, e - 0.5);
  EXPECT_LE(rep.mean, e + 3 * rep.standard_error());
  EXPECT_NEAR(rep.mean, 1.125, 4 * rep.standard_error());
}

TEST(MonteCarlo, FullCoverageCircleRoute) {
  const PolygonalRegion region = oracle::star_region(12, true);
  const auto [grid, graph] = build_hex_grid(region);
  const Metric m(graph);
  const Route route = exponential_tree_heuristic(graph, grid, m, grid.start_index).route;
  const auto rep = monte_carlo(route, grid.centers, region, Cutter::unit_circle(), 2000, 1, 3);
  EXPECT_EQ(rep.undetected, 0u);
}

TEST(MonteCarlo, RejectsZeroTrials) {
  const auto region = make_region({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}, {0.5, 0.5});
  Route r;
  r.waypoints = {0};
  r.cumulative_length = {0.0};
  const std::vector<Point> centers{{0.5, 0.5}};
  EXPECT_THROW(monte_carlo(r, centers, region, Cutter::unit_square(), 0, 1), std::invalid_argument);
}

TEST(Compare, RowsAndCsv) {
  SimulationReport r;
  r.trials = 10;
  r.mean = 1.5;
  r.std = 0.25;
  r.wall_time = 0.125;
  r.seed = 4;
  const std::vector<NamedReport> one{{"a", r}};
  EXPECT_EQ(compare(one).size(), 1u);
  const std::vector<NamedReport> two{{"x", r}, {"x", r}};
  const auto rows = compare(two);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(to_csv(std::span<const ComparisonRow>(&rows[0], 1)).substr(std::string(kReportCsvHeader).size()),
            to_csv(std::span<const ComparisonRow>(&rows[1], 1)).substr(std::string(kReportCsvHeader).size()));
  EXPECT_EQ(to_csv(rows), std::string(kReportCsvHeader) +
                              "\nx,1.500000,0.250000,0.125000,10,4\nx,1.500000,0.250000,0.125000,10,4\n");
}
