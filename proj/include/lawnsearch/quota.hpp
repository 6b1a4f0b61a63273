#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "lawnsearch/discretize.hpp"
#include "lawnsearch/tours.hpp"

namespace lawnsearch {

/// Thrown when a requested coverage quota exceeds the available area.
class InfeasibleQuota : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Slack applied when comparing real-valued quotas against collected rewards.
inline constexpr double kQuotaTolerance = 1e-9;

/// Integer rewards r̄(p) = round(M r(p)) with M = 10^D.
struct ScaledRewards {
  std::int64_t scale = 1;
  int digits = 0;
  std::vector<std::int64_t> scaled;
  std::int64_t scaled_total = 0;

  std::int64_t to_scaled(double area) const { return std::llround(area * static_cast<double>(scale)); }
  double to_area(std::int64_t q) const { return static_cast<double>(q) / static_cast<double>(scale); }
};

/// Fraction digits needed to write `value` exactly, capped at `max_digits`.
inline int decimal_digits(double value, int max_digits) {
  double power = 1.0;
  for (int d = 0; d < max_digits; ++d, power *= 10.0) {
    const double v = value * power;
    if (std::abs(v - std::round(v)) <= 1e-12 * power) return d;
  }
  return max_digits;
}

/// D is the largest digit count among the rewards and any quotas given, at
/// most `max_digits`.
inline ScaledRewards scale_rewards(std::span<const double> rewards, int max_digits,
                                   std::span<const double> quotas = {}) {
  if (max_digits < 0) throw std::invalid_argument("scale_rewards: max_digits must be non-negative");
  if (max_digits > 12) throw std::invalid_argument("scale_rewards: max_digits above 12 overflows the scaled total");
  ScaledRewards out;
  for (double r : rewards) out.digits = std::max(out.digits, decimal_digits(r, max_digits));
  for (double a : quotas) out.digits = std::max(out.digits, decimal_digits(a, max_digits));
  for (int d = 0; d < out.digits; ++d) out.scale *= 10;
  out.scaled.reserve(rewards.size());
  for (double r : rewards) out.scaled.push_back(out.to_scaled(r));
  out.scaled_total = std::accumulate(out.scaled.begin(), out.scaled.end(), std::int64_t{0});
  return out;
}

inline ScaledRewards scale_rewards(const PixelGrid& grid, int max_digits) {
  return scale_rewards(grid.rewards, max_digits);
}

inline constexpr int kDefaultRewardDigits = 6;

/// A quota tour together with what it collects.
///
/// `tree_size` is the number of greedy-tree nodes it was built from;
/// `collected_reward` counts every distinct pixel on the realized walk;
/// `lower_bound` is a certified lower bound on the optimal tour length for
/// the same quota, and `slack` = length / lower_bound (1 for a zero-length
/// tour), i.e. the measured approximation constant c.
struct QuotaTour {
  Tour tour;
  std::size_t tree_size = 0;
  double tree_reward = 0.0;
  std::int64_t tree_scaled_reward = 0;
  double collected_reward = 0.0;
  double lower_bound = 0.0;
  double slack = 1.0;
};

/// Result of a budgeted quota query: the scaled quota Ā and its tour.
struct BudgetedQuota {
  std::int64_t scaled_quota = 0;
  double area_quota = 0.0;
  QuotaTour tour;
};

/// Quota lawn mowing tours on a dual grid graph.
///
/// Tours come from a greedy reward tree (grown from the start until its
/// reward meets the quota), doubled and then improved with 2-opt. The greedy
/// order does not depend on the quota, so every quota maps to a prefix of
/// one fixed order and there are at most N distinct tours; these are
/// memoized per prefix size. Not thread-safe (the memo is mutable).
class QuotaPlanner {
 public:
  QuotaPlanner(const DualGraph& graph, const PixelGrid& grid, const Metric& metric, NodeId start,
               int max_digits = kDefaultRewardDigits)
      : graph_(graph), grid_(grid), metric_(metric), start_(start), scaled_(scale_rewards(grid, max_digits)) {
    if (graph.node_count() != grid.size()) throw std::invalid_argument("QuotaPlanner: graph/grid size mismatch");
    GreedyTreeGrower grower(graph, grid.rewards, start);
    while (grower.grow()) {
    }
    order_ = grower.tree();
    if (order_.size() != grid.size()) throw std::invalid_argument("QuotaPlanner: dual graph is disconnected");

    prefix_reward_.assign(order_.size() + 1, 0.0);
    prefix_scaled_.assign(order_.size() + 1, 0);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      prefix_reward_[i + 1] = prefix_reward_[i] + grid.rewards[order_.nodes[i]];
      prefix_scaled_[i + 1] = prefix_scaled_[i] + scaled_.scaled[order_.nodes[i]];
    }
    min_edge_ = graph.node_count() > 1 ? graph.min_edge_length() : 1.0;

    // Rewards of non-start nodes in decreasing order, for the lower bound.
    for (NodeId v = 0; v < grid.size(); ++v) {
      if (v != start_) others_desc_.push_back(scaled_.scaled[v]);
    }
    std::sort(others_desc_.begin(), others_desc_.end(), std::greater<>());
  }

  const ScaledRewards& scaled() const { return scaled_; }
  double total_reward() const { return prefix_reward_.back(); }
  const RewardTree& greedy_order() const { return order_; }

  /// Shortest tour found for an area quota A. Throws InfeasibleQuota when
  /// A exceeds the total reward.
  QuotaTour tour_for_quota(double area_quota) {
    if (area_quota > total_reward() + kQuotaTolerance) {
      throw InfeasibleQuota("quota " + std::to_string(area_quota) + " exceeds available area " +
                            std::to_string(total_reward()));
    }
    std::size_t k = 1;
    while (k < order_.size() && prefix_reward_[k] < area_quota - kQuotaTolerance) ++k;
    return tour_for_prefix(k);
  }

  /// Same, for a quota in scaled integer units.
  QuotaTour tour_for_scaled_quota(std::int64_t scaled_quota) {
    if (scaled_quota > scaled_.scaled_total) {
      throw InfeasibleQuota("scaled quota " + std::to_string(scaled_quota) + " exceeds " +
                            std::to_string(scaled_.scaled_total));
    }
    const auto it = std::lower_bound(prefix_scaled_.begin() + 1, prefix_scaled_.end(), scaled_quota);
    return tour_for_prefix(static_cast<std::size_t>(it - prefix_scaled_.begin()));
  }

  /// Largest scaled quota Ā whose tour fits within `budget`, with that tour.
  ///
  /// Quotas between two consecutive greedy-prefix rewards share one tour, so
  /// searching {1, ..., M|R|} reduces to searching prefix sizes. Tour length
  /// is not monotone in the quota, so instead of bisecting we take the
  /// monotone envelope: the largest prefix k whose tour fits. A tour over k
  /// distinct nodes (k >= 2) has length at least k times the shortest edge,
  /// which bounds the scan from above. The result is non-decreasing in budget.
  BudgetedQuota max_quota_within_budget(double budget) {
    if (budget < 0.0) throw std::invalid_argument("max_quota_within_budget: budget must be non-negative");
    std::size_t k_max = 1;
    if (order_.size() > 1 && budget + kQuotaTolerance >= 2.0 * min_edge_) {
      const double fit = std::floor(budget / min_edge_ + kQuotaTolerance);
      k_max = static_cast<std::size_t>(std::min<double>(fit, static_cast<double>(order_.size())));
    }
    for (std::size_t k = k_max; k >= 1; --k) {
      QuotaTour qt = tour_for_prefix(k);
      if (qt.tour.length <= budget + kQuotaTolerance) {
        return {qt.tree_scaled_reward, qt.tree_reward, std::move(qt)};
      }
    }
    throw std::logic_error("max_quota_within_budget: single-node tour must always fit");
  }

  /// Certified lower bound on any tour collecting `scaled_quota`: it must
  /// visit at least k distinct nodes (start plus the largest other rewards),
  /// and a closed walk over k >= 2 nodes has at least k edges.
  double lower_bound(std::int64_t scaled_quota) const {
    std::int64_t acc = scaled_.scaled[start_];
    std::size_t k = 1;
    for (std::size_t i = 0; acc < scaled_quota && i < others_desc_.size(); ++i) {
      acc += others_desc_[i];
      ++k;
    }
    return k >= 2 ? static_cast<double>(k) * min_edge_ : 0.0;
  }

  /// Tour built from the first k greedy nodes.
  const QuotaTour& tour_for_prefix(std::size_t k) {
    if (k < 1 || k > order_.size()) throw std::out_of_range("tour_for_prefix: prefix size out of range");
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;

    RewardTree tree;
    tree.nodes.assign(order_.nodes.begin(), order_.nodes.begin() + static_cast<std::ptrdiff_t>(k));
    tree.parent.assign(order_.parent.begin(), order_.parent.begin() + static_cast<std::ptrdiff_t>(k));
    tree.attach_cost.assign(order_.attach_cost.begin(), order_.attach_cost.begin() + static_cast<std::ptrdiff_t>(k));
    tree.already_visited.assign(k, false);
    tree.cost = std::accumulate(tree.attach_cost.begin(), tree.attach_cost.end(), 0.0);
    tree.reward = prefix_reward_[k];

    QuotaTour qt;
    qt.tour = double_tree_tour(tree, metric_);
    two_opt(qt.tour.nodes, metric_, true);
    qt.tour.length = cycle_length(qt.tour.nodes, metric_);
    qt.tree_size = k;
    qt.tree_reward = prefix_reward_[k];
    qt.tree_scaled_reward = prefix_scaled_[k];

    const Route walk = realize_route(qt.tour.nodes, metric_, true);
    std::vector<bool> seen(grid_.size(), false);
    for (NodeId v : walk.waypoints) {
      if (!seen[v]) {
        seen[v] = true;
        qt.collected_reward += grid_.rewards[v];
      }
    }
    qt.lower_bound = lower_bound(qt.tree_scaled_reward);
    qt.slack = qt.lower_bound > 0.0 ? qt.tour.length / qt.lower_bound : 1.0;
    return memo_.emplace(k, std::move(qt)).first->second;
  }

 private:
  const DualGraph& graph_;
  const PixelGrid& grid_;
  const Metric& metric_;
  NodeId start_;
  ScaledRewards scaled_;
  RewardTree order_;
  std::vector<double> prefix_reward_;
  std::vector<std::int64_t> prefix_scaled_;
  std::vector<std::int64_t> others_desc_;
  double min_edge_ = 1.0;
  std::map<std::size_t, QuotaTour> memo_;
};

/// Shortest quota tour found from the start pixel for area quota A.
inline QuotaTour quota_tour(const DualGraph& graph, const PixelGrid& grid, const Metric& metric, NodeId start,
                            double area_quota) {
  QuotaPlanner planner(graph, grid, metric, start);
  return planner.tour_for_quota(area_quota);
}

inline BudgetedQuota max_quota_within_budget(const DualGraph& graph, const PixelGrid& grid, const Metric& metric,
                                             NodeId start, double budget,
                                             int max_digits = kDefaultRewardDigits) {
  QuotaPlanner planner(graph, grid, metric, start, max_digits);
  return planner.max_quota_within_budget(budget);
}

}  // namespace lawnsearch
