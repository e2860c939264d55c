#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "mapfnav/mapf_instance.hpp"
#include "mapfnav/mapf_solvers.hpp"

namespace mapfnav::detail {

inline constexpr int kUnreached = std::numeric_limits<int>::max();

/// 4-connected graph over the free cells of an area, vertices indexed by the
/// area's local row-major index. Neighbour lists are in ascending order.
class AreaGraph {
 public:
  explicit AreaGraph(const MAPFArea& area) : area_(&area), adj_(area.size()) {
    for (std::size_t i = 0; i < area.size(); ++i) {
      if (area.blocked[i]) continue;
      const Cell c = area.cell_at(i);
      for (const Cell& n : {Cell{c.col, c.row - 1}, Cell{c.col - 1, c.row}, Cell{c.col + 1, c.row},
                            Cell{c.col, c.row + 1}}) {
        if (area.free(n)) adj_[i].push_back(static_cast<int>(area.local_index(n)));
      }
    }
  }

  int size() const { return static_cast<int>(adj_.size()); }
  bool free(int v) const { return area_->blocked[static_cast<std::size_t>(v)] == 0; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  int vertex(const Cell& c) const { return static_cast<int>(area_->local_index(c)); }
  Cell cell(int v) const { return area_->cell_at(static_cast<std::size_t>(v)); }

  /// Hop distances from `source` (kUnreached where unreachable).
  std::vector<int> distances_from(int source) const {
    std::vector<int> dist(adj_.size(), kUnreached);
    std::deque<int> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int n : neighbors(v)) {
        if (dist[static_cast<std::size_t>(n)] != kUnreached) continue;
        dist[static_cast<std::size_t>(n)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(n);
      }
    }
    return dist;
  }

  /// Component label per vertex (-1 for blocked cells).
  std::vector<int> components() const {
    std::vector<int> label(adj_.size(), -1);
    int next = 0;
    for (int v = 0; v < size(); ++v) {
      if (!free(v) || label[static_cast<std::size_t>(v)] >= 0) continue;
      std::deque<int> queue{v};
      label[static_cast<std::size_t>(v)] = next;
      while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int n : neighbors(u)) {
          if (label[static_cast<std::size_t>(n)] >= 0) continue;
          label[static_cast<std::size_t>(n)] = next;
          queue.push_back(n);
        }
      }
      ++next;
    }
    return label;
  }

 private:
  const MAPFArea* area_;
  std::vector<std::vector<int>> adj_;
};

/// Wall-clock and expansion limit shared by the search loops.
class Deadline {
 public:
  explicit Deadline(const SolverBudget& b)
      : start_(std::chrono::steady_clock::now()), seconds_(b.seconds), max_expansions_(b.max_expansions) {}

  /// Counts one expansion; true when the budget is used up.
  bool tick() {
    ++expansions_;
    if (max_expansions_ != 0 && expansions_ > max_expansions_) return true;
    // Reading the clock every expansion is cheap next to an expansion.
    return elapsed() > seconds_;
  }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  std::uint64_t expansions() const { return expansions_; }

 private:
  std::chrono::steady_clock::time_point start_;
  double seconds_;
  std::uint64_t max_expansions_;
  std::uint64_t expansions_ = 0;
};

}  // namespace mapfnav::detail
