#include "mapfnav/planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

namespace mapfnav {

double GeometricPath::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) total += distance(waypoints[i - 1], waypoints[i]);
  return total;
}

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Move {
  int dc;
  int dr;
};
constexpr std::array<Move, 8> kMoves{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};

bool can_step(const GridMap& g, const Cell& from, const Move& m) {
  const Cell to{from.col + m.dc, from.row + m.dr};
  if (g.blocked(to)) return false;
  if (m.dc != 0 && m.dr != 0) {
    return g.free({from.col + m.dc, from.row}) && g.free({from.col, from.row + m.dr});
  }
  return true;
}

void check_endpoints(const GridMap& g, const Cell& start, const Cell& goal) {
  if (g.blocked(start)) throw PlanningError(PlanningErrorKind::InvalidEndpoint, "start cell blocked or out of bounds");
  if (g.blocked(goal)) throw PlanningError(PlanningErrorKind::InvalidEndpoint, "goal cell blocked or out of bounds");
}

// Open-list entry; lazily invalidated when a better g shows up.
struct Entry {
  double f;
  double g;
  std::size_t node;
};
struct EntryOrder {
  bool operator()(const Entry& a, const Entry& b) const {
    // priority_queue pops the "largest"; invert so the best entry wins.
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.node > b.node;
  }
};

enum class Relink { Never, LineOfSight };

GeometricPath search(const GridMap& g, const Cell& start, const Cell& goal, Relink relink) {
  check_endpoints(g, start, goal);
  const std::size_t n = g.size();
  std::vector<double> cost(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, kNone);
  std::vector<char> closed(n, 0);
  const Position goal_center = center_of(goal);

  auto heuristic = [&](const Cell& c) {
    if (relink == Relink::LineOfSight) return distance(center_of(c), goal_center);
    const int dx = std::abs(c.col - goal.col);
    const int dy = std::abs(c.row - goal.row);
    return static_cast<double>(std::max(dx, dy) - std::min(dx, dy)) + kSqrt2 * std::min(dx, dy);
  };

  std::priority_queue<Entry, std::vector<Entry>, EntryOrder> open;
  const std::size_t s = g.index(start);
  const std::size_t t = g.index(goal);
  cost[s] = 0.0;
  parent[s] = s;
  open.push({heuristic(start), 0.0, s});

  while (!open.empty()) {
    const Entry top = open.top();
    open.pop();
    if (closed[top.node] || top.g > cost[top.node]) continue;
    closed[top.node] = 1;
    if (top.node == t) break;

    const Cell cur = g.cell_at(top.node);
    const std::size_t grand = parent[top.node];
    const Cell grand_cell = g.cell_at(grand);
    for (const Move& m : kMoves) {
      if (!can_step(g, cur, m)) continue;
      const Cell next{cur.col + m.dc, cur.row + m.dr};
      const std::size_t ni = g.index(next);
      if (closed[ni]) continue;

      double candidate;
      std::size_t via;
      if (relink == Relink::LineOfSight && grand != top.node &&
          line_of_sight(g, center_of(grand_cell), center_of(next))) {
        candidate = cost[grand] + distance(center_of(grand_cell), center_of(next));
        via = grand;
      } else {
        candidate = cost[top.node] + ((m.dc != 0 && m.dr != 0) ? kSqrt2 : 1.0);
        via = top.node;
      }
      if (candidate < cost[ni]) {
        cost[ni] = candidate;
        parent[ni] = via;
        open.push({candidate + heuristic(next), candidate, ni});
      }
    }
  }

  if (!closed[t]) throw PlanningError(PlanningErrorKind::Unreachable, "goal unreachable from start");

  GeometricPath path;
  for (std::size_t v = t;; v = parent[v]) {
    path.waypoints.push_back(center_of(g.cell_at(v)));
    if (v == s) break;
  }
  std::reverse(path.waypoints.begin(), path.waypoints.end());
  return path;
}

}  // namespace

GeometricPath plan_theta_star(const GridMap& g, const Cell& start, const Cell& goal) {
  return search(g, start, goal, Relink::LineOfSight);
}

GeometricPath plan_astar(const GridMap& g, const Cell& start, const Cell& goal) {
  return search(g, start, goal, Relink::Never);
}

Position next_waypoint(GeometricPath& path, const Position& p, const GridMap& g, double reach_tolerance) {
  while (!path.at_last()) {
    const bool reached = distance(p, path.waypoints[path.cursor]) <= reach_tolerance;
    if (!reached && !line_of_sight(g, p, path.waypoints[path.cursor + 1])) break;
    ++path.cursor;
  }
  if (!path.at_last() && line_of_sight(g, p, path.goal())) path.cursor = path.waypoints.size() - 1;
  return path.current();
}

}  // namespace mapfnav
