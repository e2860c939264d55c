#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mapfnav/geometry.hpp"
#include "mapfnav/grid_map.hpp"

namespace mapfnav {

enum class PlanningErrorKind { InvalidEndpoint, Unreachable };

class PlanningError : public std::runtime_error {
 public:
  PlanningError(PlanningErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  PlanningErrorKind kind() const { return kind_; }

 private:
  PlanningErrorKind kind_;
};

/// Individual geometric path: waypoints at cell centers plus a cursor on the
/// waypoint the agent is currently heading to.
struct GeometricPath {
  std::vector<Position> waypoints;
  std::size_t cursor = 0;

  bool empty() const { return waypoints.empty(); }
  const Position& current() const { return waypoints[cursor]; }
  const Position& goal() const { return waypoints.back(); }
  bool at_last() const { return cursor + 1 >= waypoints.size(); }
  /// Sum of Euclidean segment lengths.
  double length() const;

  bool operator==(const GeometricPath&) const = default;
};

/// Any-angle path by Theta*. Expands the 8-connected grid (no corner cutting)
/// and relinks each successor to its grandparent whenever line of sight holds.
/// Ties on f go to the larger g, then to the row-major smaller cell.
GeometricPath plan_theta_star(const GridMap& g, const Cell& start, const Cell& goal);

/// Optimal 8-connected path (straight 1, diagonal sqrt 2, diagonal moves need
/// both adjacent cardinal cells free). One waypoint per visited cell.
GeometricPath plan_astar(const GridMap& g, const Cell& start, const Cell& goal);

/// Advances the cursor while the agent is within `reach_tolerance` of the
/// current waypoint or sees the following one, jumps to the goal when the goal
/// is in sight, then returns the waypoint under the cursor. The cursor never
/// moves backwards.
Position next_waypoint(GeometricPath& path, const Position& p, const GridMap& g, double reach_tolerance);

}  // namespace mapfnav
