#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mapfnav/agent_params.hpp"
#include "mapfnav/geometry.hpp"
#include "mapfnav/grid_map.hpp"

namespace mapfnav {

/// Velocity-space half-plane { v : dot(normal, v - point) >= 0 }.
struct HalfPlane {
  Vec2 point;
  Vec2 normal;  ///< unit, points into the permitted side

  /// Direction of the boundary line with the permitted side on its left.
  Vec2 direction() const { return {normal.y, -normal.x}; }
  double signed_distance(const Vec2& v) const { return dot(normal, v - point); }
  bool contains(const Vec2& v, double eps = 0.0) const { return signed_distance(v) >= -eps; }

  bool operator==(const HalfPlane&) const = default;
};

/// What an agent knows about one neighbour inside its observation range.
struct NeighborView {
  int id = 0;
  Position position;
  Vec2 velocity;
  double radius = 0.49;  ///< the neighbour's avoidance radius
  /// Share of the avoidance effort this agent takes on: 0.5 against a
  /// reciprocating agent, 1.0 against one that will not react (parked agents,
  /// agents executing a fixed plan).
  double responsibility = 0.5;
};

struct OrcaConfig {
  double tau = 10.0;       ///< agent time horizon (steps)
  double tau_obst = 20.0;  ///< obstacle time horizon (steps)
  double time_step = 1.0;
};

/// Blocked-cell boundaries as closed polygons (blocked side on the left of
/// each edge), collinear unit edges merged into maximal segments. Built once
/// per map; queried per agent and step.
class ObstacleSet {
 public:
  struct Vertex {
    Vec2 point;
    std::size_t next = 0;
    std::size_t prev = 0;
    Vec2 unit_dir;  ///< towards `next`
    bool convex = false;
  };

  explicit ObstacleSet(const GridMap& g, double index_range = 3.0);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t polygon_count() const { return polygon_count_; }

  /// Edges (identified by their first vertex) within `range` of `p` that have
  /// `p` on their free side, sorted by distance then edge id.
  std::vector<std::size_t> edges_near(const Position& p, double range) const;

 private:
  int width_ = 0;
  int height_ = 0;
  double index_range_ = 0.0;
  std::vector<Vertex> vertices_;
  std::size_t polygon_count_ = 0;
  std::vector<std::vector<std::size_t>> buckets_;  // per cell, candidate edges
};

/// One ORCA half-plane per neighbour. Overlapping agents get a constraint that
/// separates them within one time step; exactly coincident agents separate
/// along a direction derived from their id pair.
std::vector<HalfPlane> agent_halfplanes(int self_id, const Position& self_pos, const Vec2& self_vel, double r_avoid,
                                        std::span<const NeighborView> neighbors, double tau, double time_step = 1.0);

/// Half-planes for static obstacles; the agent takes full responsibility.
std::vector<HalfPlane> obstacle_halfplanes(const ObstacleSet& obstacles, const Position& self_pos, const Vec2& self_vel,
                                           double r_avoid, double tau_obst, double v_max);
std::vector<HalfPlane> obstacle_halfplanes(const GridMap& g, const Position& self_pos, const Vec2& self_vel,
                                           double r_avoid, double tau_obst, double v_max);

/// Closest velocity to `v_pref` inside the disk of radius `v_max` and all
/// half-planes (incremental 2D LP in the given order). When infeasible, the
/// velocity minimising the largest violation of constraints `[hard_count, n)`
/// while keeping `[0, hard_count)` satisfied. The result never exceeds v_max.
Vec2 solve_velocity(std::span<const HalfPlane> constraints, const Vec2& v_pref, double v_max,
                    std::size_t hard_count = 0);

/// State of the agent choosing a velocity.
struct SelfView {
  int id = 0;
  Position position;
  Vec2 velocity;
  AgentParams params;
};

Vec2 preferred_velocity(const Position& position, const Position& target, double v_max, double time_step = 1.0);

/// Preferred velocity towards `target`, then ORCA over agents and obstacles.
Vec2 compute_safe_velocity(const SelfView& self, const Position& target, std::span<const NeighborView> neighbors,
                           const ObstacleSet& obstacles, const OrcaConfig& cfg = {});

}  // namespace mapfnav
