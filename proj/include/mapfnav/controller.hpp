#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mapfnav/agent_params.hpp"
#include "mapfnav/deadlock.hpp"
#include "mapfnav/mapf_instance.hpp"
#include "mapfnav/mapf_solvers.hpp"
#include "mapfnav/orca.hpp"
#include "mapfnav/planner.hpp"

namespace mapfnav {

inline constexpr double kStartTolerance = 0.05;     ///< MAPF start reached
inline constexpr double kGoalTolerance = 0.3;       ///< final goal reached
inline constexpr double kWaypointTolerance = 0.3;   ///< waypoint reached

/// One MAPF episode as held by each participant. Every participant keeps its
/// own copy; all copies of one episode are equal.
struct MAPFEpisode {
  std::uint64_t event = 0;         ///< event counter value that created it
  MAPFInstance instance;
  MAPFSolution solution;
  std::vector<int> participants;   ///< sorted agent ids
  SolverKind solver = SolverKind::None;

  bool operator==(const MAPFEpisode&) const = default;
};

/// Content hash over every field of the episode.
std::uint64_t episode_hash(const MAPFEpisode& e);

struct AgentState {
  int id = 0;
  Position position;
  Vec2 velocity;
  Mode mode = Mode::Normal;
  SpeedWindow window;
  GeometricPath path;
  bool finished = false;
  int finish_step = -1;

  std::optional<MAPFEpisode> episode;
  int plan_index = -1;  ///< row of this agent in episode->solution.plans
  int sync_step = 0;    ///< plan step being executed
  int sub_step = 0;     ///< simulation steps spent on the current plan step; -1 while settling onto the start

  const DiscretePlan& plan() const { return episode->solution.plans[static_cast<std::size_t>(plan_index)]; }
  Position mapf_start() const { return center_of(plan().front()); }
};

/// Simulation steps per plan step: ceil(1 / v_max).
int substeps_per_move(double v_max);

/// Point on `plan` after `sync_step` whole steps plus `sub_step` of `k`
/// sub-steps of the next one.
Position plan_point(const DiscretePlan& plan, int sync_step, int sub_step, int k);

/// Velocity that brings the agent to the next interpolation point of its plan
/// (to its start center while settling), never longer than v_max.
Vec2 plan_velocity(const AgentState& agent, int k, double v_max);

/// Every participant is within kStartTolerance of its MAPF start. `agents` is
/// indexed by agent id.
bool all_ready(const MAPFEpisode& episode, std::span<const AgentState> agents);

/// Every participant has executed its whole plan.
bool all_done(const MAPFEpisode& episode, std::span<const AgentState> agents);

/// Allowed mode changes: Normal -> MoveToMAPFStart -> MAPF -> Normal, MAPF ->
/// MoveToMAPFStart (update) and MoveToMAPFStart/MAPF -> Normal (abandonment).
bool transition_allowed(Mode from, Mode to);

/// Neighbours of `self` within its observation range, ascending id. Parked
/// agents and plan-following agents will not react, so `self` takes full
/// responsibility against them.
std::vector<NeighborView> neighbor_views(const AgentState& self, std::span<const AgentState> snapshot, double range,
                                         double r_avoid);

struct ControlContext {
  const GridMap* map = nullptr;
  const ObstacleSet* obstacles = nullptr;
  AgentParams params;
  OrcaConfig orca;
};

/// Velocity command for one agent for this step, read from the frozen
/// snapshot. Normal: ORCA towards the next waypoint. MoveToMAPFStart: ORCA
/// towards the MAPF start (zero preferred velocity once there). MAPF: the
/// plan velocity. Parked agents stay put. Mode changes happen elsewhere.
Vec2 step_agent(AgentState& self, std::span<const AgentState> snapshot, const ControlContext& ctx);

}  // namespace mapfnav
