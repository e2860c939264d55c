#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapfnav/agent_params.hpp"
#include "mapfnav/controller.hpp"
#include "mapfnav/grid_map.hpp"
#include "mapfnav/orca.hpp"

namespace mapfnav {

struct SimConfig {
  int max_steps = 20000;
  int stall_window = 1000;
  double stall_threshold = 1e-4;
  double time_cap_mapf = 1.0;  ///< seconds per MAPF solve (both solvers together)
  double w_ecbs = 10.0;
  int offset = 3;
  std::uint64_t seed = 0;
  bool mapf_enabled = true;    ///< false: plain ORCA* baseline
  /// Non-zero: solvers are cut off by expansion count rather than wall-clock,
  /// which makes whole runs reproducible independent of machine load.
  std::uint64_t pr_expansions = 0;
  std::uint64_t ecbs_expansions = 0;
  AgentParams params;
  OrcaConfig orca;

  void validate() const;
};

/// Agents' start and goal cells on a map.
struct Scenario {
  std::string map;  ///< map file (informational; the map is passed separately)
  std::vector<Cell> starts;
  std::vector<Cell> goals;
  std::uint64_t seed = 0;

  bool operator==(const Scenario&) const = default;
};

enum class Termination { AllGoals, Stall, StepLimit };
const char* termination_name(Termination t);

/// Per solve_combined call, for the solver comparison.
struct SolverLogEntry {
  int step = 0;
  int agents = 0;
  SolverKind used = SolverKind::None;
  SolveStatus pr_status = SolveStatus::Unsolvable;
  long pr_flowtime = -1;
  double pr_seconds = 0.0;
  SolveStatus ecbs_status = SolveStatus::Unsolvable;
  long ecbs_flowtime = -1;
  double ecbs_seconds = 0.0;
};

/// Invariant checks made while stepping; all zero in a correct run.
struct AuditCounters {
  long speed_violations = 0;       ///< |v| > v_max
  long forbidden_transitions = 0;  ///< mode change outside the allowed graph
  long episode_mismatches = 0;     ///< participants holding different episodes
  long lockstep_violations = 0;    ///< participants at different plan steps
  long plan_deviations = 0;        ///< MAPF-mode position off its plan by > 1e-9
  long deadlock_in_mapf = 0;       ///< MAPF-mode agent reported slow

  long total() const {
    return speed_violations + forbidden_transitions + episode_mismatches + lockstep_violations + plan_deviations +
           deadlock_in_mapf;
  }
};

struct RunResult {
  bool success = false;
  Termination reason = Termination::StepLimit;
  int steps = 0;
  long flowtime = 0;  ///< sum of finish steps (max_steps for unfinished agents)
  int makespan = 0;
  int n_mapf_calls = 0;
  double mean_mapf_agents = 0.0;
  long mapf_mode_steps = 0;    ///< agent-steps in MoveToMAPFStart or MAPF
  long normal_mode_steps = 0;
  long collisions = 0;         ///< pairs closer than 2 r_phys, summed over steps
  int n_mapf_failures = 0;     ///< calls that produced no usable solution
  std::uint64_t trajectory_hash = 0;
  AuditCounters audit;
  std::vector<SolverLogEntry> solver_log;
};

/// Unordered pairs at center distance < 2 r_phys - 1e-9.
int check_collisions(std::span<const Position> positions, double r_phys);

/// Receives one record per (step, agent) after each step.
using TrajectorySink = std::function<void(int step, const AgentState& agent)>;

/// Receives every MAPF instance the world builds, before it is solved.
using InstanceSink = std::function<void(int step, const MAPFInstance& instance)>;

class World {
 public:
  /// Plans every agent's global path with Theta*. Throws PlanningError when a
  /// goal is unreachable and std::invalid_argument on a malformed scenario.
  World(const GridMap& map, const Scenario& scenario, const SimConfig& cfg);

  /// One simulation step: frozen snapshot, mode events, velocity commands,
  /// exact integration, bookkeeping.
  void step();

  bool terminated() const { return terminated_; }
  const std::vector<AgentState>& agents() const { return agents_; }
  const SimConfig& config() const { return cfg_; }
  int steps() const { return steps_; }
  RunResult result() const;

  void set_trajectory_sink(TrajectorySink sink) { sink_ = std::move(sink); }
  void set_instance_sink(InstanceSink sink) { instance_sink_ = std::move(sink); }

 private:
  struct Group {
    std::uint64_t event;
    std::vector<int> members;
  };

  std::vector<Group> groups() const;
  std::vector<std::vector<int>> proximity() const;
  bool create_episode(std::vector<int> participants);
  void leave_mapf(AgentState& a);
  void set_mode(AgentState& a, Mode m);
  void events();
  void audit_episodes();

  const GridMap* map_;
  ObstacleSet obstacles_;
  SimConfig cfg_;
  std::vector<AgentState> agents_;
  int steps_ = 0;
  std::uint64_t event_counter_ = 0;
  bool terminated_ = false;
  Termination reason_ = Termination::StepLimit;

  // Stall detection: mean speed of all agents per step, last stall_window steps.
  std::vector<double> mean_speeds_;
  std::size_t speed_head_ = 0;
  double speed_sum_ = 0.0;

  RunResult stats_;
  long mapf_agents_total_ = 0;
  TrajectorySink sink_;
  InstanceSink instance_sink_;
};

/// Advances the world by one step.
void step_world(World& world);

/// Runs until all agents finish, the average speed stalls, or the step limit.
RunResult run(const GridMap& map, const Scenario& scenario, const SimConfig& cfg, TrajectorySink sink = {});

enum class Placement {
  Random,  ///< distinct random start cells and distinct random goal cells
  Halls,   ///< half left-to-right, half right-to-left across the middle column
};

/// Deterministic per seed. Every goal is reachable from its start. Throws
/// std::invalid_argument when there are not enough free cells.
Scenario generate_instance(const GridMap& g, Placement placement, int n_agents, std::uint64_t seed);

}  // namespace mapfnav
