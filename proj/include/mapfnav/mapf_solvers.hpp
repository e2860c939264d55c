#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mapfnav/mapf_instance.hpp"

namespace mapfnav {

/// One cell per plan step; cells[0] is the start.
using DiscretePlan = std::vector<Cell>;

/// Plans of all agents (instance order), padded to makespan + 1 entries.
struct MAPFSolution {
  std::vector<DiscretePlan> plans;
  long flowtime = 0;  ///< sum of last-move indices
  int makespan = 0;   ///< largest last-move index

  bool operator==(const MAPFSolution&) const = default;
};

/// Index of the last entry that differs from its predecessor (0 if none).
int last_move_index(const DiscretePlan& plan);

/// Trims or pads every plan to a common length ending at its final cell and
/// fills in flowtime and makespan.
MAPFSolution make_solution(std::vector<DiscretePlan> plans);

enum class ViolationKind {
  AgentCount,
  EmptyPlan,
  LengthMismatch,
  StartMismatch,
  GoalMismatch,
  BlockedCell,
  IllegalMove,
  VertexConflict,
  EdgeConflict,
  CostMismatch,
};

const char* violation_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  int step = 0;      ///< plan step (for edge conflicts, the step the moves start from)
  int agent_a = -1;  ///< instance index
  int agent_b = -1;

  bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_solution(const MAPFInstance& inst, const MAPFSolution& sol);

enum class SolveStatus { Solved, Timeout, Unsolvable, PreconditionUnmet, StateCapExceeded };

const char* status_name(SolveStatus s);

/// Work limit for a solver call. Wall-clock by default; a non-zero expansion
/// budget makes the cut-off deterministic.
struct SolverBudget {
  double seconds = 1e18;
  std::uint64_t max_expansions = 0;  ///< 0 = unlimited
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsolvable;
  std::optional<MAPFSolution> solution;
  std::uint64_t expansions = 0;
  double seconds = 0.0;

  bool solved() const { return status == SolveStatus::Solved; }
};

/// Push and Rotate style solver: agents are routed to their goals one at a
/// time with push, swap and rotate primitives; the resulting sequential move
/// list is cleaned of immediate back-and-forth pairs and compressed into
/// parallel time. Requires two unoccupied cells in every component that holds
/// an agent.
SolveResult solve_push_and_rotate(const MAPFInstance& inst, const SolverBudget& budget = {});

/// Bounded-suboptimal conflict-based search (flowtime objective). The result,
/// when found, costs at most w times the optimum.
SolveResult solve_ecbs(const MAPFInstance& inst, double w, const SolverBudget& budget = {});

/// Exact minimum-flowtime solution by A* over joint configurations.
SolveResult solve_optimal_oracle(const MAPFInstance& inst, std::size_t state_cap = 10'000'000);

/// Whether the goal configuration is reachable by single-agent moves into
/// empty cells (the model Push and Rotate works in). Breadth-first over
/// configurations; StateCapExceeded when the search grows too large.
SolveStatus joint_reachable(const MAPFInstance& inst, std::size_t state_cap = 2'000'000);

enum class SolverKind { None, PushAndRotate, ECBS };
const char* solver_name(SolverKind k);

struct CombinedConfig {
  double w = 10.0;
  double time_cap = 1.0;        ///< seconds shared by both solvers
  double pr_share_cap = 0.2;    ///< Push and Rotate gets min(this, time_cap / 2)
  /// Non-zero: the solver is cut off after this many expansions instead of by
  /// wall-clock, which makes the outcome machine-independent.
  std::uint64_t pr_expansions = 0;
  std::uint64_t ecbs_expansions = 0;
};

struct CombinedResult {
  SolverKind used = SolverKind::None;
  std::optional<MAPFSolution> solution;
  SolveResult push_and_rotate;
  SolveResult ecbs;
};

/// Push and Rotate first, then ECBS with the remaining budget. Prefers the
/// ECBS solution, falls back to Push and Rotate, fails when neither solved.
CombinedResult solve_combined(const MAPFInstance& inst, const CombinedConfig& cfg = {});

}  // namespace mapfnav
