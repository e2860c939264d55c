#include <algorithm>

#include "mapfnav/mapf_solvers.hpp"

namespace mapfnav {

int last_move_index(const DiscretePlan& plan) {
  for (std::size_t t = plan.size(); t > 1; --t) {
    if (plan[t - 1] != plan[t - 2]) return static_cast<int>(t - 1);
  }
  return 0;
}

MAPFSolution make_solution(std::vector<DiscretePlan> plans) {
  MAPFSolution sol;
  for (const DiscretePlan& p : plans) {
    const int last = last_move_index(p);
    sol.flowtime += last;
    sol.makespan = std::max(sol.makespan, last);
  }
  for (DiscretePlan& p : plans) {
    if (p.empty()) continue;
    const Cell final_cell = p.back();
    p.resize(static_cast<std::size_t>(sol.makespan) + 1, final_cell);
  }
  sol.plans = std::move(plans);
  return sol;
}

const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::AgentCount: return "agent-count";
    case ViolationKind::EmptyPlan: return "empty-plan";
    case ViolationKind::LengthMismatch: return "length-mismatch";
    case ViolationKind::StartMismatch: return "start-mismatch";
    case ViolationKind::GoalMismatch: return "goal-mismatch";
    case ViolationKind::BlockedCell: return "blocked-cell";
    case ViolationKind::IllegalMove: return "illegal-move";
    case ViolationKind::VertexConflict: return "vertex-conflict";
    case ViolationKind::EdgeConflict: return "edge-conflict";
    case ViolationKind::CostMismatch: return "cost-mismatch";
  }
  return "?";
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::Unsolvable: return "unsolvable";
    case SolveStatus::PreconditionUnmet: return "precondition-unmet";
    case SolveStatus::StateCapExceeded: return "state-cap-exceeded";
  }
  return "?";
}

const char* solver_name(SolverKind k) {
  switch (k) {
    case SolverKind::None: return "none";
    case SolverKind::PushAndRotate: return "push_and_rotate";
    case SolverKind::ECBS: return "ecbs";
  }
  return "?";
}

std::vector<Violation> validate_solution(const MAPFInstance& inst, const MAPFSolution& sol) {
  std::vector<Violation> out;
  const int n = static_cast<int>(inst.agents.size());
  if (static_cast<int>(sol.plans.size()) != n) {
    out.push_back({ViolationKind::AgentCount, 0, -1, -1});
    return out;
  }
  std::size_t horizon = 0;
  for (int a = 0; a < n; ++a) {
    const DiscretePlan& p = sol.plans[static_cast<std::size_t>(a)];
    if (p.empty()) {
      out.push_back({ViolationKind::EmptyPlan, 0, a, -1});
      continue;
    }
    if (horizon == 0) horizon = p.size();
    if (p.size() != horizon) out.push_back({ViolationKind::LengthMismatch, 0, a, -1});
  }
  if (!out.empty()) return out;

  // Single agents first: endpoints, cells, moves.
  long flowtime = 0;
  int makespan = 0;
  for (int a = 0; a < n; ++a) {
    const DiscretePlan& p = sol.plans[static_cast<std::size_t>(a)];
    const InstanceAgent& ag = inst.agents[static_cast<std::size_t>(a)];
    if (p.front() != ag.start) out.push_back({ViolationKind::StartMismatch, 0, a, -1});
    if (p.back() != ag.goal) out.push_back({ViolationKind::GoalMismatch, static_cast<int>(p.size() - 1), a, -1});
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (!inst.area.free(p[t])) out.push_back({ViolationKind::BlockedCell, static_cast<int>(t), a, -1});
      if (t > 0 && manhattan(p[t - 1], p[t]) > 1) {
        out.push_back({ViolationKind::IllegalMove, static_cast<int>(t - 1), a, -1});
      }
    }
    const int last = last_move_index(p);
    flowtime += last;
    makespan = std::max(makespan, last);
  }

  // Pairwise conflicts.
  for (std::size_t t = 0; t < horizon; ++t) {
    for (int a = 0; a < n; ++a) {
      const Cell c = sol.plans[static_cast<std::size_t>(a)][t];
      for (int b = 0; b < a; ++b) {
        if (sol.plans[static_cast<std::size_t>(b)][t] == c) {
          out.push_back({ViolationKind::VertexConflict, static_cast<int>(t), b, a});
        }
      }
    }
    if (t + 1 == horizon) continue;
    for (int a = 0; a < n; ++a) {
      const DiscretePlan& pa = sol.plans[static_cast<std::size_t>(a)];
      if (pa[t] == pa[t + 1]) continue;
      for (int b = a + 1; b < n; ++b) {
        const DiscretePlan& pb = sol.plans[static_cast<std::size_t>(b)];
        if (pa[t] == pb[t + 1] && pa[t + 1] == pb[t]) {
          out.push_back({ViolationKind::EdgeConflict, static_cast<int>(t), a, b});
        }
      }
    }
  }

  if (sol.flowtime != flowtime || sol.makespan != makespan ||
      horizon != static_cast<std::size_t>(sol.makespan) + 1) {
    out.push_back({ViolationKind::CostMismatch, 0, -1, -1});
  }
  return out;
}

}  // namespace mapfnav
