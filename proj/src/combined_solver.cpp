#include <algorithm>

#include "mapfnav/mapf_solvers.hpp"

namespace mapfnav {

CombinedResult solve_combined(const MAPFInstance& inst, const CombinedConfig& cfg) {
  if (!(cfg.time_cap > 0.0)) throw std::invalid_argument("solve_combined: time_cap must be positive");
  CombinedResult out;

  // An expansion budget replaces the wall-clock share of that solver.
  SolverBudget pr_budget;
  if (cfg.pr_expansions != 0) pr_budget.max_expansions = cfg.pr_expansions;
  else pr_budget.seconds = std::min(cfg.pr_share_cap, cfg.time_cap / 2.0);
  out.push_and_rotate = solve_push_and_rotate(inst, pr_budget);

  SolverBudget ecbs_budget;
  if (cfg.ecbs_expansions != 0) ecbs_budget.max_expansions = cfg.ecbs_expansions;
  else ecbs_budget.seconds = std::max(0.0, cfg.time_cap - out.push_and_rotate.seconds);
  if (ecbs_budget.seconds > 0.0) {
    out.ecbs = solve_ecbs(inst, cfg.w, ecbs_budget);
  } else {
    out.ecbs.status = SolveStatus::Timeout;
  }

  if (out.ecbs.solved()) {
    out.used = SolverKind::ECBS;
    out.solution = out.ecbs.solution;
  } else if (out.push_and_rotate.solved()) {
    out.used = SolverKind::PushAndRotate;
    out.solution = out.push_and_rotate.solution;
  }
  return out;
}

}  // namespace mapfnav
