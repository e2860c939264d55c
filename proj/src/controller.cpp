#include "mapfnav/controller.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace mapfnav {

namespace {

// FNV-1a over 64-bit words.
struct Hasher {
  std::uint64_t h = 1469598103934665603ULL;
  void word(std::uint64_t w) {
    for (int i = 0; i < 8; ++i) {
      h ^= (w >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  void integer(long long v) { word(static_cast<std::uint64_t>(v)); }
  void real(double v) { word(std::bit_cast<std::uint64_t>(v)); }
  void cell(const Cell& c) {
    integer(c.col);
    integer(c.row);
  }
};

}  // namespace

std::uint64_t episode_hash(const MAPFEpisode& e) {
  Hasher h;
  h.word(e.event);
  h.cell(e.instance.area.origin);
  h.integer(e.instance.area.width);
  h.integer(e.instance.area.height);
  for (std::uint8_t b : e.instance.area.blocked) h.integer(b);
  for (const InstanceAgent& a : e.instance.agents) {
    h.integer(a.id);
    h.cell(a.start);
    h.cell(a.goal);
    h.real(a.waypoint.x);
    h.real(a.waypoint.y);
  }
  for (const DiscretePlan& p : e.solution.plans) {
    h.integer(static_cast<long long>(p.size()));
    for (const Cell& c : p) h.cell(c);
  }
  h.integer(e.solution.flowtime);
  h.integer(e.solution.makespan);
  for (int id : e.participants) h.integer(id);
  h.integer(static_cast<int>(e.solver));
  return h.h;
}

int substeps_per_move(double v_max) {
  // 1 / 0.1 is 10.000000000000002 in binary; do not round that up to 11.
  return std::max(1, static_cast<int>(std::ceil(1.0 / v_max - 1e-9)));
}

Position plan_point(const DiscretePlan& plan, int sync_step, int sub_step, int k) {
  const int last = static_cast<int>(plan.size()) - 1;
  if (sync_step >= last) return center_of(plan.back());
  const Position a = center_of(plan[static_cast<std::size_t>(sync_step)]);
  if (sub_step <= 0) return a;
  const Position b = center_of(plan[static_cast<std::size_t>(sync_step) + 1]);
  if (sub_step >= k) return b;
  return a + (b - a) * (static_cast<double>(sub_step) / k);
}

Vec2 plan_velocity(const AgentState& agent, int k, double v_max) {
  if (agent.sub_step < 0) return clamp_speed(agent.mapf_start() - agent.position, v_max);
  const DiscretePlan& plan = agent.plan();
  if (agent.sync_step >= static_cast<int>(plan.size()) - 1) return {};
  const Position target = plan_point(plan, agent.sync_step, agent.sub_step + 1, k);
  return clamp_speed(target - agent.position, v_max);
}

bool all_ready(const MAPFEpisode& episode, std::span<const AgentState> agents) {
  for (int id : episode.participants) {
    const AgentState& a = agents[static_cast<std::size_t>(id)];
    if (!a.episode || distance(a.position, a.mapf_start()) > kStartTolerance) return false;
  }
  return true;
}

bool all_done(const MAPFEpisode& episode, std::span<const AgentState> agents) {
  for (int id : episode.participants) {
    const AgentState& a = agents[static_cast<std::size_t>(id)];
    if (a.mode != Mode::MAPF || a.sync_step < episode.solution.makespan) return false;
  }
  return true;
}

bool transition_allowed(Mode from, Mode to) {
  if (from == to) return true;
  switch (from) {
    case Mode::Normal: return to == Mode::MoveToMAPFStart;
    case Mode::MoveToMAPFStart: return to == Mode::MAPF || to == Mode::Normal;
    case Mode::MAPF: return to == Mode::Normal || to == Mode::MoveToMAPFStart;
  }
  return false;
}

std::vector<NeighborView> neighbor_views(const AgentState& self, std::span<const AgentState> snapshot, double range,
                                         double r_avoid) {
  std::vector<NeighborView> out;
  for (const AgentState& o : snapshot) {
    if (o.id == self.id || distance(o.position, self.position) > range) continue;
    NeighborView v;
    v.id = o.id;
    v.position = o.position;
    v.velocity = o.velocity;
    v.radius = r_avoid;
    v.responsibility = (o.finished || o.mode == Mode::MAPF) ? 1.0 : 0.5;
    out.push_back(v);
  }
  return out;
}

Vec2 step_agent(AgentState& self, std::span<const AgentState> snapshot, const ControlContext& ctx) {
  if (self.finished) return {};
  if (self.mode == Mode::MAPF) return plan_velocity(self, substeps_per_move(ctx.params.v_max), ctx.params.v_max);

  Position target;
  if (self.mode == Mode::Normal) {
    target = next_waypoint(self.path, self.position, *ctx.map, kWaypointTolerance);
    // Pushed off the path so that the waypoint is hidden: plan again from here.
    if (!line_of_sight(*ctx.map, self.position, target)) {
      try {
        self.path = plan_theta_star(*ctx.map, cell_of(self.position), cell_of(self.path.goal()));
        target = next_waypoint(self.path, self.position, *ctx.map, kWaypointTolerance);
      } catch (const PlanningError&) {
      }
    }
  } else {
    target = self.mapf_start();
    if (distance(self.position, target) <= kStartTolerance) target = self.position;
  }
  const auto neighbors = neighbor_views(self, snapshot, ctx.params.range, ctx.params.r_avoid);
  const SelfView view{self.id, self.position, self.velocity, ctx.params};
  return compute_safe_velocity(view, target, neighbors, *ctx.obstacles, ctx.orca);
}

}  // namespace mapfnav
