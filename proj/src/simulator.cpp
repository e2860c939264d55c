#include "mapfnav/simulator.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>

#include "mapfnav/random.hpp"

namespace mapfnav {

namespace {

constexpr double kPlanTolerance = 1e-9;

std::uint64_t fnv_word(std::uint64_t h, std::uint64_t w) {
  for (int i = 0; i < 8; ++i) {
    h ^= (w >> (8 * i)) & 0xffU;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

void SimConfig::validate() const {
  if (max_steps < 0) throw std::invalid_argument("SimConfig: max_steps must be >= 0");
  if (stall_window < 1) throw std::invalid_argument("SimConfig: stall_window must be >= 1");
  if (!(stall_threshold > 0.0)) throw std::invalid_argument("SimConfig: stall_threshold must be positive");
  if (!(time_cap_mapf > 0.0)) throw std::invalid_argument("SimConfig: time_cap_mapf must be positive");
  if (!(w_ecbs >= 1.0)) throw std::invalid_argument("SimConfig: w_ecbs must be >= 1");
  if (offset < 0) throw std::invalid_argument("SimConfig: offset must be >= 0");
  params.validate();
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::AllGoals: return "all-goals";
    case Termination::Stall: return "stall";
    case Termination::StepLimit: return "step-limit";
  }
  return "?";
}

int check_collisions(std::span<const Position> positions, double r_phys) {
  const double limit = 2.0 * r_phys - 1e-9;
  int count = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (distance(positions[i], positions[j]) < limit) ++count;
    }
  }
  return count;
}

World::World(const GridMap& map, const Scenario& scenario, const SimConfig& cfg)
    : map_(&map), obstacles_(map, cfg.params.range), cfg_(cfg) {
  cfg_.validate();
  if (scenario.starts.size() != scenario.goals.size()) {
    throw std::invalid_argument("scenario: starts and goals differ in count");
  }
  std::set<Cell> starts(scenario.starts.begin(), scenario.starts.end());
  std::set<Cell> goals(scenario.goals.begin(), scenario.goals.end());
  if (starts.size() != scenario.starts.size()) throw std::invalid_argument("scenario: duplicate start cell");
  if (goals.size() != scenario.goals.size()) throw std::invalid_argument("scenario: duplicate goal cell");

  for (std::size_t i = 0; i < scenario.starts.size(); ++i) {
    AgentState a;
    a.id = static_cast<int>(i);
    a.position = center_of(scenario.starts[i]);
    a.window = SpeedWindow(cfg_.params.window_k);
    a.path = plan_theta_star(map, scenario.starts[i], scenario.goals[i]);
    agents_.push_back(std::move(a));
  }
  mean_speeds_.assign(static_cast<std::size_t>(cfg_.stall_window), 0.0);
  stats_.trajectory_hash = 1469598103934665603ULL;
  if (agents_.empty()) {
    terminated_ = true;
    reason_ = Termination::AllGoals;
  }
}

void World::set_mode(AgentState& a, Mode m) {
  if (!transition_allowed(a.mode, m)) ++stats_.audit.forbidden_transitions;
  a.mode = m;
}

std::vector<World::Group> World::groups() const {
  std::map<std::uint64_t, std::vector<int>> by_event;
  for (const AgentState& a : agents_) {
    if (a.episode) by_event[a.episode->event].push_back(a.id);
  }
  std::vector<Group> out;
  for (auto& [event, members] : by_event) out.push_back({event, std::move(members)});
  return out;
}

std::vector<std::vector<int>> World::proximity() const {
  std::vector<std::vector<int>> adj(agents_.size());
  for (const AgentState& a : agents_) {
    if (a.finished) continue;
    for (const AgentState& b : agents_) {
      if (b.id == a.id || b.finished) continue;
      if (distance(a.position, b.position) <= cfg_.params.range) adj[static_cast<std::size_t>(a.id)].push_back(b.id);
    }
  }
  return adj;
}

void World::leave_mapf(AgentState& a) {
  set_mode(a, Mode::Normal);
  a.window.clear();
  a.episode.reset();
  a.plan_index = -1;
  a.sync_step = 0;
  a.sub_step = 0;
  // Displaced agents that lost sight of their waypoint replan from here.
  if (!a.path.empty() && !line_of_sight(*map_, a.position, a.path.current())) {
    try {
      a.path = plan_theta_star(*map_, cell_of(a.position), cell_of(a.path.goal()));
    } catch (const PlanningError&) {
    }
  }
}

bool World::create_episode(std::vector<int> participants) {
  // Members of other episodes join with their whole group.
  std::set<int> all(participants.begin(), participants.end());
  for (int id : participants) {
    const AgentState& a = agents_[static_cast<std::size_t>(id)];
    if (a.episode) all.insert(a.episode->participants.begin(), a.episode->participants.end());
  }
  participants.assign(all.begin(), all.end());

  BuildRequest req;
  for (int id : participants) {
    const AgentState& a = agents_[static_cast<std::size_t>(id)];
    req.participants.push_back({id, a.position, a.path.current()});
  }
  // A parked agent may sit up to kGoalTolerance off its cell center. Plans may
  // pass next to it, but ORCA cannot settle on a neighbour center it crowds.
  for (const AgentState& a : agents_) {
    if (!a.finished) continue;
    const Cell home = cell_of(a.position);
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const Cell c{home.col + dc, home.row + dr};
        if (c == home) req.parked.push_back(c);
        else if (distance(center_of(c), a.position) < 2.0 * cfg_.params.r_avoid) req.no_start.push_back(c);
      }
    }
  }
  req.seed = cfg_.seed;
  req.event = ++event_counter_;
  req.offset = cfg_.offset;

  ++stats_.n_mapf_calls;
  mapf_agents_total_ += static_cast<long>(participants.size());
  const auto inst = build_instance(req, *map_);
  if (!inst) {
    ++stats_.n_mapf_failures;
    return false;
  }
  if (instance_sink_) instance_sink_(steps_, *inst);

  CombinedConfig cc;
  cc.w = cfg_.w_ecbs;
  cc.time_cap = cfg_.time_cap_mapf;
  cc.pr_expansions = cfg_.pr_expansions;
  cc.ecbs_expansions = cfg_.ecbs_expansions;
  const CombinedResult solved = solve_combined(*inst, cc);

  SolverLogEntry log;
  log.step = steps_;
  log.agents = static_cast<int>(participants.size());
  log.used = solved.used;
  log.pr_status = solved.push_and_rotate.status;
  log.pr_seconds = solved.push_and_rotate.seconds;
  if (solved.push_and_rotate.solution) log.pr_flowtime = solved.push_and_rotate.solution->flowtime;
  log.ecbs_status = solved.ecbs.status;
  log.ecbs_seconds = solved.ecbs.seconds;
  if (solved.ecbs.solution) log.ecbs_flowtime = solved.ecbs.solution->flowtime;
  stats_.solver_log.push_back(log);

  if (!solved.solution) {
    ++stats_.n_mapf_failures;
    return false;
  }

  MAPFEpisode episode;
  episode.event = req.event;
  episode.instance = *inst;
  episode.solution = *solved.solution;
  episode.participants = participants;
  episode.solver = solved.used;
  for (std::size_t k = 0; k < inst->agents.size(); ++k) {
    AgentState& a = agents_[static_cast<std::size_t>(inst->agents[k].id)];
    set_mode(a, Mode::MoveToMAPFStart);
    a.window.clear();
    a.episode = episode;
    a.plan_index = static_cast<int>(k);
    a.sync_step = 0;
    a.sub_step = 0;
  }
  return true;
}

void World::events() {
  // Finished plans: everybody back to normal navigation.
  for (const Group& g : groups()) {
    const AgentState& first = agents_[static_cast<std::size_t>(g.members.front())];
    if (first.mode == Mode::MAPF && all_done(*first.episode, agents_)) {
      for (int id : g.members) leave_mapf(agents_[static_cast<std::size_t>(id)]);
    }
  }

  // Outsiders coming into range of a running episode are absorbed.
  for (const Group& g0 : groups()) {
    std::vector<int> members;
    for (const AgentState& a : agents_) {
      if (a.episode && a.episode->event == g0.event) members.push_back(a.id);
    }
    if (members.empty()) continue;  // merged away earlier in this loop
    std::set<int> intruders;
    for (const AgentState& o : agents_) {
      if (o.finished || (o.episode && o.episode->event == g0.event)) continue;
      for (int id : members) {
        if (distance(agents_[static_cast<std::size_t>(id)].position, o.position) <= cfg_.params.range) {
          intruders.insert(o.id);
          break;
        }
      }
    }
    if (intruders.empty()) continue;
    std::vector<int> participants = members;
    participants.insert(participants.end(), intruders.begin(), intruders.end());
    if (create_episode(participants)) continue;
    for (int id : participants) {
      AgentState& a = agents_[static_cast<std::size_t>(id)];
      if (a.episode) leave_mapf(a);
      else a.window.clear();
    }
  }

  // A group jammed on the way to its starts (every member still off its start
  // has been slow for a whole window) is rebuilt from where it stands now.
  for (const Group& g : groups()) {
    const AgentState& first = agents_[static_cast<std::size_t>(g.members.front())];
    if (first.mode != Mode::MoveToMAPFStart) continue;
    bool jammed = true;
    bool anyone_off = false;
    for (int id : g.members) {
      const AgentState& a = agents_[static_cast<std::size_t>(id)];
      if (!a.window.full()) jammed = false;
      if (distance(a.position, a.mapf_start()) <= kStartTolerance) continue;
      anyone_off = true;
      if (a.window.average() >= cfg_.params.v_low) jammed = false;
    }
    if (!jammed || !anyone_off) continue;
    if (create_episode(g.members)) continue;
    for (int id : g.members) leave_mapf(agents_[static_cast<std::size_t>(id)]);
  }

  // Deadlock detection, lowest id first.
  const auto adj = proximity();
  const double v_max = cfg_.params.v_max;
  for (AgentState& a : agents_) {
    if (a.finished || a.mode != Mode::Normal) continue;
    // Parked agents report too (they are standing still), but are never
    // drafted into the episode.
    std::vector<double> reports;
    for (const AgentState& o : agents_) {
      if (o.id == a.id || distance(o.position, a.position) > cfg_.params.range) continue;
      reports.push_back(reported_speed(o.window, o.mode, v_max));
    }
    if (!detect_deadlock(reported_speed(a.window, a.mode, v_max), reports, cfg_.params.v_low)) continue;
    const std::vector<int> participants = gather_participants(a.id, adj);
    if (create_episode(participants)) continue;
    // Wait for a fresh window before trying again.
    for (int id : participants) {
      AgentState& p = agents_[static_cast<std::size_t>(id)];
      if (p.mode == Mode::Normal) p.window.clear();
    }
  }

  // Everybody on their start: go. Sub-step -1 is one settling step that
  // moves each agent exactly onto its start center (at most kStartTolerance).
  for (const Group& g : groups()) {
    const AgentState& first = agents_[static_cast<std::size_t>(g.members.front())];
    if (first.mode != Mode::MoveToMAPFStart || !all_ready(*first.episode, agents_)) continue;
    for (int id : g.members) {
      AgentState& a = agents_[static_cast<std::size_t>(id)];
      set_mode(a, Mode::MAPF);
      a.sync_step = 0;
      a.sub_step = -1;
    }
  }
}

void World::audit_episodes() {
  for (const Group& g : groups()) {
    const AgentState& first = agents_[static_cast<std::size_t>(g.members.front())];
    const std::uint64_t h = episode_hash(*first.episode);
    for (int id : g.members) {
      const AgentState& a = agents_[static_cast<std::size_t>(id)];
      if (episode_hash(*a.episode) != h) ++stats_.audit.episode_mismatches;
      if (a.mode != first.mode) ++stats_.audit.episode_mismatches;
      if (a.mode == Mode::MAPF && (a.sync_step != first.sync_step || a.sub_step != first.sub_step)) {
        ++stats_.audit.lockstep_violations;
      }
    }
    if (first.episode->participants != g.members) ++stats_.audit.episode_mismatches;
  }
}

void World::step() {
  if (terminated_) return;
  if (cfg_.max_steps == 0) {
    terminated_ = true;
    reason_ = Termination::StepLimit;
    return;
  }
  if (cfg_.mapf_enabled) events();

  const std::vector<AgentState> snapshot = agents_;
  ControlContext ctx;
  ctx.map = map_;
  ctx.obstacles = &obstacles_;
  ctx.params = cfg_.params;
  ctx.orca = cfg_.orca;
  std::vector<Vec2> commands(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) commands[i] = step_agent(agents_[i], snapshot, ctx);

  const int k = substeps_per_move(cfg_.params.v_max);
  double speed_total = 0.0;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    AgentState& a = agents_[i];
    const Vec2 v = commands[i];
    const double speed = norm(v);
    if (speed > cfg_.params.v_max) ++stats_.audit.speed_violations;
    a.velocity = v;
    a.position += v * cfg_.orca.time_step;
    a.window.record(speed);
    speed_total += speed;
    if (a.mode == Mode::MAPF) {
      if (a.sub_step < 0) {
        a.sub_step = 0;
      } else if (a.sync_step < a.episode->solution.makespan && ++a.sub_step == k) {
        a.sub_step = 0;
        ++a.sync_step;
      }
      if (distance(a.position, plan_point(a.plan(), a.sync_step, a.sub_step, k)) > kPlanTolerance) {
        ++stats_.audit.plan_deviations;
      }
      if (reported_speed(a.window, a.mode, cfg_.params.v_max) < cfg_.params.v_low) ++stats_.audit.deadlock_in_mapf;
    }
  }
  ++steps_;

  for (AgentState& a : agents_) {
    if (a.finished || a.mode != Mode::Normal || !a.path.at_last()) continue;
    if (distance(a.position, a.path.goal()) <= kGoalTolerance) {
      a.finished = true;
      a.finish_step = steps_;
      a.velocity = {};
    }
  }

  std::vector<Position> positions;
  positions.reserve(agents_.size());
  for (const AgentState& a : agents_) {
    positions.push_back(a.position);
    if (a.mode == Mode::Normal) ++stats_.normal_mode_steps;
    else ++stats_.mapf_mode_steps;
  }
  stats_.collisions += check_collisions(positions, cfg_.params.r_phys);
  audit_episodes();

  for (const AgentState& a : agents_) {
    std::uint64_t h = stats_.trajectory_hash;
    h = fnv_word(h, static_cast<std::uint64_t>(steps_));
    h = fnv_word(h, static_cast<std::uint64_t>(a.id));
    h = fnv_word(h, std::bit_cast<std::uint64_t>(a.position.x));
    h = fnv_word(h, std::bit_cast<std::uint64_t>(a.position.y));
    h = fnv_word(h, static_cast<std::uint64_t>(a.mode));
    stats_.trajectory_hash = h;
    if (sink_) sink_(steps_, a);
  }

  // Running mean over the last stall_window steps, re-summed on wrap to keep
  // rounding from accumulating.
  const double mean = speed_total / static_cast<double>(agents_.size());
  speed_sum_ += mean - mean_speeds_[speed_head_];
  mean_speeds_[speed_head_] = mean;
  if (++speed_head_ == mean_speeds_.size()) {
    speed_head_ = 0;
    speed_sum_ = 0.0;
    for (double s : mean_speeds_) speed_sum_ += s;
  }

  const bool all_finished = std::all_of(agents_.begin(), agents_.end(), [](const AgentState& a) { return a.finished; });
  if (all_finished) {
    terminated_ = true;
    reason_ = Termination::AllGoals;
  } else if (steps_ >= cfg_.stall_window &&
             speed_sum_ / static_cast<double>(cfg_.stall_window) < cfg_.stall_threshold) {
    terminated_ = true;
    reason_ = Termination::Stall;
  } else if (steps_ >= cfg_.max_steps) {
    terminated_ = true;
    reason_ = Termination::StepLimit;
  }
}

RunResult World::result() const {
  RunResult r = stats_;
  r.reason = reason_;
  r.success = terminated_ && reason_ == Termination::AllGoals;
  r.steps = steps_;
  r.flowtime = 0;
  r.makespan = 0;
  for (const AgentState& a : agents_) {
    const int t = a.finished ? a.finish_step : cfg_.max_steps;
    r.flowtime += t;
    r.makespan = std::max(r.makespan, t);
  }
  r.mean_mapf_agents =
      stats_.n_mapf_calls > 0 ? static_cast<double>(mapf_agents_total_) / stats_.n_mapf_calls : 0.0;
  return r;
}

void step_world(World& world) { world.step(); }

RunResult run(const GridMap& map, const Scenario& scenario, const SimConfig& cfg, TrajectorySink sink) {
  World world(map, scenario, cfg);
  if (sink) world.set_trajectory_sink(std::move(sink));
  while (!world.terminated()) world.step();
  return world.result();
}

namespace {

std::vector<int> component_labels(const GridMap& g) {
  std::vector<int> label(g.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.blocked(g.cell_at(i)) || label[i] >= 0) continue;
    std::deque<Cell> queue{g.cell_at(i)};
    label[i] = next;
    while (!queue.empty()) {
      const Cell c = queue.front();
      queue.pop_front();
      for (const Cell& n : {Cell{c.col, c.row - 1}, Cell{c.col - 1, c.row}, Cell{c.col + 1, c.row}, Cell{c.col, c.row + 1}}) {
        if (g.blocked(n) || label[g.index(n)] >= 0) continue;
        label[g.index(n)] = next;
        queue.push_back(n);
      }
    }
    ++next;
  }
  return label;
}

}  // namespace

Scenario generate_instance(const GridMap& g, Placement placement, int n_agents, std::uint64_t seed) {
  if (n_agents < 0) throw std::invalid_argument("generate_instance: negative agent count");
  Rng rng(seed, 0x5ce7a210ULL);
  Scenario sc;
  sc.seed = seed;
  const std::vector<int> label = component_labels(g);

  if (placement == Placement::Halls) {
    const int wall = g.width() / 2;
    std::vector<Cell> left;
    std::vector<Cell> right;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Cell c = g.cell_at(i);
      if (g.blocked(c)) continue;
      if (c.col < wall) left.push_back(c);
      else if (c.col > wall) right.push_back(c);
    }
    const int to_right = n_agents - n_agents / 2;
    const int to_left = n_agents / 2;
    if (static_cast<int>(left.size()) < n_agents || static_cast<int>(right.size()) < n_agents) {
      throw std::invalid_argument("generate_instance: not enough free cells in a hall");
    }
    rng.shuffle(left);
    rng.shuffle(right);
    // Left hall: starts of the left-to-right agents, then goals of the others.
    for (int k = 0; k < to_right; ++k) {
      sc.starts.push_back(left[static_cast<std::size_t>(k)]);
      sc.goals.push_back(right[static_cast<std::size_t>(to_left + k)]);
    }
    for (int k = 0; k < to_left; ++k) {
      sc.starts.push_back(right[static_cast<std::size_t>(k)]);
      sc.goals.push_back(left[static_cast<std::size_t>(to_right + k)]);
    }
    for (std::size_t k = 0; k < sc.starts.size(); ++k) {
      if (label[g.index(sc.starts[k])] != label[g.index(sc.goals[k])]) {
        throw std::invalid_argument("generate_instance: halls are not connected");
      }
    }
    return sc;
  }

  std::vector<Cell> cells;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.free(g.cell_at(i))) cells.push_back(g.cell_at(i));
  }
  if (static_cast<int>(cells.size()) < n_agents) throw std::invalid_argument("generate_instance: not enough free cells");
  std::vector<Cell> starts = cells;
  rng.shuffle(starts);
  starts.resize(static_cast<std::size_t>(n_agents));
  std::vector<Cell> goal_order = cells;
  rng.shuffle(goal_order);
  std::vector<char> used(g.size(), 0);
  for (const Cell& s : starts) {
    bool found = false;
    for (const Cell& c : goal_order) {
      if (used[g.index(c)] || c == s || label[g.index(c)] != label[g.index(s)]) continue;
      used[g.index(c)] = 1;
      sc.goals.push_back(c);
      found = true;
      break;
    }
    if (!found) throw std::invalid_argument("generate_instance: no reachable goal left");
  }
  sc.starts = std::move(starts);
  return sc;
}

}  // namespace mapfnav
