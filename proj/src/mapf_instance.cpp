#include "mapfnav/mapf_instance.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "mapfnav/random.hpp"

namespace mapfnav {

std::vector<Cell> MAPFArea::local_blocked() const {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < blocked.size(); ++i) {
    if (blocked[i] != 0) {
      out.push_back({static_cast<int>(i % static_cast<std::size_t>(width)),
                     static_cast<int>(i / static_cast<std::size_t>(width))});
    }
  }
  return out;
}

std::size_t MAPFArea::free_count() const {
  return static_cast<std::size_t>(std::count(blocked.begin(), blocked.end(), std::uint8_t{0}));
}

MAPFArea make_area(const GridMap& g, const Cell& origin, int width, int height, std::span<const Cell> extra_blocked) {
  const int c0 = std::max(0, origin.col);
  const int r0 = std::max(0, origin.row);
  const int c1 = std::min(g.width(), origin.col + width);
  const int r1 = std::min(g.height(), origin.row + height);
  if (c1 <= c0 || r1 <= r0) throw std::invalid_argument("make_area: empty area");
  MAPFArea area;
  area.origin = {c0, r0};
  area.width = c1 - c0;
  area.height = r1 - r0;
  area.blocked.assign(static_cast<std::size_t>(area.width) * static_cast<std::size_t>(area.height), 0);
  for (std::size_t i = 0; i < area.blocked.size(); ++i) area.blocked[i] = g.blocked(area.cell_at(i)) ? 1 : 0;
  for (const Cell& c : extra_blocked) {
    if (area.contains(c)) area.blocked[area.local_index(c)] = 1;
  }
  return area;
}

MAPFArea whole_map_area(const GridMap& g) { return make_area(g, {0, 0}, g.width(), g.height()); }

std::vector<int> gather_participants(int initiator, const std::vector<std::vector<int>>& adjacency) {
  std::set<int> out{initiator};
  for (int a : adjacency.at(static_cast<std::size_t>(initiator))) {
    out.insert(a);
    for (int b : adjacency.at(static_cast<std::size_t>(a))) out.insert(b);
  }
  return {out.begin(), out.end()};
}

std::vector<int> assign_priorities(std::vector<int> participants, std::uint64_t seed, std::uint64_t event) {
  std::sort(participants.begin(), participants.end());
  Rng rng(seed, event);
  rng.shuffle(participants);
  return participants;
}

MAPFArea compute_area(std::span<const Position> positions, int offset, const GridMap& g,
                      std::span<const Cell> extra_blocked) {
  if (positions.empty()) throw std::invalid_argument("compute_area: no positions");
  if (offset < 0) throw std::invalid_argument("compute_area: negative offset");
  Cell lo = cell_of(positions.front());
  Cell hi = lo;
  for (const Position& p : positions) {
    const Cell c = cell_of(p);
    lo = {std::min(lo.col, c.col), std::min(lo.row, c.row)};
    hi = {std::max(hi.col, c.col), std::max(hi.row, c.row)};
  }
  const Cell origin{lo.col - offset, lo.row - offset};
  return make_area(g, origin, hi.col - lo.col + 1 + 2 * offset, hi.row - lo.row + 1 + 2 * offset, extra_blocked);
}

namespace {

double dist_sq_to_center(const Position& p, const Cell& c) { return abs_sq(p - center_of(c)); }

// Row-major scan keeps the first cell on ties.
std::optional<Cell> closest_cell(const MAPFArea& area, const Position& p, const std::vector<char>& allowed) {
  std::optional<Cell> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < area.size(); ++i) {
    if (!allowed[i]) continue;
    const Cell c = area.cell_at(i);
    const double d = dist_sq_to_center(p, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::vector<char> reachable_from(const MAPFArea& area, const Cell& start) {
  std::vector<char> seen(area.size(), 0);
  if (!area.free(start)) return seen;
  std::deque<Cell> queue{start};
  seen[area.local_index(start)] = 1;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (const Cell& n : {Cell{c.col, c.row - 1}, Cell{c.col - 1, c.row}, Cell{c.col + 1, c.row}, Cell{c.col, c.row + 1}}) {
      if (!area.free(n) || seen[area.local_index(n)]) continue;
      seen[area.local_index(n)] = 1;
      queue.push_back(n);
    }
  }
  return seen;
}

}  // namespace

std::vector<Cell> assign_starts(const MAPFArea& area, std::span<const Position> positions_by_priority,
                                std::span<const Cell> no_start) {
  std::vector<char> allowed(area.size(), 0);
  for (std::size_t i = 0; i < area.size(); ++i) allowed[i] = area.blocked[i] == 0 ? 1 : 0;
  for (const Cell& c : no_start) {
    if (area.contains(c)) allowed[area.local_index(c)] = 0;
  }
  std::vector<Cell> starts;
  starts.reserve(positions_by_priority.size());
  for (const Position& p : positions_by_priority) {
    const auto c = closest_cell(area, p, allowed);
    if (!c) throw InstanceError(InstanceErrorKind::AreaExhausted, "more agents than free cells in the area");
    allowed[area.local_index(*c)] = 0;
    starts.push_back(*c);
  }
  return starts;
}

std::vector<Cell> assign_goals(const MAPFArea& area, std::span<const Cell> starts, std::span<const Position> waypoints) {
  if (starts.size() != waypoints.size()) throw std::invalid_argument("assign_goals: size mismatch");
  std::vector<char> taken(area.size(), 0);
  std::vector<Cell> goals;
  goals.reserve(starts.size());
  for (std::size_t k = 0; k < starts.size(); ++k) {
    std::vector<char> allowed = reachable_from(area, starts[k]);
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      if (taken[i]) allowed[i] = 0;
    }
    const auto c = closest_cell(area, waypoints[k], allowed);
    if (!c) throw InstanceError(InstanceErrorKind::GoalsExhausted, "no reachable goal cell left");
    taken[area.local_index(*c)] = 1;
    goals.push_back(*c);
  }
  return goals;
}

std::vector<std::size_t> component_sizes_at(const MAPFArea& area, std::span<const Cell> cells) {
  std::vector<std::size_t> out;
  out.reserve(cells.size());
  for (const Cell& c : cells) {
    const auto seen = reachable_from(area, c);
    out.push_back(static_cast<std::size_t>(std::count(seen.begin(), seen.end(), char{1})));
  }
  return out;
}

std::optional<MAPFInstance> build_instance(const BuildRequest& request, const GridMap& g) {
  if (request.participants.empty()) throw std::invalid_argument("build_instance: no participants");

  std::vector<int> ids;
  for (const auto& p : request.participants) ids.push_back(p.id);
  const std::vector<int> order = assign_priorities(ids, request.seed, request.event);

  std::vector<Position> positions;
  std::vector<Position> waypoints;
  for (int id : order) {
    const auto it = std::find_if(request.participants.begin(), request.participants.end(),
                                 [&](const ParticipantState& p) { return p.id == id; });
    positions.push_back(it->position);
    waypoints.push_back(it->waypoint);
  }
  const std::size_t n = order.size();

  for (int attempt = 0; attempt <= request.max_retries; ++attempt) {
    const int offset = request.offset + attempt * request.retry_growth;
    const MAPFArea area = compute_area(positions, offset, g, request.parked);
    try {
      const std::vector<Cell> starts = assign_starts(area, positions, request.no_start);
      const auto sizes = component_sizes_at(area, starts);
      if (std::any_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s < n + 2; })) continue;
      const std::vector<Cell> goals = assign_goals(area, starts, waypoints);
      MAPFInstance inst;
      inst.area = area;
      for (std::size_t k = 0; k < n; ++k) inst.agents.push_back({order[k], starts[k], goals[k], waypoints[k]});
      return inst;
    } catch (const InstanceError&) {
      continue;
    }
  }
  return std::nullopt;
}

std::string check_instance(const MAPFInstance& inst) {
  std::set<Cell> starts;
  std::set<Cell> goals;
  for (const InstanceAgent& a : inst.agents) {
    if (!inst.area.free(a.start)) return "start of agent " + std::to_string(a.id) + " not a free area cell";
    if (!inst.area.free(a.goal)) return "goal of agent " + std::to_string(a.id) + " not a free area cell";
    if (!starts.insert(a.start).second) return "duplicate start";
    if (!goals.insert(a.goal).second) return "duplicate goal";
    if (!reachable_from(inst.area, a.start)[inst.area.local_index(a.goal)]) {
      return "goal of agent " + std::to_string(a.id) + " unreachable from its start";
    }
  }
  return {};
}

}  // namespace mapfnav
