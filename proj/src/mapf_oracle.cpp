#include <algorithm>
#include <bit>
#include <deque>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "area_graph.hpp"
#include "mapfnav/mapf_solvers.hpp"

namespace mapfnav {

namespace {

using detail::AreaGraph;

// Packs per-agent vertex indices (and optional done bits) into one word.
struct Packer {
  int bits = 0;
  int agents = 0;

  bool fits(bool with_done) const { return bits * agents + (with_done ? agents : 0) <= 64; }
  std::uint64_t pack(const std::vector<int>& pos, std::uint64_t done = 0) const {
    std::uint64_t key = 0;
    for (int a = agents - 1; a >= 0; --a) key = (key << bits) | static_cast<std::uint64_t>(pos[static_cast<std::size_t>(a)]);
    return agents * bits < 64 ? key | (done << (agents * bits)) : key;
  }
  void unpack(std::uint64_t key, std::vector<int>& pos, std::uint64_t& done) const {
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    pos.resize(static_cast<std::size_t>(agents));
    for (int a = 0; a < agents; ++a) {
      pos[static_cast<std::size_t>(a)] = static_cast<int>(key & mask);
      key >>= bits;
    }
    done = key;
  }
};

Packer make_packer(const MAPFInstance& inst) {
  Packer p;
  p.agents = static_cast<int>(inst.agents.size());
  p.bits = std::max(1, static_cast<int>(std::bit_width(inst.area.size())));
  return p;
}

// Enumerates every conflict-free joint move of the agents not marked done.
template <typename Emit>
void joint_moves(const AreaGraph& graph, const std::vector<int>& cur, std::uint64_t done, std::vector<int>& next,
                 std::size_t a, Emit&& emit) {
  if (a == cur.size()) {
    emit(next);
    return;
  }
  auto try_cell = [&](int v) {
    for (std::size_t b = 0; b < a; ++b) {
      if (next[b] == v) return;                       // vertex conflict
      if (next[b] == cur[a] && cur[b] == v) return;   // edge conflict
    }
    next[a] = v;
    joint_moves(graph, cur, done, next, a + 1, emit);
  };
  if ((done >> a) & 1U) {
    try_cell(cur[a]);
    return;
  }
  try_cell(cur[a]);
  for (int n : graph.neighbors(cur[a])) try_cell(n);
}

}  // namespace

SolveResult solve_optimal_oracle(const MAPFInstance& inst, std::size_t state_cap) {
  detail::Deadline clock(SolverBudget{});
  SolveResult result;
  const std::string problem = check_instance(inst);
  if (!problem.empty()) return result;
  const AreaGraph graph(inst.area);
  const Packer packer = make_packer(inst);
  if (!packer.fits(true)) {
    result.status = SolveStatus::StateCapExceeded;
    return result;
  }
  const std::size_t k = inst.agents.size();
  if (k == 0) {
    result.status = SolveStatus::Solved;
    result.solution = make_solution({});
    return result;
  }
  std::vector<int> goal(k);
  std::vector<std::vector<int>> dist(k);
  std::vector<int> start(k);
  for (std::size_t a = 0; a < k; ++a) {
    goal[a] = graph.vertex(inst.agents[a].goal);
    start[a] = graph.vertex(inst.agents[a].start);
    dist[a] = graph.distances_from(goal[a]);
  }
  const std::uint64_t all_done = (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;

  auto heuristic = [&](const std::vector<int>& pos, std::uint64_t done) {
    long h = 0;
    for (std::size_t a = 0; a < k; ++a) {
      if (!((done >> a) & 1U)) h += dist[a][static_cast<std::size_t>(pos[a])];
    }
    return h;
  };

  struct Info {
    long g;
    std::uint64_t parent;
    bool closed;
  };
  std::unordered_map<std::uint64_t, Info> info;
  // (f, -g, key): smallest f, then deepest, then smallest key.
  using Entry = std::tuple<long, long, std::uint64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const std::uint64_t s = packer.pack(start);
  info[s] = {0, s, false};
  open.emplace(heuristic(start, 0), 0, s);

  std::vector<int> pos;
  std::vector<int> next(k);
  std::uint64_t done = 0;
  std::optional<std::uint64_t> found;
  while (!open.empty()) {
    const auto [f, neg_g, key] = open.top();
    open.pop();
    Info& cur = info[key];
    if (cur.closed || -neg_g > cur.g) continue;
    cur.closed = true;
    clock.tick();
    packer.unpack(key, pos, done);
    if (done == all_done) {
      found = key;
      break;
    }
    const long g = cur.g;
    auto relax = [&](std::uint64_t nkey, long ng, const std::vector<int>& npos, std::uint64_t ndone) {
      auto [it, inserted] = info.try_emplace(nkey, Info{ng, key, false});
      if (!inserted) {
        if (it->second.closed || it->second.g <= ng) return;
        it->second = {ng, key, false};
      }
      open.emplace(ng + heuristic(npos, ndone), -ng, nkey);
    };
    // Zero-cost: declare an agent that stands on its goal finished for good.
    for (std::size_t a = 0; a < k; ++a) {
      if (!((done >> a) & 1U) && pos[a] == goal[a]) {
        const std::uint64_t nd = done | (std::uint64_t{1} << a);
        relax(packer.pack(pos, nd), g, pos, nd);
      }
    }
    const long step_cost = static_cast<long>(k) - std::popcount(done);
    joint_moves(graph, pos, done, next, 0, [&](const std::vector<int>& npos) {
      for (std::size_t a = 0; a < k; ++a) {
        if (dist[a][static_cast<std::size_t>(npos[a])] == detail::kUnreached) return;
      }
      relax(packer.pack(npos, done), g + step_cost, npos, done);
    });
    if (info.size() > state_cap) {
      result.status = SolveStatus::StateCapExceeded;
      result.expansions = clock.expansions();
      result.seconds = clock.elapsed();
      return result;
    }
  }
  result.expansions = clock.expansions();
  result.seconds = clock.elapsed();
  if (!found) {
    result.status = SolveStatus::Unsolvable;
    return result;
  }

  // Walk back; a position change marks a time step, a done-bit change does not.
  std::vector<std::vector<int>> joint;
  for (std::uint64_t key = *found;; key = info[key].parent) {
    packer.unpack(key, pos, done);
    if (joint.empty() || joint.back() != pos) joint.push_back(pos);
    if (key == s) break;
  }
  std::reverse(joint.begin(), joint.end());
  std::vector<DiscretePlan> plans(k);
  for (const auto& step : joint) {
    for (std::size_t a = 0; a < k; ++a) plans[a].push_back(graph.cell(step[a]));
  }
  // Equal consecutive joint positions collapse to one entry; waits of the
  // whole group never help, so this keeps the flowtime exact.
  result.status = SolveStatus::Solved;
  result.solution = make_solution(std::move(plans));
  return result;
}

SolveStatus joint_reachable(const MAPFInstance& inst, std::size_t state_cap) {
  if (!check_instance(inst).empty()) return SolveStatus::Unsolvable;
  const AreaGraph graph(inst.area);
  const Packer packer = make_packer(inst);
  if (!packer.fits(false)) return SolveStatus::StateCapExceeded;
  const std::size_t k = inst.agents.size();
  std::vector<int> start(k);
  std::vector<int> goal(k);
  for (std::size_t a = 0; a < k; ++a) {
    start[a] = graph.vertex(inst.agents[a].start);
    goal[a] = graph.vertex(inst.agents[a].goal);
  }
  const std::uint64_t target = packer.pack(goal);
  std::unordered_set<std::uint64_t> seen{packer.pack(start)};
  std::deque<std::uint64_t> queue{packer.pack(start)};
  std::vector<int> pos;
  std::vector<char> occupied(static_cast<std::size_t>(graph.size()), 0);
  std::uint64_t unused = 0;
  while (!queue.empty()) {
    const std::uint64_t key = queue.front();
    queue.pop_front();
    if (key == target) return SolveStatus::Solved;
    packer.unpack(key, pos, unused);
    for (int v : pos) occupied[static_cast<std::size_t>(v)] = 1;
    for (std::size_t a = 0; a < k; ++a) {
      const int from = pos[a];
      for (int n : graph.neighbors(from)) {
        if (occupied[static_cast<std::size_t>(n)]) continue;
        pos[a] = n;
        const std::uint64_t nkey = packer.pack(pos);
        if (seen.insert(nkey).second) queue.push_back(nkey);
      }
      pos[a] = from;
    }
    for (int v : pos) occupied[static_cast<std::size_t>(v)] = 0;
    if (seen.size() > state_cap) return SolveStatus::StateCapExceeded;
  }
  return SolveStatus::Unsolvable;
}

}  // namespace mapfnav
