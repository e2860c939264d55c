#include <algorithm>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_set>

#include "area_graph.hpp"
#include "mapfnav/mapf_solvers.hpp"

namespace mapfnav {

namespace {

using detail::AreaGraph;
using detail::kUnreached;

struct Move {
  int agent;
  int from;
  int to;
};

struct BudgetExhausted {};

constexpr std::size_t kSetupSearchCap = 20'000;

class PushAndRotate {
 public:
  PushAndRotate(const MAPFInstance& inst, const AreaGraph& graph, detail::Deadline& clock)
      : graph_(graph), clock_(clock), n_(graph.size()), k_(static_cast<int>(inst.agents.size())) {
    occ_.assign(static_cast<std::size_t>(n_), -1);
    for (int a = 0; a < k_; ++a) {
      start_.push_back(graph.vertex(inst.agents[static_cast<std::size_t>(a)].start));
      goal_.push_back(graph.vertex(inst.agents[static_cast<std::size_t>(a)].goal));
      occ_[static_cast<std::size_t>(start_.back())] = a;
    }
    pos_ = start_;
    finished_.assign(static_cast<std::size_t>(k_), 0);
    comp_ = graph.components();
    mark_.assign(static_cast<std::size_t>(n_), 0);
    move_cap_ = 200'000 + static_cast<std::size_t>(n_) * static_cast<std::size_t>(k_) * 200;
  }

  /// Routes every agent home. `reverse_ties` flips the priority tie-break used
  /// when choosing the next goal to fill.
  bool run(bool reverse_ties) {
    reverse_ties_ = reverse_ties;
    int remaining = k_;
    while (remaining > 0) {
      const int r = pick_next();
      if (!route(r)) return false;
      finished_[static_cast<std::size_t>(r)] = 1;
      // Agents knocked off their goals while r passed go back now.
      while (!displaced_.empty()) {
        const int d = displaced_.back();
        displaced_.pop_back();
        if (finished_[static_cast<std::size_t>(d)]) continue;
        if (!route(d)) return false;
        finished_[static_cast<std::size_t>(d)] = 1;
      }
      remaining = static_cast<int>(std::count(finished_.begin(), finished_.end(), char{0}));
    }
    return true;
  }

  const std::vector<Move>& moves() const { return log_; }
  const std::vector<int>& starts() const { return start_; }

 private:
  // --- primitive moves ---------------------------------------------------

  void move(int a, int to) {
    const int from = pos_[static_cast<std::size_t>(a)];
    occ_[static_cast<std::size_t>(from)] = -1;
    occ_[static_cast<std::size_t>(to)] = a;
    pos_[static_cast<std::size_t>(a)] = to;
    log_.push_back({a, from, to});
    if (log_.size() > move_cap_) throw BudgetExhausted{};
  }

  struct Snapshot {
    std::vector<int> occ;
    std::vector<int> pos;
    std::size_t log_size;
  };
  Snapshot snapshot() const { return {occ_, pos_, log_.size()}; }
  void restore(const Snapshot& s) {
    occ_ = s.occ;
    pos_ = s.pos;
    log_.resize(s.log_size);
  }

  // Stamped vertex mask: avoid sets without reallocation.
  void begin_mask() { ++stamp_; }
  void add_mask(int v) { mark_[static_cast<std::size_t>(v)] = stamp_; }
  bool masked(int v) const { return mark_[static_cast<std::size_t>(v)] == stamp_; }
  void mask_finished() {
    for (int a = 0; a < k_; ++a) {
      if (finished_[static_cast<std::size_t>(a)]) add_mask(pos_[static_cast<std::size_t>(a)]);
    }
  }

  bool is_finished_at(int v) const {
    const int a = occ_[static_cast<std::size_t>(v)];
    return a >= 0 && finished_[static_cast<std::size_t>(a)];
  }

  // Shortest path from -> to through vertices allowed by `ok` (endpoints exempt).
  template <typename Ok>
  std::vector<int> shortest_path(int from, int to, Ok&& ok) const {
    std::vector<int> parent(static_cast<std::size_t>(n_), -1);
    std::deque<int> queue{from};
    parent[static_cast<std::size_t>(from)] = from;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      if (v == to) break;
      for (int nb : graph_.neighbors(v)) {
        if (parent[static_cast<std::size_t>(nb)] >= 0) continue;
        if (nb != to && !ok(nb)) continue;
        parent[static_cast<std::size_t>(nb)] = v;
        queue.push_back(nb);
      }
    }
    if (parent[static_cast<std::size_t>(to)] < 0) return {};
    std::vector<int> path;
    for (int v = to; v != from; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
  }

  /// Empties `x` by shifting the agents on a shortest path from `x` to the
  /// nearest empty vertex one step along it. Masked vertices are not used.
  bool clear(int x) {
    if (occ_[static_cast<std::size_t>(x)] < 0) return true;
    std::vector<int> parent(static_cast<std::size_t>(n_), -1);
    std::deque<int> queue{x};
    parent[static_cast<std::size_t>(x)] = x;
    int empty = -1;
    while (!queue.empty() && empty < 0) {
      const int v = queue.front();
      queue.pop_front();
      for (int nb : graph_.neighbors(v)) {
        if (parent[static_cast<std::size_t>(nb)] >= 0 || masked(nb)) continue;
        parent[static_cast<std::size_t>(nb)] = v;
        if (occ_[static_cast<std::size_t>(nb)] < 0) {
          empty = nb;
          break;
        }
        queue.push_back(nb);
      }
    }
    if (empty < 0) return false;
    for (int v = empty; v != x;) {
      const int p = parent[static_cast<std::size_t>(v)];
      move(occ_[static_cast<std::size_t>(p)], v);
      v = p;
    }
    return true;
  }

  // --- goal ordering -----------------------------------------------------

  // Quality of filling r's goal next: 2 if the rest of r's component stays
  // connected around all remaining agents and goals with two spare vertices,
  // 1 if at least the remaining goals stay connected, 0 otherwise.
  int fill_quality(int r) {
    const int comp = comp_[static_cast<std::size_t>(goal_[static_cast<std::size_t>(r)])];
    begin_mask();
    for (int a = 0; a < k_; ++a) {
      if (finished_[static_cast<std::size_t>(a)]) add_mask(goal_[static_cast<std::size_t>(a)]);
    }
    add_mask(goal_[static_cast<std::size_t>(r)]);

    int anchor = -1;
    int remaining = 0;
    for (int a = 0; a < k_; ++a) {
      if (a == r || finished_[static_cast<std::size_t>(a)]) continue;
      if (comp_[static_cast<std::size_t>(goal_[static_cast<std::size_t>(a)])] != comp) continue;
      ++remaining;
      if (anchor < 0) anchor = goal_[static_cast<std::size_t>(a)];
    }
    if (anchor < 0) return 2;

    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::deque<int> queue{anchor};
    seen[static_cast<std::size_t>(anchor)] = 1;
    int size = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      ++size;
      for (int nb : graph_.neighbors(v)) {
        if (seen[static_cast<std::size_t>(nb)] || masked(nb)) continue;
        seen[static_cast<std::size_t>(nb)] = 1;
        queue.push_back(nb);
      }
    }
    bool goals_ok = true;
    bool starts_ok = true;
    for (int a = 0; a < k_; ++a) {
      if (a == r || finished_[static_cast<std::size_t>(a)]) continue;
      if (comp_[static_cast<std::size_t>(goal_[static_cast<std::size_t>(a)])] != comp) continue;
      if (!seen[static_cast<std::size_t>(goal_[static_cast<std::size_t>(a)])]) goals_ok = false;
      const int p = pos_[static_cast<std::size_t>(a)];
      if (p != goal_[static_cast<std::size_t>(r)] && !seen[static_cast<std::size_t>(p)]) starts_ok = false;
    }
    if (!goals_ok) return 0;
    return (starts_ok && size >= remaining + 2) ? 2 : 1;
  }

  int pick_next() {
    int best = -1;
    int best_q = -1;
    for (int i = 0; i < k_; ++i) {
      const int a = reverse_ties_ ? k_ - 1 - i : i;
      if (finished_[static_cast<std::size_t>(a)]) continue;
      const int q = fill_quality(a);
      if (q > best_q) {
        best_q = q;
        best = a;
      }
      if (q == 2) break;
    }
    return best;
  }

  // --- routing -----------------------------------------------------------

  bool route(int r) {
    while (pos_[static_cast<std::size_t>(r)] != goal_[static_cast<std::size_t>(r)]) {
      if (clock_.tick()) throw BudgetExhausted{};
      const int u = pos_[static_cast<std::size_t>(r)];
      const int target = goal_[static_cast<std::size_t>(r)];
      std::vector<int> path = shortest_path(u, target, [&](int v) { return !is_finished_at(v); });
      if (path.empty()) path = shortest_path(u, target, [](int) { return true; });
      if (path.empty()) return false;
      const int v = path[1];

      if (occ_[static_cast<std::size_t>(v)] < 0) {
        move(r, v);
        continue;
      }
      const int s = occ_[static_cast<std::size_t>(v)];
      if (!finished_[static_cast<std::size_t>(s)]) {
        const Snapshot before = snapshot();
        begin_mask();
        add_mask(u);
        mask_finished();
        if (clear(v)) {
          move(r, v);
          continue;
        }
        restore(before);
      }
      const bool was_finished = finished_[static_cast<std::size_t>(s)] != 0;
      if (swap(r, s)) {
        if (was_finished) {
          finished_[static_cast<std::size_t>(s)] = 0;
          displaced_.push_back(s);
        }
        continue;
      }
      if (rotate(r, v)) continue;
      return false;
    }
    return true;
  }

  // --- swap --------------------------------------------------------------

  /// Exchanges the adjacent agents r and s; every other agent ends where it
  /// started.
  bool swap(int r, int s) {
    const int u = pos_[static_cast<std::size_t>(r)];
    const int v = pos_[static_cast<std::size_t>(s)];
    const std::vector<int> du = graph_.distances_from(u);
    const std::vector<int> dv = graph_.distances_from(v);
    std::vector<int> branches;
    for (int w = 0; w < n_; ++w) {
      if (graph_.free(w) && graph_.degree(w) >= 3 && du[static_cast<std::size_t>(w)] != kUnreached) {
        branches.push_back(w);
      }
    }
    auto key = [&](int w) { return std::min(du[static_cast<std::size_t>(w)], dv[static_cast<std::size_t>(w)]); };
    std::stable_sort(branches.begin(), branches.end(), [&](int a, int b) { return key(a) < key(b); });

    const Snapshot before = snapshot();
    for (int w : branches) {
      if (try_swap_at(r, s, w, before)) return true;
      restore(before);
    }
    if (branches.empty() || !search_swap_setup(r, s)) return false;
    const bool r_at_branch = setup_ready(pos_[static_cast<std::size_t>(r)], pos_[static_cast<std::size_t>(s)]);
    const int lead = r_at_branch ? r : s;
    const int follower = lead == r ? s : r;
    const int bw = pos_[static_cast<std::size_t>(lead)];
    const int f = pos_[static_cast<std::size_t>(follower)];
    std::array<int, 2> holes{-1, -1};
    for (int nb : graph_.neighbors(bw)) {
      if (nb == f || occ_[static_cast<std::size_t>(nb)] >= 0) continue;
      (holes[0] < 0 ? holes[0] : holes[1]) = nb;
      if (holes[1] >= 0) break;
    }
    exchange(lead, follower, bw, f, holes[0], holes[1], before.log_size, r, s);
    return true;
  }

  // True if the agent at `a` stands on a branch vertex with the agent at `b`
  // next to it and two further neighbours empty.
  bool setup_ready(int a, int b) const {
    if (graph_.degree(a) < 3) return false;
    bool adjacent = false;
    int empty = 0;
    for (int nb : graph_.neighbors(a)) {
      if (nb == b) adjacent = true;
      else if (occ_[static_cast<std::size_t>(nb)] < 0) ++empty;
    }
    return adjacent && empty >= 2;
  }

  /// Breadth-first search for a short move sequence (any agents) that brings
  /// r and s into an exchange position; other agents are interchangeable here
  /// because the set-up is undone afterwards. Applies the moves on success.
  bool search_swap_setup(int r, int s) {
    struct Node {
      std::vector<int> occupied;  // sorted positions of the other agents
      int pr;
      int ps;
      int parent;
      int from;
      int to;
    };
    std::vector<Node> nodes;
    std::vector<int> others;
    for (int a = 0; a < k_; ++a) {
      if (a != r && a != s) others.push_back(pos_[static_cast<std::size_t>(a)]);
    }
    std::sort(others.begin(), others.end());
    auto encode = [](const Node& nd) {
      std::string key;
      key.reserve(4 * (nd.occupied.size() + 2));
      auto put = [&](int v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
      put(nd.pr);
      put(nd.ps);
      for (int v : nd.occupied) put(v);
      return key;
    };
    std::unordered_set<std::string> seen;
    nodes.push_back({others, pos_[static_cast<std::size_t>(r)], pos_[static_cast<std::size_t>(s)], -1, -1, -1});
    seen.insert(encode(nodes[0]));

    std::vector<char> occupied(static_cast<std::size_t>(n_), 0);
    auto ready = [&](int a, int b) {
      if (graph_.degree(a) < 3) return false;
      bool adjacent = false;
      int empty = 0;
      for (int nb : graph_.neighbors(a)) {
        if (nb == b) adjacent = true;
        else if (!occupied[static_cast<std::size_t>(nb)]) ++empty;
      }
      return adjacent && empty >= 2;
    };

    int found = -1;
    for (std::size_t head = 0; head < nodes.size() && found < 0; ++head) {
      if (nodes.size() > kSetupSearchCap) return false;
      if (clock_.tick()) throw BudgetExhausted{};
      const Node cur = nodes[head];
      std::fill(occupied.begin(), occupied.end(), 0);
      for (int v : cur.occupied) occupied[static_cast<std::size_t>(v)] = 1;
      occupied[static_cast<std::size_t>(cur.pr)] = 1;
      occupied[static_cast<std::size_t>(cur.ps)] = 1;
      if (ready(cur.pr, cur.ps) || ready(cur.ps, cur.pr)) {
        found = static_cast<int>(head);
        break;
      }
      auto push_child = [&](Node child, int from, int to) {
        child.parent = static_cast<int>(head);
        child.from = from;
        child.to = to;
        if (seen.insert(encode(child)).second) nodes.push_back(std::move(child));
      };
      for (int nb : graph_.neighbors(cur.pr)) {
        if (occupied[static_cast<std::size_t>(nb)]) continue;
        Node c = cur;
        c.pr = nb;
        push_child(std::move(c), cur.pr, nb);
      }
      for (int nb : graph_.neighbors(cur.ps)) {
        if (occupied[static_cast<std::size_t>(nb)]) continue;
        Node c = cur;
        c.ps = nb;
        push_child(std::move(c), cur.ps, nb);
      }
      for (std::size_t i = 0; i < cur.occupied.size(); ++i) {
        const int v = cur.occupied[i];
        for (int nb : graph_.neighbors(v)) {
          if (occupied[static_cast<std::size_t>(nb)]) continue;
          Node c = cur;
          c.occupied[i] = nb;
          std::sort(c.occupied.begin(), c.occupied.end());
          push_child(std::move(c), v, nb);
        }
      }
    }
    if (found < 0) return false;
    std::vector<std::pair<int, int>> steps;
    for (int i = found; nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
      steps.push_back({nodes[static_cast<std::size_t>(i)].from, nodes[static_cast<std::size_t>(i)].to});
    }
    std::reverse(steps.begin(), steps.end());
    for (const auto& [from, to] : steps) move(occ_[static_cast<std::size_t>(from)], to);
    return true;
  }

  bool try_swap_at(int r, int s, int w, const Snapshot& initial) {
    const int u = initial.pos[static_cast<std::size_t>(r)];
    const int v = initial.pos[static_cast<std::size_t>(s)];
    const std::vector<int> dw = graph_.distances_from(w);
    // The agent nearer to w leads; the other follows one vertex behind.
    std::array<int, 2> leads{r, s};
    if (dw[static_cast<std::size_t>(v)] < dw[static_cast<std::size_t>(u)]) std::swap(leads[0], leads[1]);

    for (int lead : leads) {
      restore(initial);
      const int follower = lead == r ? s : r;
      const int fpos = pos_[static_cast<std::size_t>(follower)];
      const std::vector<int> path =
          shortest_path(pos_[static_cast<std::size_t>(lead)], w, [&](int x) { return x != fpos; });
      if (path.empty() || (path.size() > 1 && path.back() == fpos)) continue;

      bool ok = true;
      for (std::size_t i = 1; i < path.size() && ok; ++i) {
        begin_mask();
        add_mask(pos_[static_cast<std::size_t>(lead)]);
        add_mask(pos_[static_cast<std::size_t>(follower)]);
        if (!clear(path[i])) {
          ok = false;
          break;
        }
        const int prev = pos_[static_cast<std::size_t>(lead)];
        move(lead, path[i]);
        move(follower, prev);
      }
      if (!ok) continue;

      const int f = pos_[static_cast<std::size_t>(follower)];
      std::vector<int> others;
      for (int nb : graph_.neighbors(w)) {
        if (nb != f) others.push_back(nb);
      }
      const Snapshot at_branch = snapshot();
      for (std::size_t i = 0; i < others.size(); ++i) {
        for (std::size_t j = 0; j < others.size(); ++j) {
          if (i == j) continue;
          restore(at_branch);
          begin_mask();
          add_mask(w);
          add_mask(f);
          if (!clear(others[i])) continue;
          add_mask(others[i]);
          if (!clear(others[j])) continue;
          exchange(lead, follower, w, f, others[i], others[j], initial.log_size, r, s);
          return true;
        }
      }
    }
    return false;
  }

  void exchange(int lead, int follower, int w, int f, int n1, int n2, std::size_t since, int r, int s) {
    const std::size_t setup_end = log_.size();
    move(lead, n1);
    move(follower, w);
    move(follower, n2);
    move(lead, w);
    move(lead, f);
    move(follower, w);
    // Undo the set-up with r and s trading identities.
    for (std::size_t i = setup_end; i-- > since;) {
      const Move m = log_[i];
      const int a = m.agent == r ? s : (m.agent == s ? r : m.agent);
      move(a, m.from);
    }
  }

  // --- rotate ------------------------------------------------------------

  /// Moves r from u onto v by rotating the agents along a cycle through the
  /// edge (u, v), using a hole on the cycle.
  bool rotate(int r, int v) {
    const int u = pos_[static_cast<std::size_t>(r)];
    // Cycle: u -> v -> ... -> u without using the edge (v, u) directly.
    std::vector<int> parent(static_cast<std::size_t>(n_), -1);
    std::deque<int> queue{v};
    parent[static_cast<std::size_t>(v)] = v;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      if (x == u) break;
      for (int nb : graph_.neighbors(x)) {
        if (parent[static_cast<std::size_t>(nb)] >= 0) continue;
        if (x == v && nb == u) continue;
        parent[static_cast<std::size_t>(nb)] = x;
        queue.push_back(nb);
      }
    }
    if (parent[static_cast<std::size_t>(u)] < 0) return false;
    std::vector<int> cycle;  // u, v, ..., (last before u)
    for (int x = parent[static_cast<std::size_t>(u)]; x != v; x = parent[static_cast<std::size_t>(x)]) cycle.push_back(x);
    cycle.push_back(v);
    cycle.push_back(u);
    std::reverse(cycle.begin(), cycle.end());

    const Snapshot before = snapshot();
    auto hole_index = [&]() -> int {
      for (std::size_t i = 1; i < cycle.size(); ++i) {
        if (occ_[static_cast<std::size_t>(cycle[i])] < 0) return static_cast<int>(i);
      }
      return -1;
    };
    int h = hole_index();
    if (h < 0) {
      for (std::size_t i = cycle.size(); i-- > 1 && h < 0;) {
        begin_mask();
        for (int c : cycle) {
          if (c != cycle[i]) add_mask(c);
        }
        if (clear(cycle[i])) h = static_cast<int>(i);
      }
    }
    if (h < 0) {
      restore(before);
      return false;
    }
    for (int i = h - 1; i >= 0; --i) {
      const int a = occ_[static_cast<std::size_t>(cycle[static_cast<std::size_t>(i)])];
      if (a < 0) continue;
      if (a != r && finished_[static_cast<std::size_t>(a)]) {
        finished_[static_cast<std::size_t>(a)] = 0;
        displaced_.push_back(a);
      }
      move(a, cycle[static_cast<std::size_t>(i) + 1]);
    }
    return pos_[static_cast<std::size_t>(r)] == v;
  }

  const AreaGraph& graph_;
  detail::Deadline& clock_;
  int n_;
  int k_;
  std::vector<int> start_;
  std::vector<int> goal_;
  std::vector<int> pos_;
  std::vector<int> occ_;
  std::vector<char> finished_;
  std::vector<int> comp_;
  std::vector<int> displaced_;
  std::vector<Move> log_;
  std::vector<unsigned> mark_;
  unsigned stamp_ = 0;
  std::size_t move_cap_;
  bool reverse_ties_ = false;
};

// Drops moves immediately undone by the same agent.
std::vector<Move> drop_back_and_forth(const std::vector<Move>& moves) {
  std::vector<Move> out;
  out.reserve(moves.size());
  for (const Move& m : moves) {
    if (!out.empty() && out.back().agent == m.agent && out.back().from == m.to && out.back().to == m.from) {
      out.pop_back();
      continue;
    }
    out.push_back(m);
  }
  return out;
}

// Schedules sequential moves in parallel time: a move happens one step after
// its agent's previous move and no earlier than the step its target vertex was
// last vacated.
std::vector<DiscretePlan> to_parallel(const AreaGraph& graph, const std::vector<int>& starts,
                                      const std::vector<Move>& moves) {
  const std::size_t k = starts.size();
  std::vector<int> last(k, 0);
  std::vector<int> vacated(static_cast<std::size_t>(graph.size()), 0);
  std::vector<std::vector<std::pair<int, int>>> timeline(k);
  for (std::size_t a = 0; a < k; ++a) timeline[a].push_back({0, starts[a]});
  for (const Move& m : moves) {
    const auto a = static_cast<std::size_t>(m.agent);
    const int t = std::max(last[a] + 1, vacated[static_cast<std::size_t>(m.to)]);
    last[a] = t;
    vacated[static_cast<std::size_t>(m.from)] = t;
    timeline[a].push_back({t, m.to});
  }
  std::vector<DiscretePlan> plans(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t i = 0; i < timeline[a].size(); ++i) {
      const int until = i + 1 < timeline[a].size() ? timeline[a][i + 1].first : timeline[a][i].first + 1;
      const Cell c = graph.cell(timeline[a][i].second);
      while (static_cast<int>(plans[a].size()) < until) plans[a].push_back(c);
    }
  }
  return plans;
}

}  // namespace

SolveResult solve_push_and_rotate(const MAPFInstance& inst, const SolverBudget& budget) {
  detail::Deadline clock(budget);
  SolveResult result;
  auto finish = [&](SolveStatus status) {
    result.status = status;
    result.expansions = clock.expansions();
    result.seconds = clock.elapsed();
    return result;
  };
  if (!check_instance(inst).empty()) return finish(SolveStatus::Unsolvable);

  const AreaGraph graph(inst.area);
  const std::vector<int> comp = graph.components();
  std::vector<int> comp_size(static_cast<std::size_t>(graph.size()) + 1, 0);
  std::vector<int> comp_agents(comp_size.size(), 0);
  for (int v = 0; v < graph.size(); ++v) {
    if (comp[static_cast<std::size_t>(v)] >= 0) ++comp_size[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
  }
  for (const InstanceAgent& a : inst.agents) ++comp_agents[static_cast<std::size_t>(comp[static_cast<std::size_t>(graph.vertex(a.start))])];
  for (std::size_t c = 0; c < comp_size.size(); ++c) {
    if (comp_agents[c] > 0 && comp_size[c] < comp_agents[c] + 2) return finish(SolveStatus::PreconditionUnmet);
  }

  try {
    for (bool reverse_ties : {false, true}) {
      PushAndRotate solver(inst, graph, clock);
      if (!solver.run(reverse_ties)) continue;
      const std::vector<Move> moves = drop_back_and_forth(solver.moves());
      MAPFSolution sol = make_solution(to_parallel(graph, solver.starts(), moves));
      if (!validate_solution(inst, sol).empty()) continue;
      result.solution = std::move(sol);
      return finish(SolveStatus::Solved);
    }
  } catch (const BudgetExhausted&) {
    return finish(SolveStatus::Timeout);
  }
  return finish(SolveStatus::Unsolvable);
}

}  // namespace mapfnav
