#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "area_graph.hpp"
#include "mapfnav/mapf_solvers.hpp"

namespace mapfnav {

namespace {

using detail::AreaGraph;
using detail::kUnreached;
using Path = std::vector<int>;

struct OutOfBudget {};

struct Constraint {
  int agent;
  bool edge;  // vertex: (to, time); edge: move from -> to arriving at time
  int from;
  int to;
  int time;
};

std::uint64_t key3(int a, int b, int t) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t)) << 40) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 20) | static_cast<std::uint32_t>(b);
}

struct AgentConstraints {
  std::unordered_set<std::uint64_t> vertex;
  std::unordered_set<std::uint64_t> edge;
  int goal_last = -1;  // latest forbidden time at the goal
  int max_time = -1;

  bool vertex_blocked(int v, int t) const { return vertex.count(key3(0, v, t)) != 0; }
  bool edge_blocked(int u, int v, int t) const { return edge.count(key3(u, v, t)) != 0; }
};

int at(const Path& p, int t) { return p[static_cast<std::size_t>(std::min<int>(t, static_cast<int>(p.size()) - 1))]; }

// Conflicts a move (u at t-1 -> v at t) of `self` has with the other paths.
int move_conflicts(const std::vector<Path>& paths, int self, int u, int v, int t) {
  int c = 0;
  for (int j = 0; j < static_cast<int>(paths.size()); ++j) {
    if (j == self || paths[static_cast<std::size_t>(j)].empty()) continue;
    const Path& p = paths[static_cast<std::size_t>(j)];
    if (at(p, t) == v) ++c;
    else if (u != v && at(p, t) == u && at(p, t - 1) == v) ++c;
  }
  return c;
}

struct LowResult {
  Path path;
  int lower_bound = 0;
};

/// Focal search in (vertex, time). Costs are arrival times; the agent may stop
/// only once no later constraint forbids its goal.
std::optional<LowResult> low_level(const AreaGraph& graph, const std::vector<int>& h, int start, int goal,
                                   const AgentConstraints& cons, const std::vector<Path>& others, int self,
                                   double w, int free_cells, detail::Deadline& clock) {
  struct Node {
    int v;
    int t;
    int parent;
    int conflicts;
    int f;
    bool closed;
  };
  const int horizon = std::max(cons.max_time, 0) + free_cells + 1;
  const int goal_ready = cons.goal_last + 1;
  auto heuristic = [&](int v, int t) { return std::max(h[static_cast<std::size_t>(v)], goal_ready - t); };

  std::vector<Node> nodes;
  std::unordered_map<std::uint64_t, int> index;
  std::set<std::tuple<int, int>> open;                 // (f, id)
  std::set<std::tuple<int, int, int, int>> focal;      // (conflicts, f, -t, id)
  double bound = 0.0;

  auto push = [&](int v, int t, int parent, int conflicts) {
    const int f = t + heuristic(v, t);
    const std::uint64_t k = key3(0, v, t);
    auto it = index.find(k);
    if (it != index.end()) {
      Node& old = nodes[static_cast<std::size_t>(it->second)];
      if (old.closed || old.conflicts <= conflicts) return;
      focal.erase({old.conflicts, old.f, -old.t, it->second});
      const bool in_focal = old.f <= bound;
      old.parent = parent;
      old.conflicts = conflicts;
      if (in_focal) focal.insert({old.conflicts, old.f, -old.t, it->second});
      return;
    }
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({v, t, parent, conflicts, f, false});
    index.emplace(k, id);
    open.insert({f, id});
    if (f <= bound) focal.insert({conflicts, f, -t, id});
  };

  if (cons.vertex_blocked(start, 0)) return std::nullopt;
  bound = w * heuristic(start, 0);
  push(start, 0, -1, 0);

  while (!open.empty()) {
    if (clock.tick()) throw OutOfBudget{};
    // Keep FOCAL = {open nodes with f <= w * f_min}.
    const int f_min = std::get<0>(*open.begin());
    const double new_bound = w * f_min;
    if (new_bound > bound) {
      for (auto it = open.lower_bound({static_cast<int>(std::floor(bound)) + 1, -1}); it != open.end(); ++it) {
        const int f = std::get<0>(*it);
        if (f > new_bound) break;
        if (f <= bound) continue;
        const Node& nd = nodes[static_cast<std::size_t>(std::get<1>(*it))];
        focal.insert({nd.conflicts, nd.f, -nd.t, std::get<1>(*it)});
      }
      bound = new_bound;
    }
    const int id = std::get<3>(*focal.begin());
    focal.erase(focal.begin());
    Node cur = nodes[static_cast<std::size_t>(id)];
    open.erase({cur.f, id});
    nodes[static_cast<std::size_t>(id)].closed = true;

    if (cur.v == goal && cur.t >= goal_ready) {
      LowResult out;
      out.lower_bound = f_min;
      for (int i = id; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
        out.path.push_back(nodes[static_cast<std::size_t>(i)].v);
      }
      std::reverse(out.path.begin(), out.path.end());
      return out;
    }
    if (cur.t >= horizon) continue;
    const int t = cur.t + 1;
    auto expand = [&](int v) {
      if (cons.vertex_blocked(v, t)) return;
      if (v != cur.v && cons.edge_blocked(cur.v, v, t)) return;
      push(v, t, id, cur.conflicts + move_conflicts(others, self, cur.v, v, t));
    };
    expand(cur.v);
    for (int nb : graph.neighbors(cur.v)) expand(nb);
  }
  return std::nullopt;
}

struct Conflict {
  int a;
  int b;
  bool edge;
  int u;  // vertex conflict: cell; edge: a moves u -> v
  int v;
  int time;  // arrival time of the conflicting step
};

int horizon_of(const std::vector<Path>& paths) {
  std::size_t len = 1;
  for (const Path& p : paths) len = std::max(len, p.size());
  return static_cast<int>(len);
}

std::optional<Conflict> first_conflict(const std::vector<Path>& paths) {
  const int n = static_cast<int>(paths.size());
  const int horizon = horizon_of(paths);
  for (int t = 0; t < horizon; ++t) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const Path& pa = paths[static_cast<std::size_t>(a)];
        const Path& pb = paths[static_cast<std::size_t>(b)];
        if (at(pa, t) == at(pb, t)) return Conflict{a, b, false, at(pa, t), at(pa, t), t};
        if (t > 0 && at(pa, t - 1) == at(pb, t) && at(pa, t) == at(pb, t - 1) && at(pa, t) != at(pa, t - 1)) {
          return Conflict{a, b, true, at(pa, t - 1), at(pa, t), t};
        }
      }
    }
  }
  return std::nullopt;
}

int count_conflicts(const std::vector<Path>& paths) {
  const int n = static_cast<int>(paths.size());
  const int horizon = horizon_of(paths);
  int count = 0;
  for (int t = 0; t < horizon; ++t) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const Path& pa = paths[static_cast<std::size_t>(a)];
        const Path& pb = paths[static_cast<std::size_t>(b)];
        if (at(pa, t) == at(pb, t)) ++count;
        else if (t > 0 && at(pa, t - 1) == at(pb, t) && at(pa, t) == at(pb, t - 1)) ++count;
      }
    }
  }
  return count;
}

int path_cost(const Path& p) { return static_cast<int>(p.size()) - 1; }

struct JointResult {
  std::vector<Path> paths;
  long cost = 0;
};

enum class JointOutcome { Found, Infeasible, TooLarge };

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Exact minimum-flowtime A* for a group of agents planned together under
/// their constraints. Marking an agent done (parked for good) costs nothing;
/// each time step costs one per agent not yet done. Ties prefer fewer
/// conflicts with agents outside the group.
JointOutcome joint_low_level(const AreaGraph& graph, const std::vector<int>& members,
                             const std::vector<std::vector<int>>& h, const std::vector<int>& start,
                             const std::vector<int>& goal, const std::vector<AgentConstraints>& cons,
                             const std::vector<Path>& paths, std::size_t cap, detail::Deadline& clock,
                             JointResult& out) {
  const int m = static_cast<int>(members.size());
  int inert = 0;  // from this time on no constraint applies
  std::vector<int> ready(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    inert = std::max(inert, cons[static_cast<std::size_t>(i)].max_time + 1);
    ready[static_cast<std::size_t>(i)] = cons[static_cast<std::size_t>(i)].goal_last + 1;
  }
  std::vector<char> in_group(paths.size(), 0);
  for (int a : members) in_group[static_cast<std::size_t>(a)] = 1;

  // Key layout: positions..., done mask, min(t, inert).
  struct Node {
    std::vector<int> key;
    int t;
    long g;
    int conflicts;
    int parent;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::vector<int>, std::pair<long, int>, VectorHash> best;  // key -> (g, id)
  std::set<std::tuple<long, int, long, int>> open;                            // (f, conflicts, -g, id)

  auto heuristic = [&](const std::vector<int>& key, int t) {
    long sum = 0;
    const int done = key[static_cast<std::size_t>(m)];
    for (int i = 0; i < m; ++i) {
      if ((done >> i) & 1) continue;
      const int d = h[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])][static_cast<std::size_t>(key[static_cast<std::size_t>(i)])];
      sum += std::max(d, ready[static_cast<std::size_t>(i)] - t);
    }
    return sum;
  };
  auto push = [&](std::vector<int> key, int t, long g, int conflicts, int parent) {
    key[static_cast<std::size_t>(m) + 1] = std::min(t, inert);
    auto it = best.find(key);
    if (it != best.end() && it->second.first <= g) return;
    const int id = static_cast<int>(nodes.size());
    const long f = g + heuristic(key, t);
    best[key] = {g, id};
    nodes.push_back({std::move(key), t, g, conflicts, parent});
    open.insert({f, conflicts, -g, id});
  };

  std::vector<int> key0(static_cast<std::size_t>(m) + 2, 0);
  for (int i = 0; i < m; ++i) {
    const int a = members[static_cast<std::size_t>(i)];
    key0[static_cast<std::size_t>(i)] = start[static_cast<std::size_t>(a)];
    if (cons[static_cast<std::size_t>(i)].vertex_blocked(start[static_cast<std::size_t>(a)], 0)) return JointOutcome::Infeasible;
  }
  push(key0, 0, 0, 0, -1);

  const int all_done = (1 << m) - 1;
  std::vector<int> next(static_cast<std::size_t>(m));
  std::size_t expanded = 0;
  while (!open.empty()) {
    if (clock.tick()) throw OutOfBudget{};
    if (++expanded > cap) return JointOutcome::TooLarge;
    const auto [f, cf, neg_g, id] = *open.begin();
    open.erase(open.begin());
    const Node cur = nodes[static_cast<std::size_t>(id)];
    if (best[cur.key].second != id) continue;  // stale entry
    const int done = cur.key[static_cast<std::size_t>(m)];

    if (done == all_done) {
      // Rebuild the per-agent paths up to each agent's done time.
      std::vector<int> chain;
      for (int i = id; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) chain.push_back(i);
      std::reverse(chain.begin(), chain.end());
      out.paths.assign(static_cast<std::size_t>(m), {});
      out.cost = cur.g;
      // Each path ends at the step its agent was parked.
      for (int i = 0; i < m; ++i) {
        int done_time = cur.t;
        for (int nid : chain) {
          const Node& nd = nodes[static_cast<std::size_t>(nid)];
          if ((nd.key[static_cast<std::size_t>(m)] >> i) & 1) {
            done_time = nd.t;
            break;
          }
        }
        Path full;
        int last_t = -1;
        for (int nid : chain) {
          const Node& nd = nodes[static_cast<std::size_t>(nid)];
          if (nd.t == last_t) continue;
          last_t = nd.t;
          if (nd.t > done_time) break;
          full.push_back(nd.key[static_cast<std::size_t>(i)]);
        }
        out.paths[static_cast<std::size_t>(i)] = std::move(full);
      }
      return JointOutcome::Found;
    }

    // Zero-cost: park one agent for good.
    for (int i = 0; i < m; ++i) {
      if ((done >> i) & 1) continue;
      const int a = members[static_cast<std::size_t>(i)];
      if (cur.key[static_cast<std::size_t>(i)] != goal[static_cast<std::size_t>(a)] || cur.t < ready[static_cast<std::size_t>(i)]) continue;
      std::vector<int> k = cur.key;
      k[static_cast<std::size_t>(m)] = done | (1 << i);
      push(std::move(k), cur.t, cur.g, cur.conflicts, id);
    }

    // One time step for everybody.
    const int t = cur.t + 1;
    const long step_cost = m - std::popcount(static_cast<unsigned>(done));
    auto recurse = [&](auto&& self, int i, int conflicts) -> void {
      if (i == m) {
        std::vector<int> k = cur.key;
        for (int j = 0; j < m; ++j) k[static_cast<std::size_t>(j)] = next[static_cast<std::size_t>(j)];
        push(std::move(k), t, cur.g + step_cost, conflicts, id);
        return;
      }
      const int from = cur.key[static_cast<std::size_t>(i)];
      auto try_cell = [&](int v) {
        const AgentConstraints& c = cons[static_cast<std::size_t>(i)];
        if (c.vertex_blocked(v, t)) return;
        if (v != from && c.edge_blocked(from, v, t)) return;
        for (int j = 0; j < i; ++j) {
          if (next[static_cast<std::size_t>(j)] == v) return;
          if (next[static_cast<std::size_t>(j)] == from && cur.key[static_cast<std::size_t>(j)] == v) return;
        }
        int extra = 0;
        for (std::size_t o = 0; o < paths.size(); ++o) {
          if (in_group[o] || paths[o].empty()) continue;
          if (at(paths[o], t) == v) ++extra;
          else if (v != from && at(paths[o], t) == from && at(paths[o], t - 1) == v) ++extra;
        }
        next[static_cast<std::size_t>(i)] = v;
        self(self, i + 1, conflicts + extra);
      };
      try_cell(from);
      if ((done >> i) & 1) return;
      for (int nb : graph.neighbors(from)) try_cell(nb);
    };
    recurse(recurse, 0, cur.conflicts);
  }
  return JointOutcome::Infeasible;
}

struct HighNode {
  int id;
  int parent;
  std::optional<Constraint> added;
  std::vector<Path> paths;
  std::vector<int> group;        // representative (smallest member) per agent
  std::vector<long> lower;       // lower bound per group, stored at the representative
  std::vector<int> pair_count;   // conflicts split so far on this branch, per agent pair
  long cost = 0;
  long lb = 0;
  int conflicts = 0;
};

// Groups that have split on this many conflicts are planned jointly.
constexpr int kMergeThreshold = 3;
constexpr std::size_t kJointCap = 200'000;

class Ecbs {
 public:
  Ecbs(const MAPFInstance& inst, double w, detail::Deadline& clock)
      : graph_(inst.area), w_(w), clock_(clock) {
    for (const InstanceAgent& a : inst.agents) {
      start_.push_back(graph_.vertex(a.start));
      goal_.push_back(graph_.vertex(a.goal));
      h_.push_back(graph_.distances_from(goal_.back()));
    }
    n_ = static_cast<int>(start_.size());
    free_cells_ = static_cast<int>(inst.area.free_count());
  }

  std::optional<std::vector<Path>> solve() {
    HighNode root;
    root.id = 0;
    root.parent = -1;
    root.paths.assign(static_cast<std::size_t>(n_), {});
    root.lower.assign(static_cast<std::size_t>(n_), 0);
    root.pair_count.assign(static_cast<std::size_t>(n_ * n_), 0);
    for (int a = 0; a < n_; ++a) root.group.push_back(a);
    for (int a = 0; a < n_; ++a) {
      if (h_[static_cast<std::size_t>(a)][static_cast<std::size_t>(start_[static_cast<std::size_t>(a)])] == kUnreached) {
        return std::nullopt;
      }
      if (replan(root, a) != JointOutcome::Found) return std::nullopt;
    }
    finish(root);
    add(std::move(root));

    while (!open_.empty()) {
      if (clock_.tick()) throw OutOfBudget{};
      refresh_focal();
      const int id = std::get<2>(*focal_.begin());
      focal_.erase(focal_.begin());
      const HighNode& node = *nodes_[static_cast<std::size_t>(id)];
      open_.erase({node.lb, id});
      by_cost_.erase({node.cost, id});

      const auto conflict = first_conflict(node.paths);
      if (!conflict) return node.paths;
      const Conflict& c = *conflict;
      const int ga = node.group[static_cast<std::size_t>(c.a)];
      const int gb = node.group[static_cast<std::size_t>(c.b)];

      if (group_pair_count(node, ga, gb) >= kMergeThreshold && !unmergeable_.count({std::min(ga, gb), std::max(ga, gb)})) {
        HighNode child = spawn(node, id);
        const int rep = std::min(ga, gb);
        const int other = std::max(ga, gb);
        child.lower[static_cast<std::size_t>(rep)] += child.lower[static_cast<std::size_t>(other)];
        child.lower[static_cast<std::size_t>(other)] = 0;
        for (int& g : child.group) {
          if (g == other) g = rep;
        }
        const JointOutcome res = replan(child, rep);
        if (res == JointOutcome::Found) {
          finish(child);
          add(std::move(child));
          continue;
        }
        if (res == JointOutcome::Infeasible) continue;  // the node itself is a dead end
        unmergeable_.insert({rep, other});
      }

      for (int side = 0; side < 2; ++side) {
        HighNode child = spawn(node, id);
        ++child.pair_count[static_cast<std::size_t>(c.a * n_ + c.b)];
        if (c.edge) {
          child.added = side == 0 ? Constraint{c.a, true, c.u, c.v, c.time} : Constraint{c.b, true, c.v, c.u, c.time};
        } else {
          child.added = Constraint{side == 0 ? c.a : c.b, false, c.u, c.u, c.time};
        }
        if (replan(child, child.group[static_cast<std::size_t>(child.added->agent)]) != JointOutcome::Found) continue;
        finish(child);
        add(std::move(child));
      }
    }
    return std::nullopt;
  }

 private:
  HighNode spawn(const HighNode& node, int id) const {
    HighNode child;
    child.id = static_cast<int>(nodes_.size());
    child.parent = id;
    child.paths = node.paths;
    child.group = node.group;
    child.lower = node.lower;
    child.pair_count = node.pair_count;
    return child;
  }

  int group_pair_count(const HighNode& node, int ga, int gb) const {
    int total = 0;
    for (int a = 0; a < n_; ++a) {
      for (int b = a + 1; b < n_; ++b) {
        const int x = node.group[static_cast<std::size_t>(a)];
        const int y = node.group[static_cast<std::size_t>(b)];
        if ((x == ga && y == gb) || (x == gb && y == ga)) total += node.pair_count[static_cast<std::size_t>(a * n_ + b)];
      }
    }
    return total;
  }

  AgentConstraints collect(const HighNode& node, int agent) const {
    AgentConstraints out;
    const Constraint* c = node.added ? &*node.added : nullptr;
    int parent = node.parent;
    while (true) {
      if (c && c->agent == agent) {
        if (c->edge) {
          out.edge.insert(key3(c->from, c->to, c->time));
        } else {
          out.vertex.insert(key3(0, c->to, c->time));
          if (c->to == goal_[static_cast<std::size_t>(agent)]) out.goal_last = std::max(out.goal_last, c->time);
        }
        out.max_time = std::max(out.max_time, c->time);
      }
      if (parent < 0) break;
      const HighNode& p = *nodes_[static_cast<std::size_t>(parent)];
      c = p.added ? &*p.added : nullptr;
      parent = p.parent;
    }
    return out;
  }

  // Replans every member of group `rep`; the group's bound may only grow.
  JointOutcome replan(HighNode& node, int rep) {
    std::vector<int> members;
    for (int a = 0; a < n_; ++a) {
      if (node.group[static_cast<std::size_t>(a)] == rep) members.push_back(a);
    }
    long& lower = node.lower[static_cast<std::size_t>(rep)];
    if (members.size() == 1) {
      const int agent = members.front();
      const AgentConstraints cons = collect(node, agent);
      auto res = low_level(graph_, h_[static_cast<std::size_t>(agent)], start_[static_cast<std::size_t>(agent)],
                           goal_[static_cast<std::size_t>(agent)], cons, node.paths, agent, w_, free_cells_, clock_);
      if (!res) return JointOutcome::Infeasible;
      node.paths[static_cast<std::size_t>(agent)] = std::move(res->path);
      lower = std::max(lower, static_cast<long>(res->lower_bound));
      return JointOutcome::Found;
    }
    std::vector<AgentConstraints> cons;
    for (int a : members) cons.push_back(collect(node, a));
    JointResult res;
    const JointOutcome outcome =
        joint_low_level(graph_, members, h_, start_, goal_, cons, node.paths, kJointCap, clock_, res);
    if (outcome != JointOutcome::Found) return outcome;
    for (std::size_t i = 0; i < members.size(); ++i) node.paths[static_cast<std::size_t>(members[i])] = std::move(res.paths[i]);
    lower = std::max(lower, res.cost);
    return JointOutcome::Found;
  }

  void finish(HighNode& node) const {
    node.cost = 0;
    node.lb = 0;
    for (std::size_t a = 0; a < node.paths.size(); ++a) {
      node.cost += path_cost(node.paths[a]);
      node.lb += node.lower[a];
    }
    node.conflicts = count_conflicts(node.paths);
  }

  void add(HighNode node) {
    const int id = node.id;
    open_.insert({node.lb, id});
    by_cost_.insert({node.cost, id});
    if (static_cast<double>(node.cost) <= bound_) focal_.insert({node.conflicts, node.cost, id});
    nodes_.push_back(std::make_unique<HighNode>(std::move(node)));
  }

  void refresh_focal() {
    const double new_bound = w_ * static_cast<double>(std::get<0>(*open_.begin()));
    if (new_bound <= bound_) return;
    for (const auto& [cost, id] : by_cost_) {
      if (static_cast<double>(cost) > new_bound) break;
      if (static_cast<double>(cost) <= bound_) continue;
      const HighNode& nd = *nodes_[static_cast<std::size_t>(id)];
      focal_.insert({nd.conflicts, nd.cost, id});
    }
    bound_ = new_bound;
  }

  AreaGraph graph_;
  double w_;
  detail::Deadline& clock_;
  std::vector<int> start_;
  std::vector<int> goal_;
  std::vector<std::vector<int>> h_;
  int n_ = 0;
  int free_cells_ = 0;

  std::vector<std::unique_ptr<HighNode>> nodes_;
  std::set<std::tuple<long, int>> open_;          // (lb, id)
  std::set<std::tuple<long, int>> by_cost_;       // (cost, id), open nodes only
  std::set<std::tuple<int, long, int>> focal_;    // (conflicts, cost, id)
  std::set<std::pair<int, int>> unmergeable_;     // joint search too large
  double bound_ = -1.0;
};

}  // namespace

SolveResult solve_ecbs(const MAPFInstance& inst, double w, const SolverBudget& budget) {
  if (!(w >= 1.0)) throw std::invalid_argument("solve_ecbs: w must be >= 1");
  detail::Deadline clock(budget);
  SolveResult result;
  if (!check_instance(inst).empty()) {
    result.status = SolveStatus::Unsolvable;
    return result;
  }
  try {
    Ecbs search(inst, w, clock);
    auto paths = search.solve();
    if (paths) {
      const AreaGraph graph(inst.area);
      std::vector<DiscretePlan> plans;
      for (const Path& p : *paths) {
        DiscretePlan plan;
        for (int v : p) plan.push_back(graph.cell(v));
        plans.push_back(std::move(plan));
      }
      result.solution = make_solution(std::move(plans));
      result.status = SolveStatus::Solved;
    } else {
      result.status = SolveStatus::Unsolvable;
    }
  } catch (const OutOfBudget&) {
    result.status = SolveStatus::Timeout;
  }
  result.expansions = clock.expansions();
  result.seconds = clock.elapsed();
  return result;
}

}  // namespace mapfnav
