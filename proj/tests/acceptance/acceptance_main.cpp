// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fails.
// Usage: acceptance [AC1 AC2 ...]   (no arguments: all criteria)

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "mapfnav/experiment.hpp"
#include "mapfnav/maps.hpp"
#include "mapfnav/planner.hpp"
#include "oracles.hpp"

using namespace mapfnav;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int worker_count() { return std::max(1, static_cast<int>(std::thread::hardware_concurrency())); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

GridMap rooms_map() { return load_map_file(std::string(MAPFNAV_DATA_DIR) + "/rooms-32-32-4.map"); }

bool pr_precondition(const MAPFInstance& inst) {
  for (const auto& a : inst.agents) {
    const auto reach = oracle::bfs(inst.area, a.start);
    std::size_t inside = 0;
    for (const auto& b : inst.agents) inside += reach.count(b.start);
    if (reach.size() < inside + 2) return false;
  }
  return true;
}

Outcome ac1() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> dim(2, 6), agents(1, 3);
  int instances = 0, violations = 0, unsolved = 0;
  const auto t0 = Clock::now();
  while (instances < 200) {
    auto inst = oracle::random_instance(rng, dim(rng), dim(rng), 0.2, agents(rng));
    if (!inst) continue;
    const auto opt = oracle::optimal_flowtime(*inst);
    if (!opt || *opt < 0) continue;
    ++instances;
    for (double w : {1.0, 1.5, 10.0}) {
      const auto r = solve_ecbs(*inst, w);
      if (!r.solved()) {
        ++unsolved;
        continue;
      }
      if (!(static_cast<double>(r.solution->flowtime) <= w * static_cast<double>(*opt)) ||
          !oracle::valid_solution(*inst, *r.solution)) {
        ++violations;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && unsolved == 0 && secs < 120.0,
          fmt("%d instances x w{1,1.5,10}: %d bound/validity violations, %d unsolved, %.1f s", instances,
              violations, unsolved, secs)};
}

Outcome ac2() {
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> dim(2, 6), agents(1, 5);
  int instances = 0, failed = 0, slow = 0, dirty = 0;
  double worst = 0.0;
  const auto t0 = Clock::now();
  while (instances < 200) {
    auto inst = oracle::random_instance(rng, dim(rng), dim(rng), 0.2, agents(rng));
    if (!inst || !pr_precondition(*inst) || oracle::pebble_solvable(*inst) != true) continue;
    ++instances;
    const auto s0 = Clock::now();
    const auto r = solve_push_and_rotate(*inst);
    const double secs = seconds_since(s0);
    worst = std::max(worst, secs);
    if (secs >= 1.0) ++slow;
    if (!r.solved()) {
      ++failed;
      continue;
    }
    if (!validate_solution(*inst, *r.solution).empty() || !oracle::valid_solution(*inst, *r.solution)) ++dirty;
  }
  return {failed == 0 && slow == 0 && dirty == 0,
          fmt("%d joint-BFS-solvable instances: %d unsolved, %d invalid, %d over 1 s (slowest %.4f s), total %.1f s",
              instances, failed, dirty, slow, worst, seconds_since(t0))};
}

Outcome ac3() {
  ExperimentSpec s;
  s.map = "rooms-32-32-4";
  s.agent_counts = {20};
  s.instances = 100;
  s.algorithms = {Algorithm::OrcaStarMapf};
  s.placement = Placement::Random;
  s.threads = worker_count();
  const auto t0 = Clock::now();
  const BatchReport r = run_batch(rooms_map(), s);
  const double secs = seconds_since(t0);
  long collisions = 0, audits = 0;
  int with_collision = 0, successes = 0;
  for (const BatchRow& row : r.rows) {
    collisions += row.result.collisions;
    audits += row.result.audit.total();
    with_collision += row.result.collisions > 0 ? 1 : 0;
    successes += row.result.success ? 1 : 0;
  }
  return {with_collision == 0 && secs < 300.0,
          fmt("100 runs x 20 agents on rooms 32x32: %ld collisions in %d runs (audit violations %ld, %d successes), "
              "%.1f s",
              collisions, with_collision, audits, successes, secs)};
}

// Shared by AC4 and AC5.
BatchReport gaps_report;
double gaps_seconds = 0.0;

void run_gaps() {
  if (!gaps_report.rows.empty()) return;
  ExperimentSpec s;
  s.map = "gaps:32:1";
  s.agent_counts = {12};
  s.instances = 50;
  s.placement = Placement::Halls;
  s.threads = worker_count();
  const auto t0 = Clock::now();
  gaps_report = run_batch(make_gaps(32, 1), s);
  gaps_seconds = seconds_since(t0);
}

Outcome ac4() {
  run_gaps();
  double mapf = 0.0, orca = 0.0;
  for (const AggregateRow& a : gaps_report.aggregates) {
    (a.algorithm == Algorithm::OrcaStarMapf ? mapf : orca) = a.success_rate;
  }
  long collisions = 0;
  for (const BatchRow& row : gaps_report.rows) collisions += row.result.collisions;
  return {mapf >= 0.9 && orca <= 0.2 && gaps_seconds < 600.0,
          fmt("gaps(32,1), 12 agents, 50 seeds: ORCA*+MAPF %.0f%% (need >= 90%%), ORCA* %.0f%% (need <= 20%%), "
              "%ld collisions, %.1f s",
              100 * mapf, 100 * orca, collisions, gaps_seconds)};
}

Outcome ac5() {
  run_gaps();
  long n = 0;
  double pr = 0.0, ecbs = 0.0;
  long logged = 0;
  for (const BatchRow& row : gaps_report.rows) {
    if (row.algorithm != Algorithm::OrcaStarMapf) continue;
    for (const SolverLogEntry& e : row.result.solver_log) {
      ++logged;
      if (e.pr_status != SolveStatus::Solved || e.ecbs_status != SolveStatus::Solved) continue;
      ++n;
      pr += static_cast<double>(e.pr_flowtime);
      ecbs += static_cast<double>(e.ecbs_flowtime);
    }
  }
  if (n == 0) return {false, fmt("%ld MAPF instances logged, none solved by both solvers", logged)};
  return {pr / n >= ecbs / n, fmt("%ld of %ld logged instances solved by both: mean flowtime P&R %.2f, ECBS %.2f", n,
                                  logged, pr / n, ecbs / n)};
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = (static_cast<double>(i + j) / 2.0) + 1.0;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxx > 0 && syy > 0 ? sxy / std::sqrt(sxx * syy) : 0.0;
}

Outcome ac6() {
  ExperimentSpec s;
  s.map = "rooms-32-32-4";
  s.agent_counts = {5, 10, 15, 20};
  s.instances = 25;
  s.algorithms = {Algorithm::OrcaStarMapf};
  s.placement = Placement::Random;
  s.threads = worker_count();
  const auto t0 = Clock::now();
  const BatchReport r = run_batch(rooms_map(), s);
  std::vector<double> counts, means;
  std::string listing;
  for (const AggregateRow& a : r.aggregates) {
    counts.push_back(a.agents);
    means.push_back(a.mean_n_mapf);
    listing += fmt("%s%d:%.2f", listing.empty() ? "" : " ", a.agents, a.mean_n_mapf);
  }
  const double rho = spearman(counts, means);
  return {rho > 0.9, fmt("rooms map, 25 seeds each, mean N_mapf by agents {%s}: Spearman %.3f, %.1f s",
                         listing.c_str(), rho, seconds_since(t0))};
}

Outcome ac7() {
  const auto t0 = Clock::now();
  std::vector<std::string> failures;
  std::mt19937_64 rng(7007);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto random_grid = [&](int size, double share) {
    GridMap g(size, size);
    for (int r = 0; r < size; ++r) {
      for (int c = 0; c < size; ++c) g.set_blocked({c, r}, u01(rng) < share);
    }
    return g;
  };

  int los_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const GridMap g = random_grid(16, 0.2);
    const Position a{16 * u01(rng), 16 * u01(rng)}, b{16 * u01(rng), 16 * u01(rng)};
    const bool ab = line_of_sight(g, a, b);
    if (ab != line_of_sight(g, b, a) || ab != oracle::line_of_sight(g, a, b)) ++los_bad;
  }
  if (los_bad) failures.push_back(fmt("line of sight: %d", los_bad));

  int dom_bad = 0, dom_n = 0;
  while (dom_n < 1000) {
    const GridMap g = random_grid(16, 0.2);
    const Cell s{static_cast<int>(rng() % 16), static_cast<int>(rng() % 16)};
    const Cell t{static_cast<int>(rng() % 16), static_cast<int>(rng() % 16)};
    if (g.blocked(s) || g.blocked(t) || std::isinf(oracle::dijkstra8(g, s, t))) continue;
    ++dom_n;
    if (plan_theta_star(g, s, t).length() > plan_astar(g, s, t).length() + 1e-9) ++dom_bad;
  }
  if (dom_bad) failures.push_back(fmt("Theta* dominance: %d", dom_bad));

  int lp_bad = 0, lp_n = 0;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (lp_n < 50) {
    std::vector<HalfPlane> hs;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) hs.push_back({Vec2{u(rng), u(rng)} * 0.6, normalize(Vec2{u(rng), u(rng)})});
    const Vec2 pref{u(rng) * 1.2, u(rng) * 1.2};
    const auto sampled = oracle::sampled_velocity(hs, pref, 1.0, 1000);
    if (!sampled) continue;
    ++lp_n;
    const Vec2 v = solve_velocity(hs, pref, 1.0);
    const double dv = distance(v, pref), ds = distance(*sampled, pref);
    const auto exact = oracle::exact_velocity(hs, pref, 1.0);
    if (dv > ds + 1e-9 || ds - dv >= 1e-2 || !exact || distance(v, *exact) >= 1e-6) ++lp_bad;
  }
  if (lp_bad) failures.push_back(fmt("LP vs sampling: %d", lp_bad));

  int val_bad = 0, val_n = 0;
  while (val_n < 300) {
    auto inst = oracle::random_instance(rng, 5, 5, 0.2, 1 + static_cast<int>(rng() % 3));
    if (!inst || !pr_precondition(*inst)) continue;
    const auto r = solve_push_and_rotate(*inst);
    if (!r.solved()) continue;
    MAPFSolution sol = *r.solution;
    auto& p = sol.plans[rng() % sol.plans.size()];
    const std::size_t k = rng() % p.size();
    switch (rng() % 4) {
      case 1: p[k] = inst->agents[rng() % inst->agents.size()].start; break;
      case 2: p[k].col += 1; break;
      case 3:
        if (k + 1 < p.size()) std::swap(p[k], p[k + 1]);
        break;
      default: break;
    }
    ++val_n;
    if (validate_solution(*inst, sol).empty() != oracle::valid_solution(*inst, sol)) ++val_bad;
  }
  if (val_bad) failures.push_back(fmt("validator: %d", val_bad));

  // Episode hashing: copies hash equal, any change is seen; no mismatch in a run.
  MAPFEpisode e;
  e.instance.area = whole_map_area(GridMap(4, 4));
  e.instance.agents = {{0, {0, 0}, {3, 3}, {3.5, 3.5}}};
  e.solution = make_solution({{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {3, 1}, {3, 2}, {3, 3}}});
  e.participants = {0};
  MAPFEpisode f = e;
  f.solution.plans[0][3] = {2, 1};
  if (episode_hash(e) != episode_hash(MAPFEpisode(e)) || episode_hash(e) == episode_hash(f)) {
    failures.push_back("episode hash");
  }

  const GridMap gaps = make_gaps(16, 1);
  long audits = 0, hash_diff = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Scenario sc = generate_instance(gaps, Placement::Halls, 8, seed);
    SimConfig cfg;
    cfg.seed = seed;
    cfg.pr_expansions = cfg.ecbs_expansions = 200000;
    const RunResult a = run(gaps, sc, cfg);
    const RunResult b = run(gaps, sc, cfg);
    audits += a.audit.total();
    if (a.trajectory_hash != b.trajectory_hash || a.steps != b.steps || a.flowtime != b.flowtime ||
        a.n_mapf_calls != b.n_mapf_calls) {
      ++hash_diff;
    }
  }
  if (audits) failures.push_back(fmt("simulation audits: %ld", audits));
  if (hash_diff) failures.push_back(fmt("replay differences: %ld", hash_diff));

  const double secs = seconds_since(t0);
  std::string what;
  for (const auto& s : failures) what += (what.empty() ? "" : "; ") + s;
  return {failures.empty() && secs < 300.0,
          fmt("LOS 1000, Theta*<=A* %d, LP %d, validator %d, episode hash, 6 replays: %s, %.1f s", dom_n, lp_n, val_n,
              failures.empty() ? "all clean" : what.c_str(), secs)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}};
  std::set<std::string> selected(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!selected.empty() && !selected.count(name)) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    std::printf("%s %s %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
