#include <random>

#include "doctest.h"
#include "mapfnav/mapf_solvers.hpp"
#include "oracles.hpp"

using namespace mapfnav;

namespace {

MAPFInstance make(int w, int h, std::vector<Cell> blocked, std::vector<std::pair<Cell, Cell>> agents) {
  GridMap g(w, h, blocked);
  MAPFInstance inst;
  inst.area = whole_map_area(g);
  int id = 0;
  for (const auto& [s, t] : agents) inst.agents.push_back({id++, s, t, center_of(t)});
  return inst;
}

// At least two free cells beyond the agents in every component holding one.
bool pr_precondition(const MAPFInstance& inst) {
  for (const auto& a : inst.agents) {
    const auto reach = oracle::bfs(inst.area, a.start);
    std::size_t agents_inside = 0;
    for (const auto& b : inst.agents) agents_inside += reach.count(b.start);
    if (reach.size() < agents_inside + 2) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("validator") {
  const MAPFInstance one = make(5, 1, {}, {{{0, 0}, {4, 0}}});
  CHECK(validate_solution(one, make_solution({{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}})).empty());

  const MAPFInstance cross = make(5, 5, {}, {{{0, 2}, {4, 2}}, {{2, 0}, {2, 4}}});
  const auto vc = validate_solution(cross, make_solution({{{0, 2}, {1, 2}, {1, 2}, {2, 2}, {3, 2}, {4, 2}},
                                                          {{2, 0}, {2, 0}, {2, 1}, {2, 2}, {2, 3}, {2, 4}}}));
  REQUIRE(vc.size() == 1);
  CHECK(vc[0].kind == ViolationKind::VertexConflict);
  CHECK(vc[0].step == 3);

  const MAPFInstance line = make(6, 1, {}, {{{0, 0}, {5, 0}}, {{5, 0}, {0, 0}}});
  const auto ec = validate_solution(line, make_solution({{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}},
                                                         {{5, 0}, {4, 0}, {3, 0}, {2, 0}, {1, 0}, {0, 0}}}));
  // Swap over the edge (2,0)-(3,0) between steps 2 and 3.
  REQUIRE(ec.size() == 1);
  CHECK(ec[0].kind == ViolationKind::EdgeConflict);
  CHECK(ec[0].step == 2);

  // Following into a vacated cell is allowed.
  const MAPFInstance follow = make(4, 1, {}, {{{1, 0}, {2, 0}}, {{0, 0}, {1, 0}}});
  CHECK(validate_solution(follow, make_solution({{{1, 0}, {2, 0}}, {{0, 0}, {1, 0}}})).empty());

  MAPFSolution bad = make_solution({{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}});
  bad.flowtime = 3;
  CHECK(validate_solution(one, bad).front().kind == ViolationKind::CostMismatch);
  CHECK(validate_solution(one, make_solution({{{0, 0}, {2, 0}, {3, 0}, {4, 0}}})).front().kind ==
        ViolationKind::IllegalMove);
}

TEST_CASE("validator agrees with the reference check on mutated solutions") {
  std::mt19937_64 rng(4);
  int compared = 0, invalid = 0;
  for (int t = 0; t < 400; ++t) {
    auto inst = oracle::random_instance(rng, 5, 5, 0.2, 3);
    if (!inst || !pr_precondition(*inst)) continue;
    const auto res = solve_push_and_rotate(*inst);
    if (!res.solved()) continue;
    MAPFSolution sol = *res.solution;
    std::uniform_int_distribution<int> which(0, 3);
    const int mode = which(rng);
    if (mode > 0 && sol.makespan > 0) {
      auto& p = sol.plans[rng() % sol.plans.size()];
      const std::size_t k = rng() % p.size();
      if (mode == 1) p[k] = inst->agents[rng() % inst->agents.size()].start;
      if (mode == 2) p[k] = Cell{p[k].col + 1, p[k].row};
      if (mode == 3 && k + 1 < p.size()) std::swap(p[k], p[k + 1]);
    }
    const bool ref = oracle::valid_solution(*inst, sol);
    CHECK(validate_solution(*inst, sol).empty() == ref);
    invalid += ref ? 0 : 1;
    ++compared;
  }
  CHECK(compared > 100);
  CHECK(invalid > 10);
}

TEST_CASE("padding") {
  const MAPFSolution s = make_solution({{{0, 0}, {1, 0}, {1, 0}}, {{3, 0}, {3, 1}, {3, 2}, {3, 3}}});
  CHECK(s.makespan == 3);
  CHECK(s.flowtime == 1 + 3);
  for (const auto& p : s.plans) {
    CHECK(p.size() == 4);
  }
  CHECK(s.plans[0][3] == Cell{1, 0});
}

TEST_CASE("Push and Rotate") {
  SUBCASE("single agent") {
    const MAPFInstance inst = make(3, 3, {}, {{{0, 0}, {2, 2}}});
    const auto r = solve_push_and_rotate(inst);
    REQUIRE(r.solved());
    CHECK(r.solution->flowtime == 4);
    CHECK(validate_solution(inst, *r.solution).empty());
  }
  SUBCASE("swap in a 2x4 area") {
    const MAPFInstance inst = make(4, 2, {}, {{{0, 0}, {3, 0}}, {{3, 0}, {0, 0}}});
    REQUIRE(oracle::pebble_solvable(inst) == true);
    const auto r = solve_push_and_rotate(inst);
    REQUIRE(r.solved());
    CHECK(validate_solution(inst, *r.solution).empty());
  }
  SUBCASE("too few free cells") {
    const MAPFInstance inst = make(3, 1, {}, {{{0, 0}, {2, 0}}, {{2, 0}, {0, 0}}});
    CHECK(solve_push_and_rotate(inst).status == SolveStatus::PreconditionUnmet);
  }
  SUBCASE("deterministic") {
    const MAPFInstance inst = make(5, 5, {{2, 2}}, {{{0, 0}, {4, 4}}, {{4, 4}, {0, 0}}, {{0, 4}, {4, 0}}});
    CHECK(solve_push_and_rotate(inst).solution == solve_push_and_rotate(inst).solution);
  }
}

TEST_CASE("Push and Rotate solves every pebble-solvable random instance") {
  std::mt19937_64 rng(8);
  int solved = 0;
  for (int t = 0; t < 600 && solved < 80; ++t) {
    std::uniform_int_distribution<int> dim(3, 6), agents(2, 5);
    auto inst = oracle::random_instance(rng, dim(rng), dim(rng), 0.2, agents(rng));
    if (!inst || !pr_precondition(*inst) || oracle::pebble_solvable(*inst) != true) continue;
    const auto r = solve_push_and_rotate(*inst);
    REQUIRE(r.solved());
    CHECK(oracle::valid_solution(*inst, *r.solution));
    ++solved;
  }
  CHECK(solved == 80);
}

TEST_CASE("reference optimum and the library oracle agree") {
  std::mt19937_64 rng(12);
  int compared = 0;
  for (int t = 0; t < 200 && compared < 60; ++t) {
    auto inst = oracle::random_instance(rng, 4, 4, 0.2, 1 + static_cast<int>(rng() % 3));
    if (!inst) continue;
    const auto ref = oracle::optimal_flowtime(*inst);
    REQUIRE(ref);
    const auto lib = solve_optimal_oracle(*inst);
    if (*ref < 0) {
      CHECK(lib.status == SolveStatus::Unsolvable);
      continue;
    }
    REQUIRE(lib.solved());
    CHECK(lib.solution->flowtime == *ref);
    CHECK(validate_solution(*inst, *lib.solution).empty());
    ++compared;
  }
  CHECK(compared == 60);
}

TEST_CASE("optimal oracle examples") {
  const MAPFInstance one = make(6, 6, {{1, 0}, {1, 1}, {1, 2}}, {{{0, 0}, {2, 0}}});
  CHECK(solve_optimal_oracle(one).solution->flowtime == oracle::bfs(one.area, {0, 0}).at({2, 0}));

  const MAPFInstance swap = make(4, 2, {}, {{{0, 0}, {3, 0}}, {{3, 0}, {0, 0}}});
  const auto r = solve_optimal_oracle(swap);
  REQUIRE(r.solved());
  CHECK(r.solution->flowtime == *oracle::optimal_flowtime(swap));

  const MAPFInstance stuck = make(3, 1, {}, {{{0, 0}, {2, 0}}, {{2, 0}, {0, 0}}});
  CHECK(solve_optimal_oracle(stuck).status == SolveStatus::Unsolvable);
}

TEST_CASE("ECBS") {
  SUBCASE("single agent takes the BFS distance") {
    const MAPFInstance inst = make(6, 6, {{2, 1}, {2, 2}, {2, 3}, {2, 4}}, {{{0, 3}, {5, 3}}});
    const auto r = solve_ecbs(inst, 1.0);
    REQUIRE(r.solved());
    CHECK(r.solution->flowtime == oracle::bfs(inst.area, {0, 3}).at({5, 3}));
  }
  SUBCASE("two agents through one cell, w = 1") {
    // Both must pass the single gap at (2,1).
    const MAPFInstance inst =
        make(5, 3, {{2, 0}, {2, 2}}, {{{0, 1}, {4, 1}}, {{1, 0}, {3, 2}}});
    const auto r = solve_ecbs(inst, 1.0);
    REQUIRE(r.solved());
    CHECK(r.solution->flowtime == *oracle::optimal_flowtime(inst));
    CHECK(validate_solution(inst, *r.solution).empty());
  }
  SUBCASE("deterministic") {
    const MAPFInstance inst = make(5, 5, {{2, 2}}, {{{0, 0}, {4, 4}}, {{4, 4}, {0, 0}}, {{0, 4}, {4, 0}}});
    CHECK(solve_ecbs(inst, 1.5).solution == solve_ecbs(inst, 1.5).solution);
  }
}

TEST_CASE("ECBS cost bound against the reference optimum") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 80; ++t) {
    std::uniform_int_distribution<int> dim(3, 6), agents(1, 3);
    auto inst = oracle::random_instance(rng, dim(rng), dim(rng), 0.2, agents(rng));
    if (!inst) continue;
    const auto opt = oracle::optimal_flowtime(*inst);
    if (!opt || *opt < 0) continue;
    for (double w : {1.0, 1.5}) {
      const auto r = solve_ecbs(*inst, w);
      REQUIRE(r.solved());
      CHECK(static_cast<double>(r.solution->flowtime) <= w * static_cast<double>(*opt));
      CHECK(oracle::valid_solution(*inst, *r.solution));
    }
    ++checked;
  }
  CHECK(checked == 80);
}

TEST_CASE("combined solver policy") {
  const MAPFInstance inst = make(5, 5, {{2, 2}}, {{{0, 0}, {4, 4}}, {{4, 4}, {0, 0}}, {{0, 4}, {4, 0}}});
  SUBCASE("both succeed: ECBS wins") {
    const auto r = solve_combined(inst);
    REQUIRE(r.push_and_rotate.solved());
    REQUIRE(r.ecbs.solved());
    CHECK(r.used == SolverKind::ECBS);
    CHECK(r.solution == solve_ecbs(inst, 10.0).solution);
  }
  SUBCASE("ECBS cut off: Push and Rotate result") {
    CombinedConfig cfg;
    cfg.ecbs_expansions = 1;
    const auto r = solve_combined(inst, cfg);
    CHECK_FALSE(r.ecbs.solved());
    CHECK(r.used == SolverKind::PushAndRotate);
    CHECK(r.solution == r.push_and_rotate.solution);
  }
  SUBCASE("neither") {
    const MAPFInstance stuck = make(3, 1, {}, {{{0, 0}, {2, 0}}, {{2, 0}, {0, 0}}});
    CombinedConfig cfg;
    cfg.ecbs_expansions = 1;
    const auto r = solve_combined(stuck, cfg);
    CHECK(r.push_and_rotate.status == SolveStatus::PreconditionUnmet);
    CHECK(r.used == SolverKind::None);
    CHECK_FALSE(r.solution);
  }
  CHECK_THROWS_AS(solve_combined(inst, CombinedConfig{10.0, 0.0}), std::invalid_argument);
}

TEST_CASE("joint reachability") {
  CHECK(joint_reachable(make(4, 2, {}, {{{0, 0}, {3, 0}}, {{3, 0}, {0, 0}}})) == SolveStatus::Solved);
  CHECK(joint_reachable(make(3, 1, {}, {{{0, 0}, {2, 0}}, {{2, 0}, {0, 0}}})) == SolveStatus::Unsolvable);
  CHECK(oracle::pebble_solvable(make(4, 1, {}, {{{0, 0}, {3, 0}}, {{3, 0}, {0, 0}}})) == false);

  std::mt19937_64 rng(13);
  int compared = 0;
  for (int t = 0; t < 300; ++t) {
    auto inst = oracle::random_instance(rng, 4, 4, 0.25, 2 + static_cast<int>(rng() % 3));
    if (!inst) continue;
    const auto ref = oracle::pebble_solvable(*inst);
    REQUIRE(ref.has_value());
    CHECK((joint_reachable(*inst) == SolveStatus::Solved) == *ref);
    ++compared;
  }
  CHECK(compared > 200);
}
