#include "doctest.h"
#include "mapfnav/controller.hpp"
#include "mapfnav/simulator.hpp"

using namespace mapfnav;

namespace {

MAPFEpisode episode_with(std::vector<DiscretePlan> plans) {
  MAPFEpisode e;
  e.event = 1;
  e.instance.area = whole_map_area(GridMap(6, 6));
  for (std::size_t k = 0; k < plans.size(); ++k) {
    e.instance.agents.push_back({static_cast<int>(k), plans[k].front(), plans[k].back(), center_of(plans[k].back())});
    e.participants.push_back(static_cast<int>(k));
  }
  e.solution = make_solution(std::move(plans));
  e.solver = SolverKind::ECBS;
  return e;
}

AgentState in_episode(int id, const MAPFEpisode& e, Mode m) {
  AgentState a;
  a.id = id;
  a.mode = m;
  a.episode = e;
  a.plan_index = id;
  a.position = a.mapf_start();
  return a;
}

}  // namespace

TEST_CASE("substeps") {
  CHECK(substeps_per_move(0.1) == 10);
  CHECK(substeps_per_move(0.25) == 4);
  CHECK(substeps_per_move(0.3) == 4);
  CHECK(substeps_per_move(1.0) == 1);
}

TEST_CASE("mode transition graph") {
  CHECK(transition_allowed(Mode::Normal, Mode::MoveToMAPFStart));
  CHECK(transition_allowed(Mode::MoveToMAPFStart, Mode::MAPF));
  CHECK(transition_allowed(Mode::MAPF, Mode::Normal));
  CHECK(transition_allowed(Mode::MAPF, Mode::MoveToMAPFStart));
  CHECK(transition_allowed(Mode::MoveToMAPFStart, Mode::Normal));
  CHECK_FALSE(transition_allowed(Mode::Normal, Mode::MAPF));
}

TEST_CASE("plan following velocities") {
  const MAPFEpisode e = episode_with({{{1, 1}, {1, 1}, {2, 1}}});
  AgentState a = in_episode(0, e, Mode::MAPF);
  const int k = 10;
  // Wait step: ten zero commands.
  for (a.sub_step = 0; a.sub_step < k; ++a.sub_step) CHECK(plan_velocity(a, k, 0.1) == Vec2{});
  // Move step: ten commands of 0.1 towards the next center.
  a.sync_step = 1;
  for (a.sub_step = 0; a.sub_step < k; ++a.sub_step) {
    const Vec2 v = plan_velocity(a, k, 0.1);
    CHECK(v.x == doctest::Approx(0.1));
    CHECK(v.y == 0.0);
    a.position += v;
  }
  CHECK(a.position.x == doctest::Approx(2.5).epsilon(1e-12));
  a.sync_step = 2;
  a.sub_step = 0;
  CHECK(plan_velocity(a, k, 0.1) == Vec2{});
}

TEST_CASE("plan_point interpolation") {
  const DiscretePlan p{{0, 0}, {1, 0}, {1, 1}};
  CHECK(plan_point(p, 0, 0, 10) == Position{0.5, 0.5});
  CHECK(plan_point(p, 0, 5, 10).x == doctest::Approx(1.0));
  CHECK(plan_point(p, 1, 10, 10) == Position{1.5, 1.5});
  CHECK(plan_point(p, 7, 0, 10) == Position{1.5, 1.5});
}

TEST_CASE("readiness and completion") {
  const MAPFEpisode e = episode_with({{{0, 0}, {1, 0}}, {{3, 3}, {3, 4}}});
  std::vector<AgentState> as{in_episode(0, e, Mode::MoveToMAPFStart), in_episode(1, e, Mode::MoveToMAPFStart)};
  CHECK(all_ready(e, as));
  as[1].position += Vec2{2.0, 0.0};
  CHECK_FALSE(all_ready(e, as));

  const MAPFEpisode solo = episode_with({{{2, 2}, {2, 3}}});
  const std::vector<AgentState> one{in_episode(0, solo, Mode::MoveToMAPFStart)};
  CHECK(all_ready(solo, one));

  as[0].mode = as[1].mode = Mode::MAPF;
  as[0].sync_step = 1;
  CHECK_FALSE(all_done(e, as));
  as[1].sync_step = 1;
  CHECK(all_done(e, as));
}

TEST_CASE("step_agent by mode") {
  const GridMap g(10, 10);
  const ObstacleSet obs(g);
  ControlContext ctx{&g, &obs, AgentParams{}, OrcaConfig{}};

  SUBCASE("normal mode in open space") {
    AgentState a;
    a.position = {1.5, 1.5};
    a.path = plan_theta_star(g, {1, 1}, {8, 1});
    const std::vector<AgentState> snap{a};
    const Vec2 v = step_agent(a, snap, ctx);
    CHECK(v.x == doctest::Approx(0.1));
    CHECK(v.y == doctest::Approx(0.0));
  }
  SUBCASE("own plan finished while another participant still moves") {
    const MAPFEpisode e = episode_with({{{0, 0}, {1, 0}}, {{3, 3}, {3, 4}, {3, 5}}});
    std::vector<AgentState> as{in_episode(0, e, Mode::MAPF), in_episode(1, e, Mode::MAPF)};
    as[0].sync_step = 2;
    as[0].position = center_of({1, 0});
    as[1].sync_step = 1;
    CHECK(step_agent(as[0], as, ctx) == Vec2{});
    CHECK(as[0].mode == Mode::MAPF);
    CHECK_FALSE(all_done(e, as));
  }
  SUBCASE("move to start aims at the start, then holds") {
    const MAPFEpisode e = episode_with({{{4, 4}, {4, 5}}});
    AgentState a = in_episode(0, e, Mode::MoveToMAPFStart);
    a.position = {2.5, 4.5};
    const std::vector<AgentState> snap{a};
    const Vec2 v = step_agent(a, snap, ctx);
    CHECK(v.x == doctest::Approx(0.1));
    a.position = {4.52, 4.5};
    CHECK(norm(step_agent(a, std::vector<AgentState>{a}, ctx)) < 1e-12);
  }
  SUBCASE("parked agent stays put") {
    AgentState a;
    a.finished = true;
    CHECK(step_agent(a, std::vector<AgentState>{a}, ctx) == Vec2{});
  }
}

TEST_CASE("neighbour views and responsibility") {
  std::vector<AgentState> as(4);
  for (int i = 0; i < 4; ++i) {
    as[static_cast<std::size_t>(i)].id = i;
    as[static_cast<std::size_t>(i)].position = {1.0 + i, 1.0};
  }
  as[2].finished = true;
  as[3].position = {9.0, 9.0};
  const auto views = neighbor_views(as[0], as, 3.0, 0.49);
  REQUIRE(views.size() == 2);
  CHECK(views[0].id == 1);
  CHECK(views[0].responsibility == 0.5);
  CHECK(views[1].id == 2);
  CHECK(views[1].responsibility == 1.0);
}

TEST_CASE("episode hash covers every field") {
  const MAPFEpisode base = episode_with({{{0, 0}, {1, 0}}, {{3, 3}, {3, 4}}});
  const std::uint64_t h = episode_hash(base);
  CHECK(episode_hash(base) == h);
  MAPFEpisode copy = base;
  CHECK(episode_hash(copy) == h);

  auto changed = [&](auto mutate) {
    MAPFEpisode e = base;
    mutate(e);
    return episode_hash(e) != h;
  };
  CHECK(changed([](MAPFEpisode& e) { e.event = 2; }));
  CHECK(changed([](MAPFEpisode& e) { e.instance.area.blocked[7] = 1; }));
  CHECK(changed([](MAPFEpisode& e) { e.instance.agents[1].goal.col = 2; }));
  CHECK(changed([](MAPFEpisode& e) { e.instance.agents[0].waypoint.x += 1e-9; }));
  CHECK(changed([](MAPFEpisode& e) { e.solution.plans[1][1] = {2, 3}; }));
  CHECK(changed([](MAPFEpisode& e) { e.participants = {0, 2}; }));
  CHECK(changed([](MAPFEpisode& e) { e.solver = SolverKind::PushAndRotate; }));
  CHECK(changed([](MAPFEpisode& e) { std::swap(e.instance.agents[0], e.instance.agents[1]); }));
}

TEST_CASE("deadlock leads to an episode and velocity towards the start") {
  // Head-on in a 1-wide corridor with a side bay in the middle.
  GridMap g(11, 3);
  for (int c = 0; c < 11; ++c) {
    g.set_blocked({c, 0}, true);
    if (c != 5) g.set_blocked({c, 2}, true);
  }
  Scenario sc;
  sc.starts = {{1, 1}, {9, 1}};
  sc.goals = {{9, 1}, {1, 1}};
  SimConfig cfg;
  cfg.seed = 3;
  cfg.pr_expansions = cfg.ecbs_expansions = 100000;
  World w(g, sc, cfg);
  bool saw = false;
  while (!w.terminated() && !saw) {
    w.step();
    for (const AgentState& a : w.agents()) {
      if (a.mode != Mode::MoveToMAPFStart) continue;
      saw = true;
      const double d = distance(a.position, a.mapf_start());
      if (d > 0.2) {
        const ObstacleSet obs(g);
        AgentState copy = a;
        const ControlContext ctx{&g, &obs, cfg.params, cfg.orca};
        const Vec2 v = step_agent(copy, w.agents(), ctx);
        CHECK(dot(v, a.mapf_start() - a.position) > 0.0);
      }
    }
  }
  CHECK(saw);
  while (!w.terminated()) w.step();
  CHECK(w.result().success);
  CHECK(w.result().n_mapf_calls >= 1);
}
