#include <cmath>
#include <random>

#include "doctest.h"
#include "mapfnav/planner.hpp"
#include "oracles.hpp"

using namespace mapfnav;

namespace {

GridMap random_map(std::mt19937_64& rng, int size, double share) {
  GridMap g(size, size);
  std::bernoulli_distribution b(share);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) g.set_blocked({c, r}, b(rng));
  }
  return g;
}

Cell random_free(std::mt19937_64& rng, const GridMap& g) {
  std::uniform_int_distribution<int> u(0, g.width() - 1);
  for (;;) {
    const Cell c{u(rng), u(rng)};
    if (g.free(c)) return c;
  }
}

}  // namespace

TEST_CASE("Theta* on an empty grid") {
  GridMap g(10, 10);
  const GeometricPath p = plan_theta_star(g, {0, 0}, {0, 3});
  CHECK(p.waypoints == std::vector<Position>{{0.5, 0.5}, {0.5, 3.5}});
  CHECK(p.length() == doctest::Approx(3.0));
  const GeometricPath d = plan_theta_star(g, {0, 0}, {9, 9});
  CHECK(d.length() == doctest::Approx(std::sqrt(162.0)));
}

TEST_CASE("Theta* around a wall beats the grid path") {
  GridMap g(10, 10);
  for (int r = 0; r < 8; ++r) g.set_blocked({5, r}, true);
  const GeometricPath t = plan_theta_star(g, {0, 0}, {9, 0});
  const GeometricPath a = plan_astar(g, {0, 0}, {9, 0});
  CHECK(t.length() <= a.length() + 1e-9);
  CHECK(t.length() >= 9.0);
  for (std::size_t i = 1; i < t.waypoints.size(); ++i) {
    CHECK(line_of_sight(g, t.waypoints[i - 1], t.waypoints[i]));
  }
}

TEST_CASE("planning errors") {
  GridMap g(5, 5);
  for (int r = 0; r < 5; ++r) g.set_blocked({2, r}, true);
  try {
    plan_theta_star(g, {0, 0}, {4, 4});
    FAIL("expected unreachable");
  } catch (const PlanningError& e) {
    CHECK(e.kind() == PlanningErrorKind::Unreachable);
  }
  try {
    plan_theta_star(g, {2, 2}, {4, 4});
    FAIL("expected invalid endpoint");
  } catch (const PlanningError& e) {
    CHECK(e.kind() == PlanningErrorKind::InvalidEndpoint);
  }
  CHECK_THROWS_AS(plan_astar(g, {0, 0}, {9, 9}), PlanningError);
}

TEST_CASE("A* costs") {
  GridMap g(5, 5);
  CHECK(plan_astar(g, {0, 0}, {3, 0}).length() == doctest::Approx(3.0));
  CHECK(plan_astar(g, {0, 0}, {2, 2}).length() == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("A* matches Dijkstra on random maps") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const GridMap g = random_map(rng, 16, 0.2);
    const Cell s = random_free(rng, g), t = random_free(rng, g);
    const double ref = oracle::dijkstra8(g, s, t);
    if (std::isinf(ref)) {
      CHECK_THROWS_AS(plan_astar(g, s, t), PlanningError);
      continue;
    }
    CHECK(plan_astar(g, s, t).length() == doctest::Approx(ref).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("Theta* properties on random maps") {
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 1000) {
    const GridMap g = random_map(rng, 16, 0.2);
    const Cell s = random_free(rng, g), t = random_free(rng, g);
    if (std::isinf(oracle::dijkstra8(g, s, t))) continue;
    ++checked;
    const GeometricPath p = plan_theta_star(g, s, t);
    const double astar = plan_astar(g, s, t).length();
    CHECK(p.waypoints.front() == center_of(s));
    CHECK(p.waypoints.back() == center_of(t));
    CHECK(p.length() <= astar + 1e-9);
    CHECK(p.length() >= distance(center_of(s), center_of(t)) - 1e-9);
    for (std::size_t i = 1; i < p.waypoints.size(); ++i) {
      CHECK(oracle::line_of_sight(g, p.waypoints[i - 1], p.waypoints[i]));
    }
  }
}

TEST_CASE("next_waypoint advancement") {
  GridMap g(10, 10);
  for (int r = 0; r < 8; ++r) g.set_blocked({5, r}, true);
  GeometricPath p;
  p.waypoints = {{0.5, 0.5}, {4.5, 8.5}, {9.5, 9.5}, {9.5, 0.5}};

  SUBCASE("within tolerance of the current waypoint") {
    p.cursor = 1;
    const Position w = next_waypoint(p, {4.4, 8.4}, g, 0.3);
    CHECK(p.cursor >= 2);
    CHECK(w == p.waypoints[p.cursor]);
  }
  SUBCASE("far away with the next one hidden") {
    p.cursor = 1;
    const Position w = next_waypoint(p, {1.5, 1.5}, g, 0.3);
    CHECK(p.cursor == 1);
    CHECK(w == Position{4.5, 8.5});
  }
  SUBCASE("last waypoint in sight") {
    p.cursor = 0;
    const Position at{9.5, 4.0};
    REQUIRE(oracle::line_of_sight(g, at, p.waypoints.back()));
    const Position w = next_waypoint(p, at, g, 0.3);
    CHECK(w == p.waypoints.back());
    CHECK(p.cursor == p.waypoints.size() - 1);
  }
}

TEST_CASE("next_waypoint cursor never moves back along a walk") {
  GridMap g(12, 12);
  for (int r = 2; r < 12; ++r) g.set_blocked({6, r}, true);
  GeometricPath p = plan_theta_star(g, {0, 11}, {11, 11});
  Position pos = center_of({0, 11});
  std::size_t last = 0;
  for (int step = 0; step < 400; ++step) {
    const Position w = next_waypoint(p, pos, g, 0.3);
    CHECK(p.cursor >= last);
    last = p.cursor;
    const Vec2 d = w - pos;
    pos += norm(d) > 0.1 ? d * (0.1 / norm(d)) : d;
  }
  CHECK(distance(pos, center_of({11, 11})) < 0.3);
}
