#include <random>

#include "doctest.h"
#include "mapfnav/orca.hpp"
#include "mapfnav/simulator.hpp"
#include "oracles.hpp"

using namespace mapfnav;

namespace {

bool permits(const std::vector<HalfPlane>& hs, const Vec2& v, double eps = 1e-12) {
  for (const HalfPlane& h : hs) {
    if (!h.contains(v, eps)) return false;
  }
  return true;
}

// Velocity obstacle membership by direct simulation of relative motion.
bool collides_within(const Position& rel_pos, const Vec2& rel_vel, double combined_radius, double tau) {
  for (int i = 0; i <= 10000; ++i) {
    const double t = tau * i / 10000.0;
    if (norm(rel_pos + rel_vel * t) < combined_radius) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("agent half-planes") {
  SUBCASE("no neighbours") {
    CHECK(agent_halfplanes(0, {1, 1}, {0.1, 0}, 0.49, {}, 10.0).empty());
  }
  SUBCASE("distant static neighbour leaves the current velocity allowed") {
    const NeighborView n{1, {10.0, 10.0}, {0, 0}, 0.49, 0.5};
    const Vec2 v{0.1, 0.0};
    REQUIRE_FALSE(collides_within(n.position - Position{0, 0}, v, 0.98, 10.0));
    const auto hs = agent_halfplanes(0, {0, 0}, v, 0.49, std::span(&n, 1), 10.0);
    REQUIRE(hs.size() == 1);
    CHECK(permits(hs, v));
  }
  SUBCASE("head-on pair gives mirrored constraints") {
    const NeighborView to_b{1, {2.0, 0.3}, {-0.1, 0.0}, 0.49, 0.5};
    const NeighborView to_a{0, {0.0, 0.0}, {0.1, 0.0}, 0.49, 0.5};
    const auto ha = agent_halfplanes(0, {0.0, 0.0}, {0.1, 0.0}, 0.49, std::span(&to_b, 1), 10.0);
    const auto hb = agent_halfplanes(1, {2.0, 0.3}, {-0.1, 0.0}, 0.49, std::span(&to_a, 1), 10.0);
    REQUIRE(ha.size() == 1);
    REQUIRE(hb.size() == 1);
    CHECK(hb[0].normal.x == doctest::Approx(-ha[0].normal.x).epsilon(1e-12));
    CHECK(hb[0].normal.y == doctest::Approx(-ha[0].normal.y).epsilon(1e-12));
    CHECK(hb[0].point.x == doctest::Approx(-ha[0].point.x).epsilon(1e-12));
    CHECK(hb[0].point.y == doctest::Approx(-ha[0].point.y).epsilon(1e-12));
    // Collision course is excluded for both.
    CHECK_FALSE(permits(ha, {0.1, 0.0}));
    CHECK_FALSE(permits(hb, {-0.1, 0.0}));
  }
  SUBCASE("overlapping and coincident agents still get a constraint") {
    const NeighborView near{1, {0.3, 0.0}, {0, 0}, 0.49, 0.5};
    const auto hs = agent_halfplanes(0, {0, 0}, {0, 0}, 0.49, std::span(&near, 1), 10.0);
    REQUIRE(hs.size() == 1);
    CHECK(is_finite(hs[0].normal));
    const NeighborView same{1, {0.0, 0.0}, {0, 0}, 0.49, 0.5};
    const auto hc = agent_halfplanes(0, {0, 0}, {0, 0}, 0.49, std::span(&same, 1), 10.0);
    REQUIRE(hc.size() == 1);
    CHECK(norm(hc[0].normal) == doctest::Approx(1.0));
  }
}

TEST_CASE("obstacle half-planes") {
  GridMap open(20, 20);
  CHECK(obstacle_halfplanes(open, {10.5, 10.5}, {0, 0}, 0.49, 20.0, 0.1).empty());

  GridMap wall(20, 20);
  for (int c = 0; c < 20; ++c) wall.set_blocked({c, 10}, true);
  const Position p{5.5, 9.5};
  const auto hs = obstacle_halfplanes(wall, p, {0, 0}, 0.49, 20.0, 0.1);
  CHECK_FALSE(hs.empty());
  CHECK(permits(hs, {0.1, 0.0}));
  CHECK(permits(hs, {-0.1, 0.0}));
  // 0.51 from the wall with a 2-cell horizon: heading straight in is excluded.
  CHECK_FALSE(permits(hs, {0.0, 0.1}));
}

TEST_CASE("solve_velocity simple cases") {
  CHECK(solve_velocity({}, {0.05, 0.0}, 0.1) == Vec2{0.05, 0.0});
  const Vec2 clipped = solve_velocity({}, {3.0, 4.0}, 1.0);
  CHECK(clipped.x == doctest::Approx(0.6));
  CHECK(clipped.y == doctest::Approx(0.8));
  const HalfPlane h{{0.0, 0.0}, {1.0, 0.0}};
  CHECK(solve_velocity(std::span(&h, 1), {0.5, 0.2}, 1.0) == Vec2{0.5, 0.2});
  const Vec2 proj = solve_velocity(std::span(&h, 1), {-0.5, 0.2}, 1.0);
  CHECK(proj.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(proj.y == doctest::Approx(0.2));
}

TEST_CASE("solve_velocity agrees with dense sampling") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> count(1, 8);
  int compared = 0;
  while (compared < 60) {
    std::vector<HalfPlane> hs;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      const Vec2 normal = normalize(Vec2{u(rng), u(rng)});
      hs.push_back({Vec2{u(rng), u(rng)} * 0.6, normal});
    }
    const Vec2 pref{u(rng) * 1.2, u(rng) * 1.2};
    const auto sampled = oracle::sampled_velocity(hs, pref, 1.0, 1000);
    if (!sampled) continue;
    ++compared;
    const Vec2 v = solve_velocity(hs, pref, 1.0);
    CHECK(norm(v) <= 1.0 + 1e-12);
    CHECK(permits(hs, v, 1e-9));
    const double dv = distance(v, pref), ds = distance(*sampled, pref);
    // No sample beats the result, and the objectives agree to the grid resolution.
    CHECK(dv <= ds + 1e-9);
    CHECK(ds - dv < 1e-2);
    const auto exact = oracle::exact_velocity(hs, pref, 1.0);
    REQUIRE(exact);
    CHECK(distance(v, *exact) < 1e-6);
  }
}

TEST_CASE("solve_velocity never exceeds v_max, feasible or not") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    std::vector<HalfPlane> hs;
    for (int k = 0; k < 6; ++k) hs.push_back({Vec2{u(rng), u(rng)}, normalize(Vec2{u(rng), u(rng)})});
    const Vec2 v = solve_velocity(hs, {u(rng), u(rng)}, 0.1, 0);
    CHECK(norm(v) <= 0.1);
    CHECK(is_finite(v));
    CHECK(solve_velocity(hs, {0.3, 0.1}, 0.1) == solve_velocity(hs, {0.3, 0.1}, 0.1));
  }
}

TEST_CASE("compute_safe_velocity") {
  GridMap g(20, 20);
  const ObstacleSet obs(g);
  const AgentParams params;
  SUBCASE("open space") {
    const SelfView self{0, {2.5, 2.5}, {0, 0}, params};
    const Vec2 v = compute_safe_velocity(self, {12.5, 2.5}, {}, obs);
    CHECK(v.x == doctest::Approx(0.1));
    CHECK(v.y == doctest::Approx(0.0));
    CHECK(compute_safe_velocity(self, self.position, {}, obs) == Vec2{});
  }
  SUBCASE("symmetric head-on pair") {
    const SelfView a{0, {5.5, 10.5}, {0.1, 0}, params};
    const SelfView b{1, {7.5, 10.5}, {-0.1, 0}, params};
    const NeighborView sees_b{1, b.position, b.velocity, 0.49, 0.5};
    const NeighborView sees_a{0, a.position, a.velocity, 0.49, 0.5};
    const Vec2 va = compute_safe_velocity(a, {15.5, 10.5}, std::span(&sees_b, 1), obs);
    const Vec2 vb = compute_safe_velocity(b, {-2.5 + 0.0, 10.5}, std::span(&sees_a, 1), obs);
    CHECK(norm(va) == doctest::Approx(norm(vb)).epsilon(1e-9));
    CHECK(norm(va) <= 0.1);
  }
}

TEST_CASE("obstacle set polygons") {
  GridMap g(6, 6);
  g.set_blocked({2, 2}, true);
  g.set_blocked({3, 2}, true);
  const ObstacleSet obs(g, 3.0);
  // The border of the map plus one 2x1 block.
  CHECK(obs.polygon_count() >= 1);
  for (const auto& v : obs.vertices()) {
    CHECK(norm(v.unit_dir) == doctest::Approx(1.0));
  }
  CHECK_FALSE(obs.edges_near({2.5, 1.5}, 2.0).empty());
}

TEST_CASE("ORCA alone keeps 20 agents apart on random open maps") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    std::mt19937_64 rng(seed);
    GridMap g(32, 32);
    std::bernoulli_distribution b(0.05);
    for (int r = 0; r < 32; ++r) {
      for (int c = 0; c < 32; ++c) g.set_blocked({c, r}, b(rng));
    }
    Scenario sc;
    try {
      sc = generate_instance(g, Placement::Random, 20, seed);
    } catch (const std::invalid_argument&) {
      continue;
    }
    SimConfig cfg;
    cfg.mapf_enabled = false;
    cfg.max_steps = 2000;
    cfg.seed = seed;
    double min_dist = 1e9;
    World w(g, sc, cfg);
    while (!w.terminated()) {
      w.step();
      const auto& as = w.agents();
      for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t j = i + 1; j < as.size(); ++j) {
          min_dist = std::min(min_dist, distance(as[i].position, as[j].position));
        }
      }
    }
    CHECK(w.result().collisions == 0);
    CHECK(min_dist >= 2 * 0.3);
  }
}
