#include "mapfnav/orca.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <utility>

namespace mapfnav {

namespace {

constexpr double kLpEps = 1e-9;

double sqr(double v) { return v * v; }

double dist_sq_point_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const double r = dot(p - a, ab) / abs_sq(ab);
  if (r < 0.0) return abs_sq(p - a);
  if (r > 1.0) return abs_sq(p - b);
  return abs_sq(p - (a + r * ab));
}

HalfPlane from_line(const Vec2& point, const Vec2& direction) { return {point, left_perp(direction)}; }

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Separation direction for the ordered pair (lo, hi); the lower id moves along it.
Vec2 pair_direction(int a, int b) {
  const auto lo = static_cast<std::uint32_t>(std::min(a, b));
  const auto hi = static_cast<std::uint32_t>(std::max(a, b));
  const std::uint64_t h = mix64((static_cast<std::uint64_t>(lo) << 32) | hi);
  const double angle = static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 * std::numbers::pi;
  const Vec2 d{std::cos(angle), std::sin(angle)};
  return a <= b ? d : -d;
}

// --- Grid boundary tracing ---------------------------------------------------

struct UnitEdge {
  Vec2 start;
  Vec2 end;
  std::size_t free_cell;
};

struct PointKey {
  long long x2;
  long long y2;
  auto operator<=>(const PointKey&) const = default;
};
PointKey key_of(const Vec2& p) { return {std::llround(p.x * 2.0), std::llround(p.y * 2.0)}; }

}  // namespace

ObstacleSet::ObstacleSet(const GridMap& g, double index_range)
    : width_(g.width()), height_(g.height()), index_range_(index_range) {
  // Every side of a free cell that faces a blocked cell (or the map border),
  // directed so that the blocked side lies on its left.
  std::vector<UnitEdge> edges;
  constexpr std::array<std::pair<int, int>, 4> kDirs{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  for (int row = 0; row < g.height(); ++row) {
    for (int col = 0; col < g.width(); ++col) {
      const Cell c{col, row};
      if (g.blocked(c)) continue;
      for (const auto& [dc, dr] : kDirs) {
        if (g.free({col + dc, row + dr})) continue;
        const Vec2 n{static_cast<double>(dc), static_cast<double>(dr)};
        const Vec2 d{n.y, -n.x};
        const Vec2 mid = center_of(c) + 0.5 * n;
        edges.push_back({mid - 0.5 * d, mid + 0.5 * d, g.index(c)});
      }
    }
  }

  std::multimap<PointKey, std::size_t> by_start;
  for (std::size_t i = 0; i < edges.size(); ++i) by_start.emplace(key_of(edges[i].start), i);

  std::vector<std::size_t> successor(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [lo, hi] = by_start.equal_range(key_of(edges[i].end));
    std::size_t chosen = lo->second;
    // At a pinch point two edges leave the vertex; keep hugging the same free cell.
    for (auto it = lo; it != hi; ++it) {
      if (edges[it->second].free_cell == edges[i].free_cell) chosen = it->second;
    }
    successor[i] = chosen;
  }

  std::vector<char> used(edges.size(), 0);
  for (std::size_t seed = 0; seed < edges.size(); ++seed) {
    if (used[seed]) continue;
    std::vector<std::size_t> loop;
    for (std::size_t e = seed; !used[e]; e = successor[e]) {
      used[e] = 1;
      loop.push_back(e);
    }
    // Keep only corners: an edge starts a new segment when its direction differs
    // from the previous edge's.
    auto dir_of = [&](std::size_t e) { return edges[e].end - edges[e].start; };
    std::vector<Vec2> corners;
    for (std::size_t k = 0; k < loop.size(); ++k) {
      const std::size_t prev = loop[(k + loop.size() - 1) % loop.size()];
      if (!(dir_of(prev) == dir_of(loop[k]))) corners.push_back(edges[loop[k]].start);
    }
    if (corners.size() < 2) continue;

    const std::size_t base = vertices_.size();
    const std::size_t m = corners.size();
    for (std::size_t k = 0; k < m; ++k) {
      Vertex v;
      v.point = corners[k];
      v.next = base + (k + 1) % m;
      v.prev = base + (k + m - 1) % m;
      v.unit_dir = normalize(corners[(k + 1) % m] - corners[k]);
      const Vec2 before = corners[(k + m - 1) % m];
      const Vec2 after = corners[(k + 1) % m];
      v.convex = det(corners[k] - before, after - corners[k]) >= 0.0;
      vertices_.push_back(v);
    }
    ++polygon_count_;
  }

  buckets_.assign(static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_), {});
  const double reach = index_range_ + std::numbers::sqrt2 / 2.0;
  for (std::size_t e = 0; e < vertices_.size(); ++e) {
    const Vec2 a = vertices_[e].point;
    const Vec2 b = vertices_[vertices_[e].next].point;
    const int c0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - reach)));
    const int c1 = std::min(width_ - 1, static_cast<int>(std::floor(std::max(a.x, b.x) + reach)));
    const int r0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - reach)));
    const int r1 = std::min(height_ - 1, static_cast<int>(std::floor(std::max(a.y, b.y) + reach)));
    for (int row = r0; row <= r1; ++row) {
      for (int col = c0; col <= c1; ++col) {
        if (dist_sq_point_segment(a, b, center_of({col, row})) <= sqr(reach)) {
          buckets_[static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col)]
              .push_back(e);
        }
      }
    }
  }
}

std::vector<std::size_t> ObstacleSet::edges_near(const Position& p, double range) const {
  std::vector<std::pair<double, std::size_t>> found;
  auto consider = [&](std::size_t e) {
    const Vec2 a = vertices_[e].point;
    const Vec2 b = vertices_[vertices_[e].next].point;
    if (det(b - a, p - a) >= 0.0) return;  // agent not on the free side
    const double d = dist_sq_point_segment(a, b, p);
    if (d < sqr(range)) found.emplace_back(d, e);
  };
  if (range <= index_range_) {
    const int col = std::clamp(static_cast<int>(std::floor(p.x)), 0, width_ - 1);
    const int row = std::clamp(static_cast<int>(std::floor(p.y)), 0, height_ - 1);
    for (std::size_t e :
         buckets_[static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col)]) {
      consider(e);
    }
  } else {
    for (std::size_t e = 0; e < vertices_.size(); ++e) consider(e);
  }
  std::sort(found.begin(), found.end());
  std::vector<std::size_t> out;
  out.reserve(found.size());
  for (const auto& f : found) out.push_back(f.second);
  return out;
}

std::vector<HalfPlane> agent_halfplanes(int self_id, const Position& self_pos, const Vec2& self_vel, double r_avoid,
                                        std::span<const NeighborView> neighbors, double tau, double time_step) {
  std::vector<HalfPlane> out;
  out.reserve(neighbors.size());
  const double inv_tau = 1.0 / tau;
  for (const NeighborView& other : neighbors) {
    const Vec2 rel_pos = other.position - self_pos;
    const Vec2 rel_vel = self_vel - other.velocity;
    const double dist_sq = abs_sq(rel_pos);
    const double combined = r_avoid + other.radius;
    const double combined_sq = sqr(combined);

    Vec2 direction;
    Vec2 u;
    if (dist_sq > combined_sq) {
      const Vec2 w = rel_vel - inv_tau * rel_pos;
      const double w_len_sq = abs_sq(w);
      const double dot1 = dot(w, rel_pos);
      if (dot1 < 0.0 && sqr(dot1) > combined_sq * w_len_sq) {
        // Project on the cut-off circle.
        const double w_len = std::sqrt(w_len_sq);
        const Vec2 unit_w = w / w_len;
        direction = {unit_w.y, -unit_w.x};
        u = (combined * inv_tau - w_len) * unit_w;
      } else {
        // Project on a leg.
        const double leg = std::sqrt(dist_sq - combined_sq);
        if (det(rel_pos, w) > 0.0) {
          direction = Vec2{rel_pos.x * leg - rel_pos.y * combined, rel_pos.x * combined + rel_pos.y * leg} / dist_sq;
        } else {
          direction = -Vec2{rel_pos.x * leg + rel_pos.y * combined, -rel_pos.x * combined + rel_pos.y * leg} / dist_sq;
        }
        u = dot(rel_vel, direction) * direction - rel_vel;
      }
    } else {
      // Already overlapping: resolve within one time step.
      const double inv_step = 1.0 / time_step;
      const Vec2 w = rel_vel - inv_step * rel_pos;
      const double w_len = norm(w);
      const Vec2 unit_w = w_len > 1e-12 ? w / w_len : pair_direction(self_id, other.id);
      direction = {unit_w.y, -unit_w.x};
      u = (combined * inv_step - w_len) * unit_w;
    }
    out.push_back(from_line(self_vel + other.responsibility * u, direction));
  }
  return out;
}

std::vector<HalfPlane> obstacle_halfplanes(const ObstacleSet& obstacles, const Position& self_pos, const Vec2& self_vel,
                                           double r_avoid, double tau_obst, double v_max) {
  std::vector<HalfPlane> lines;
  const auto& verts = obstacles.vertices();
  const double inv_tau = 1.0 / tau_obst;
  const double radius_sq = sqr(r_avoid);

  for (std::size_t edge : obstacles.edges_near(self_pos, tau_obst * v_max + r_avoid)) {
    const ObstacleSet::Vertex* ob1 = &verts[edge];
    const ObstacleSet::Vertex* ob2 = &verts[ob1->next];
    const Vec2 rel1 = ob1->point - self_pos;
    const Vec2 rel2 = ob2->point - self_pos;

    // Skip if an earlier line already covers this obstacle's velocity obstacle.
    bool covered = false;
    for (const HalfPlane& hp : lines) {
      const Vec2 d = hp.direction();
      if (det(inv_tau * rel1 - hp.point, d) - inv_tau * r_avoid >= -kLpEps &&
          det(inv_tau * rel2 - hp.point, d) - inv_tau * r_avoid >= -kLpEps) {
        covered = true;
        break;
      }
    }
    if (covered) continue;

    const double dist_sq1 = abs_sq(rel1);
    const double dist_sq2 = abs_sq(rel2);
    const Vec2 obstacle_vec = ob2->point - ob1->point;
    const double s = dot(-rel1, obstacle_vec) / abs_sq(obstacle_vec);
    const double dist_sq_line = abs_sq(-rel1 - s * obstacle_vec);

    if (s < 0.0 && dist_sq1 <= radius_sq) {
      // Collision with left vertex; ignore if non-convex.
      if (ob1->convex) lines.push_back(from_line(Vec2{}, normalize(Vec2{-rel1.y, rel1.x})));
      continue;
    }
    if (s > 1.0 && dist_sq2 <= radius_sq) {
      // Collision with right vertex; ignore if non-convex or handled by the next edge.
      if (ob2->convex && det(rel2, ob2->unit_dir) >= 0.0) {
        lines.push_back(from_line(Vec2{}, normalize(Vec2{-rel2.y, rel2.x})));
      }
      continue;
    }
    if (s >= 0.0 && s <= 1.0 && dist_sq_line <= radius_sq) {
      // Collision with the segment itself.
      lines.push_back(from_line(Vec2{}, -ob1->unit_dir));
      continue;
    }

    // No collision: compute the legs. Seen obliquely, both legs may come from
    // one vertex; at non-convex vertices a leg extends the cut-off line.
    Vec2 left_leg;
    Vec2 right_leg;
    if (s < 0.0 && dist_sq_line <= radius_sq) {
      if (!ob1->convex) continue;
      ob2 = ob1;
      const double leg1 = std::sqrt(dist_sq1 - radius_sq);
      left_leg = Vec2{rel1.x * leg1 - rel1.y * r_avoid, rel1.x * r_avoid + rel1.y * leg1} / dist_sq1;
      right_leg = Vec2{rel1.x * leg1 + rel1.y * r_avoid, -rel1.x * r_avoid + rel1.y * leg1} / dist_sq1;
    } else if (s > 1.0 && dist_sq_line <= radius_sq) {
      if (!ob2->convex) continue;
      ob1 = ob2;
      const double leg2 = std::sqrt(dist_sq2 - radius_sq);
      left_leg = Vec2{rel2.x * leg2 - rel2.y * r_avoid, rel2.x * r_avoid + rel2.y * leg2} / dist_sq2;
      right_leg = Vec2{rel2.x * leg2 + rel2.y * r_avoid, -rel2.x * r_avoid + rel2.y * leg2} / dist_sq2;
    } else {
      if (ob1->convex) {
        const double leg1 = std::sqrt(dist_sq1 - radius_sq);
        left_leg = Vec2{rel1.x * leg1 - rel1.y * r_avoid, rel1.x * r_avoid + rel1.y * leg1} / dist_sq1;
      } else {
        left_leg = -ob1->unit_dir;
      }
      if (ob2->convex) {
        const double leg2 = std::sqrt(dist_sq2 - radius_sq);
        right_leg = Vec2{rel2.x * leg2 + rel2.y * r_avoid, -rel2.x * r_avoid + rel2.y * leg2} / dist_sq2;
      } else {
        right_leg = ob1->unit_dir;
      }
    }

    // A leg pointing into the neighbouring edge is replaced by that edge.
    const ObstacleSet::Vertex* left_neighbor = &verts[ob1->prev];
    bool left_foreign = false;
    bool right_foreign = false;
    if (ob1->convex && det(left_leg, -left_neighbor->unit_dir) >= 0.0) {
      left_leg = -left_neighbor->unit_dir;
      left_foreign = true;
    }
    if (ob2->convex && det(right_leg, ob2->unit_dir) <= 0.0) {
      right_leg = ob2->unit_dir;
      right_foreign = true;
    }

    const Vec2 left_cutoff = inv_tau * (ob1->point - self_pos);
    const Vec2 right_cutoff = inv_tau * (ob2->point - self_pos);
    const Vec2 cutoff_vec = right_cutoff - left_cutoff;
    const bool same_vertex = ob1 == ob2;

    const double t = same_vertex ? 0.5 : dot(self_vel - left_cutoff, cutoff_vec) / abs_sq(cutoff_vec);
    const double t_left = dot(self_vel - left_cutoff, left_leg);
    const double t_right = dot(self_vel - right_cutoff, right_leg);

    if ((t < 0.0 && t_left < 0.0) || (same_vertex && t_left < 0.0 && t_right < 0.0)) {
      const Vec2 unit_w = normalize(self_vel - left_cutoff);
      lines.push_back(from_line(left_cutoff + r_avoid * inv_tau * unit_w, Vec2{unit_w.y, -unit_w.x}));
      continue;
    }
    if (t > 1.0 && t_right < 0.0) {
      const Vec2 unit_w = normalize(self_vel - right_cutoff);
      lines.push_back(from_line(right_cutoff + r_avoid * inv_tau * unit_w, Vec2{unit_w.y, -unit_w.x}));
      continue;
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    const double d_cutoff =
        (t < 0.0 || t > 1.0 || same_vertex) ? kInf : abs_sq(self_vel - (left_cutoff + t * cutoff_vec));
    const double d_left = t_left < 0.0 ? kInf : abs_sq(self_vel - (left_cutoff + t_left * left_leg));
    const double d_right = t_right < 0.0 ? kInf : abs_sq(self_vel - (right_cutoff + t_right * right_leg));

    if (d_cutoff <= d_left && d_cutoff <= d_right) {
      const Vec2 dir = -ob1->unit_dir;
      lines.push_back(from_line(left_cutoff + r_avoid * inv_tau * Vec2{-dir.y, dir.x}, dir));
    } else if (d_left <= d_right) {
      if (left_foreign) continue;
      lines.push_back(from_line(left_cutoff + r_avoid * inv_tau * Vec2{-left_leg.y, left_leg.x}, left_leg));
    } else {
      if (right_foreign) continue;
      const Vec2 dir = -right_leg;
      lines.push_back(from_line(right_cutoff + r_avoid * inv_tau * Vec2{-dir.y, dir.x}, dir));
    }
  }
  return lines;
}

std::vector<HalfPlane> obstacle_halfplanes(const GridMap& g, const Position& self_pos, const Vec2& self_vel,
                                           double r_avoid, double tau_obst, double v_max) {
  const ObstacleSet obstacles(g, tau_obst * v_max + r_avoid);
  return obstacle_halfplanes(obstacles, self_pos, self_vel, r_avoid, tau_obst, v_max);
}

namespace {

// Optimum on line `line_no` subject to lines [0, line_no) and the speed disk.
bool linear_program1(std::span<const HalfPlane> lines, std::size_t line_no, double radius, const Vec2& opt,
                     bool direction_opt, Vec2& result) {
  const Vec2 point = lines[line_no].point;
  const Vec2 dir = lines[line_no].direction();
  const double dot_product = dot(point, dir);
  const double discriminant = sqr(dot_product) + sqr(radius) - abs_sq(point);
  if (discriminant < 0.0) return false;

  const double sqrt_disc = std::sqrt(discriminant);
  double t_left = -dot_product - sqrt_disc;
  double t_right = -dot_product + sqrt_disc;

  for (std::size_t i = 0; i < line_no; ++i) {
    const Vec2 dir_i = lines[i].direction();
    const double denominator = det(dir, dir_i);
    const double numerator = det(dir_i, point - lines[i].point);
    if (std::fabs(denominator) <= kLpEps) {
      // (Almost) parallel lines.
      if (numerator < 0.0) return false;
      continue;
    }
    const double t = numerator / denominator;
    if (denominator >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) return false;
  }

  if (direction_opt) {
    result = dot(opt, dir) > 0.0 ? point + t_right * dir : point + t_left * dir;
  } else {
    const double t = dot(dir, opt - point);
    if (t < t_left) {
      result = point + t_left * dir;
    } else if (t > t_right) {
      result = point + t_right * dir;
    } else {
      result = point + t * dir;
    }
  }
  return true;
}

// Returns the index of the first line that could not be satisfied, or lines.size().
std::size_t linear_program2(std::span<const HalfPlane> lines, double radius, const Vec2& opt, bool direction_opt,
                            Vec2& result) {
  if (direction_opt) {
    result = opt * radius;
  } else if (abs_sq(opt) > sqr(radius)) {
    result = normalize(opt) * radius;
  } else {
    result = opt;
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (det(lines[i].direction(), lines[i].point - result) > 0.0) {
      const Vec2 previous = result;
      if (!linear_program1(lines, i, radius, opt, direction_opt, result)) {
        result = previous;
        return i;
      }
    }
  }
  return lines.size();
}

void linear_program3(std::span<const HalfPlane> lines, std::size_t hard_count, std::size_t begin_line, double radius,
                     Vec2& result) {
  double dist = 0.0;
  for (std::size_t i = begin_line; i < lines.size(); ++i) {
    const Vec2 dir_i = lines[i].direction();
    if (det(dir_i, lines[i].point - result) <= dist) continue;

    std::vector<HalfPlane> projected(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(hard_count));
    for (std::size_t j = hard_count; j < i; ++j) {
      const Vec2 dir_j = lines[j].direction();
      const double determinant = det(dir_i, dir_j);
      Vec2 point;
      if (std::fabs(determinant) <= kLpEps) {
        if (dot(dir_i, dir_j) > 0.0) continue;  // same direction
        point = 0.5 * (lines[i].point + lines[j].point);
      } else {
        point = lines[i].point + (det(dir_j, lines[i].point - lines[j].point) / determinant) * dir_i;
      }
      projected.push_back(from_line(point, normalize(dir_j - dir_i)));
    }

    const Vec2 previous = result;
    if (linear_program2(projected, radius, Vec2{-dir_i.y, dir_i.x}, true, result) < projected.size()) {
      // Only possible through rounding; keep the previous result.
      result = previous;
    }
    dist = det(dir_i, lines[i].point - result);
  }
}

}  // namespace

Vec2 solve_velocity(std::span<const HalfPlane> constraints, const Vec2& v_pref, double v_max, std::size_t hard_count) {
  Vec2 result;
  const std::size_t fail = linear_program2(constraints, v_max, v_pref, false, result);
  if (fail < constraints.size()) linear_program3(constraints, std::min(hard_count, fail), fail, v_max, result);
  return clamp_speed(result, v_max);
}

Vec2 preferred_velocity(const Position& position, const Position& target, double v_max, double time_step) {
  const Vec2 delta = target - position;
  const double dist = norm(delta);
  if (dist <= 0.0) return {};
  const double speed = std::min(v_max, dist / time_step);
  return delta * (speed / dist);
}

Vec2 compute_safe_velocity(const SelfView& self, const Position& target, std::span<const NeighborView> neighbors,
                           const ObstacleSet& obstacles, const OrcaConfig& cfg) {
  const AgentParams& p = self.params;
  const Vec2 v_pref = preferred_velocity(self.position, target, p.v_max, cfg.time_step);
  std::vector<HalfPlane> lines =
      obstacle_halfplanes(obstacles, self.position, self.velocity, p.r_avoid, cfg.tau_obst, p.v_max);
  const std::size_t hard = lines.size();
  const auto agents = agent_halfplanes(self.id, self.position, self.velocity, p.r_avoid, neighbors, cfg.tau,
                                       cfg.time_step);
  lines.insert(lines.end(), agents.begin(), agents.end());
  return solve_velocity(lines, v_pref, p.v_max, hard);
}

}  // namespace mapfnav
