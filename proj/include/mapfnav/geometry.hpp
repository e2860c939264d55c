#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>

namespace mapfnav {

/// 2D vector in cell-width units. Used for positions and velocities alike.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product.
constexpr double det(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
constexpr double abs_sq(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::sqrt(abs_sq(v)); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }
inline Vec2 normalize(const Vec2& v) {
  const double n = norm(v);
  return n > 0.0 ? v / n : Vec2{};
}
/// v scaled down, if needed, so that norm(v) <= s_max holds in floating point.
inline Vec2 clamp_speed(Vec2 v, double s_max) {
  const double n = norm(v);
  if (n <= s_max) return v;
  v = v * (s_max / n);
  while (norm(v) > s_max) v = v * (1.0 - 0x1.0p-52);
  return v;
}

/// Rotates by +90 degrees.
constexpr Vec2 left_perp(const Vec2& v) { return {-v.y, v.x}; }

inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

using Position = Vec2;

/// Grid cell; column grows with x, row grows with y.
struct Cell {
  int col = 0;
  int row = 0;

  constexpr auto operator<=>(const Cell&) const = default;
};

/// Row-major ordering (smaller row first, then smaller column).
constexpr bool row_major_less(const Cell& a, const Cell& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

/// Points on a cell's right/top edge belong to the next cell.
inline Cell cell_of(const Position& p) {
  return {static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y))};
}

constexpr Position center_of(const Cell& c) { return {c.col + 0.5, c.row + 0.5}; }

constexpr int manhattan(const Cell& a, const Cell& b) {
  return (a.col > b.col ? a.col - b.col : b.col - a.col) +
         (a.row > b.row ? a.row - b.row : b.row - a.row);
}

}  // namespace mapfnav

template <>
struct std::hash<mapfnav::Cell> {
  std::size_t operator()(const mapfnav::Cell& c) const noexcept {
    return std::hash<long long>{}((static_cast<long long>(c.col) << 32) ^
                                  static_cast<unsigned int>(c.row));
  }
};
