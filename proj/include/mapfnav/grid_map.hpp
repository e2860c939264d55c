#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mapfnav/geometry.hpp"

namespace mapfnav {

/// Static blocked/unblocked tessellation of the workspace. Cells outside the
/// map are treated as blocked by every query.
class GridMap {
 public:
  GridMap(int width, int height);
  GridMap(int width, int height, const std::vector<Cell>& blocked);

  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(const Cell& c) const {
    return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_;
  }
  bool blocked(const Cell& c) const { return !in_bounds(c) || cells_[index(c)] != 0; }
  bool free(const Cell& c) const { return !blocked(c); }
  void set_blocked(const Cell& c, bool value);

  std::size_t index(const Cell& c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }
  Cell cell_at(std::size_t index) const {
    return {static_cast<int>(index % static_cast<std::size_t>(width_)),
            static_cast<int>(index / static_cast<std::size_t>(width_))};
  }
  std::size_t size() const { return cells_.size(); }

  /// Blocked cells in row-major order.
  std::vector<Cell> blocked_cells() const;
  std::size_t blocked_count() const;

  bool operator==(const GridMap&) const = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> cells_;
};

enum class MapParseErrorKind { MalformedHeader, DimensionMismatch, UnknownCharacter };

class MapParseError : public std::runtime_error {
 public:
  MapParseError(MapParseErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  MapParseErrorKind kind() const { return kind_; }

 private:
  MapParseErrorKind kind_;
};

/// Parses a MovingAI `.map` document. `@` and `T` are blocked, `.` and `G` free.
/// Row 0 of the body is row 0 of the grid.
GridMap load_map(std::istream& in);
GridMap load_map_string(std::string_view text);
GridMap load_map_file(const std::string& path);

/// Writes the MovingAI `.map` form; blocked cells as `@`, free cells as `.`.
std::string serialize_map(const GridMap& g);
void save_map_file(const GridMap& g, const std::string& path);

/// True iff the closed segment a-b touches no blocked cell. Every cell the
/// segment touches counts, including cells it only meets at a corner.
bool line_of_sight(const GridMap& g, const Position& a, const Position& b);

/// Cells touched by the closed segment a-b (the supercover), unclipped.
std::vector<Cell> supercover(const Position& a, const Position& b);

}  // namespace mapfnav
