#pragma once

#include <cstdint>
#include <string>

#include "mapfnav/grid_map.hpp"

namespace mapfnav {

/// Two open halls split by a 1-cell wall in column size/2, with `n_passages`
/// 1-cell gaps at rows (i + 1) * size / (n_passages + 1).
GridMap make_gaps(int size, int n_passages);

/// Open floor with `n_shelves` prolonged 2-cell-thick shelves in two columns,
/// separated by free aisles.
GridMap make_warehouse(int size, int n_shelves);

/// A grid of 3x3 rooms behind 1-cell walls, every pair of adjacent rooms
/// joined by at least one door. Fixed by `seed`.
GridMap make_rooms(int size, std::uint64_t seed);

/// `gaps:<size>:<n>`, `warehouse:<size>:<n>`, `rooms[:<size>[:<seed>]]`, or
/// a path to a MovingAI `.map` file. Throws std::invalid_argument on bad
/// parameters and MapParseError on a malformed file.
GridMap build_map(const std::string& spec);

}  // namespace mapfnav
