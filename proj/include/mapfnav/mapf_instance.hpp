#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapfnav/geometry.hpp"
#include "mapfnav/grid_map.hpp"

namespace mapfnav {

/// Rectangular sub-grid used for one MAPF episode. Cells are addressed in
/// global coordinates; `blocked` is stored locally, row-major.
struct MAPFArea {
  Cell origin;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> blocked;

  bool contains(const Cell& c) const {
    return c.col >= origin.col && c.row >= origin.row && c.col < origin.col + width && c.row < origin.row + height;
  }
  bool free(const Cell& c) const { return contains(c) && blocked[local_index(c)] == 0; }
  std::size_t size() const { return blocked.size(); }
  std::size_t local_index(const Cell& c) const {
    return static_cast<std::size_t>(c.row - origin.row) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c.col - origin.col);
  }
  Cell cell_at(std::size_t i) const {
    return {origin.col + static_cast<int>(i % static_cast<std::size_t>(width)),
            origin.row + static_cast<int>(i / static_cast<std::size_t>(width))};
  }
  /// Blocked cells in local coordinates, row-major.
  std::vector<Cell> local_blocked() const;
  std::size_t free_count() const;

  bool operator==(const MAPFArea&) const = default;
};

/// Area of `g` covering [origin, origin + size), clipped to the map. Cells in
/// `extra_blocked` (parked agents) are blocked as well.
MAPFArea make_area(const GridMap& g, const Cell& origin, int width, int height,
                   std::span<const Cell> extra_blocked = {});
/// The whole map as one area.
MAPFArea whole_map_area(const GridMap& g);

struct InstanceAgent {
  int id = 0;
  Cell start;
  Cell goal;
  Position waypoint;  ///< the agent's current geometric waypoint when the instance was built

  bool operator==(const InstanceAgent&) const = default;
};

/// Agents ordered by priority (highest first).
struct MAPFInstance {
  MAPFArea area;
  std::vector<InstanceAgent> agents;

  bool operator==(const MAPFInstance&) const = default;
};

enum class InstanceErrorKind { AreaExhausted, GoalsExhausted };

class InstanceError : public std::runtime_error {
 public:
  InstanceError(InstanceErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  InstanceErrorKind kind() const { return kind_; }

 private:
  InstanceErrorKind kind_;
};

/// {initiator} plus its neighbours plus their neighbours, sorted by id.
/// `adjacency[a]` lists the agents within range of agent `a`.
std::vector<int> gather_participants(int initiator, const std::vector<std::vector<int>>& adjacency);

/// Deterministic permutation of `participants` (order of the input does not
/// matter) drawn from a generator seeded by (seed, event counter).
std::vector<int> assign_priorities(std::vector<int> participants, std::uint64_t seed, std::uint64_t event);

/// Bounding box of the cells containing `positions`, grown by `offset` on every
/// side and clipped to the map.
MAPFArea compute_area(std::span<const Position> positions, int offset, const GridMap& g,
                      std::span<const Cell> extra_blocked = {});

/// In priority order, the free area cell whose center is closest to each
/// position, never reusing a cell and skipping `no_start`. Ties go to the
/// row-major first cell.
std::vector<Cell> assign_starts(const MAPFArea& area, std::span<const Position> positions_by_priority,
                                std::span<const Cell> no_start = {});

/// In priority order, among cells 4-connected to the agent's start inside the
/// area, the one closest to its waypoint and not already taken as a goal.
std::vector<Cell> assign_goals(const MAPFArea& area, std::span<const Cell> starts,
                               std::span<const Position> waypoints);

struct ParticipantState {
  int id = 0;
  Position position;
  Position waypoint;
};

struct BuildRequest {
  std::vector<ParticipantState> participants;  ///< any order
  std::uint64_t seed = 0;
  std::uint64_t event = 0;
  int offset = 3;
  int max_retries = 3;
  int retry_growth = 2;
  std::vector<Cell> parked;     ///< cells held by finished agents
  std::vector<Cell> no_start;   ///< free, but not to be used as a start
};

/// Priorities, area, starts, goals. Grows the offset while some component of
/// the area that holds an agent has fewer than (participants + 2) free cells.
/// Returns nullopt when no attempt yields a valid instance.
std::optional<MAPFInstance> build_instance(const BuildRequest& request, const GridMap& g);

/// Free cells of each 4-connected component of the area, keyed by cell.
/// Returns for every agent start the size of its component.
std::vector<std::size_t> component_sizes_at(const MAPFArea& area, std::span<const Cell> cells);

/// Structural checks: distinct starts/goals, all free and inside, each goal
/// 4-reachable from its start. Empty string when valid.
std::string check_instance(const MAPFInstance& inst);

}  // namespace mapfnav
