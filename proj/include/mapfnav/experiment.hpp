#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mapfnav/mapf_solvers.hpp"
#include "mapfnav/simulator.hpp"

namespace mapfnav {

enum class Algorithm { OrcaStar, OrcaStarMapf };
const char* algorithm_name(Algorithm a);  ///< "orca-star", "orca-star-mapf"
std::optional<Algorithm> parse_algorithm(const std::string& name);

struct ExperimentSpec {
  std::string map;                 ///< map spec as accepted by build_map
  std::vector<int> agent_counts;
  int instances = 1;               ///< per agent count; seeds first_seed ...
  std::uint64_t first_seed = 0;
  std::vector<Algorithm> algorithms{Algorithm::OrcaStar, Algorithm::OrcaStarMapf};
  std::optional<Placement> placement;  ///< default: halls on gaps maps, random otherwise
  SimConfig config;                ///< seed and mapf_enabled are set per run
  int threads = 1;

  void validate() const;
};

struct BatchRow {
  Algorithm algorithm = Algorithm::OrcaStar;
  int agents = 0;
  std::uint64_t seed = 0;
  RunResult result;
  double wall_seconds = 0.0;
};

struct AggregateRow {
  Algorithm algorithm = Algorithm::OrcaStar;
  int agents = 0;
  int runs = 0;
  double success_rate = 0.0;
  std::optional<double> mean_flowtime;     ///< successful runs only
  double mean_n_mapf = 0.0;                ///< all runs
  std::optional<double> mean_n_agents;     ///< runs with at least one MAPF call
};

struct BatchReport {
  std::vector<BatchRow> rows;              ///< by (agents, seed, algorithm)
  std::vector<AggregateRow> aggregates;    ///< by (agents, algorithm)
};

/// Runs every (algorithm, agent count, seed) on `map`, `spec.threads` at a
/// time. Row order does not depend on completion order.
BatchReport run_batch(const GridMap& map, const ExperimentSpec& spec);

/// Aggregates of `rows`, grouped by (agents, algorithm).
std::vector<AggregateRow> aggregate(std::span<const BatchRow> rows);

/// One `#` comment line describing the columns, a header line, the data rows,
/// then the aggregate rows; every line has the same number of fields.
void write_batch_csv(std::ostream& out, const BatchReport& report);

/// Static line chart of success rate against agent count.
std::string success_svg(const BatchReport& report, const std::string& title);

struct BenchRow {
  std::string instance;
  int agents = 0;
  SolverKind solver = SolverKind::None;
  SolveStatus status = SolveStatus::Unsolvable;
  long flowtime = -1;
  int makespan = -1;
  double seconds = 0.0;
};

/// Push and Rotate and ECBS run independently on every instance, each with
/// the full `budget`.
std::vector<BenchRow> solver_bench(std::span<const std::pair<std::string, MAPFInstance>> instances, double w,
                                   const SolverBudget& budget);
void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

}  // namespace mapfnav
