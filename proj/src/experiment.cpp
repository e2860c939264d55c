#include "mapfnav/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>


namespace mapfnav {

const char* algorithm_name(Algorithm a) {
  return a == Algorithm::OrcaStar ? "orca-star" : "orca-star-mapf";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "orca-star") return Algorithm::OrcaStar;
  if (name == "orca-star-mapf") return Algorithm::OrcaStarMapf;
  return std::nullopt;
}

void ExperimentSpec::validate() const {
  if (agent_counts.empty()) throw std::invalid_argument("experiment: no agent counts");
  for (int n : agent_counts) {
    if (n < 0) throw std::invalid_argument("experiment: negative agent count");
  }
  if (instances < 1) throw std::invalid_argument("experiment: instances per count must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("experiment: no algorithms");
  if (threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
  config.validate();
}

BatchReport run_batch(const GridMap& map, const ExperimentSpec& spec) {
  spec.validate();
  const Placement placement =
      spec.placement.value_or(spec.map.rfind("gaps", 0) == 0 ? Placement::Halls : Placement::Random);

  BatchReport report;
  for (int n : spec.agent_counts) {
    for (int i = 0; i < spec.instances; ++i) {
      for (Algorithm a : spec.algorithms) {
        BatchRow row;
        row.algorithm = a;
        row.agents = n;
        row.seed = spec.first_seed + static_cast<std::uint64_t>(i);
        report.rows.push_back(row);
      }
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const BatchRow& x, const BatchRow& y) {
    return std::tie(x.agents, x.seed, x.algorithm) < std::tie(y.agents, y.seed, y.algorithm);
  });

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < report.rows.size(); k = next++) {
      BatchRow& row = report.rows[k];
      try {
        const Scenario sc = generate_instance(map, placement, row.agents, row.seed);
        SimConfig cfg = spec.config;
        cfg.seed = row.seed;
        cfg.mapf_enabled = row.algorithm == Algorithm::OrcaStarMapf;
        const auto t0 = std::chrono::steady_clock::now();
        row.result = run(map, sc, cfg);
        row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n_threads = std::min<int>(spec.threads, static_cast<int>(std::max<std::size_t>(1, report.rows.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  report.aggregates = aggregate(report.rows);
  return report;
}

std::vector<AggregateRow> aggregate(std::span<const BatchRow> rows) {
  struct Acc {
    int runs = 0;
    int successes = 0;
    long flowtime = 0;
    long n_mapf = 0;
    int with_mapf = 0;
    double n_agents = 0.0;
  };
  std::map<std::pair<int, Algorithm>, Acc> acc;
  for (const BatchRow& r : rows) {
    Acc& a = acc[{r.agents, r.algorithm}];
    ++a.runs;
    a.n_mapf += r.result.n_mapf_calls;
    if (r.result.success) {
      ++a.successes;
      a.flowtime += r.result.flowtime;
    }
    if (r.result.n_mapf_calls > 0) {
      ++a.with_mapf;
      a.n_agents += r.result.mean_mapf_agents;
    }
  }
  std::vector<AggregateRow> out;
  for (const auto& [key, a] : acc) {
    AggregateRow row;
    row.agents = key.first;
    row.algorithm = key.second;
    row.runs = a.runs;
    row.success_rate = static_cast<double>(a.successes) / a.runs;
    if (a.successes > 0) row.mean_flowtime = static_cast<double>(a.flowtime) / a.successes;
    row.mean_n_mapf = static_cast<double>(a.n_mapf) / a.runs;
    if (a.with_mapf > 0) row.mean_n_agents = a.n_agents / a.with_mapf;
    out.push_back(row);
  }
  return out;
}

namespace {

// Shortest text that reads back as the same double.
std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

constexpr const char* kBatchHeader =
    "kind,algorithm,agents,seed,success,reason,steps,flowtime,makespan,n_mapf,mean_mapf_agents,"
    "mapf_mode_steps,normal_mode_steps,collisions,wall_seconds,runs,success_rate,mean_flowtime,"
    "mean_n_mapf,mean_n_agents";

}  // namespace

void write_batch_csv(std::ostream& out, const BatchReport& report) {
  out << "# kind=run rows hold one simulation each (aggregate columns empty); kind=aggregate rows hold, per "
         "(agents, algorithm), the success rate, the mean flowtime over successful runs, the mean number of "
         "MAPF calls over all runs and the mean agents per MAPF call over runs with at least one call "
         "(run columns empty)\n";
  out << kBatchHeader << '\n';
  for (const BatchRow& r : report.rows) {
    const RunResult& x = r.result;
    out << "run," << algorithm_name(r.algorithm) << ',' << r.agents << ',' << r.seed << ','
        << (x.success ? "true" : "false") << ',' << termination_name(x.reason) << ',' << x.steps << ','
        << x.flowtime << ',' << x.makespan << ',' << x.n_mapf_calls << ',' << num(x.mean_mapf_agents) << ','
        << x.mapf_mode_steps << ',' << x.normal_mode_steps << ',' << x.collisions << ',' << num(r.wall_seconds)
        << ",,,,,\n";
  }
  for (const AggregateRow& a : report.aggregates) {
    out << "aggregate," << algorithm_name(a.algorithm) << ',' << a.agents << ",,,,,,,,,,,,," << a.runs << ','
        << num(a.success_rate) << ',' << opt(a.mean_flowtime) << ',' << num(a.mean_n_mapf) << ','
        << opt(a.mean_n_agents) << '\n';
  }
}

std::string success_svg(const BatchReport& report, const std::string& title) {
  constexpr double kW = 480, kH = 320, kLeft = 50, kRight = 20, kTop = 40, kBottom = 40;
  std::vector<int> counts;
  for (const AggregateRow& a : report.aggregates) counts.push_back(a.agents);
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
  const int lo = counts.empty() ? 0 : counts.front();
  const int hi = counts.empty() ? 1 : std::max(counts.back(), lo + 1);
  auto x_of = [&](int n) { return kLeft + (kW - kLeft - kRight) * (n - lo) / static_cast<double>(hi - lo); };
  auto y_of = [&](double rate) { return kTop + (kH - kTop - kBottom) * (1.0 - rate); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
    << title << "</text>\n";
  s << "<line x1=\"" << kLeft << "\" y1=\"" << y_of(0) << "\" x2=\"" << kW - kRight << "\" y2=\"" << y_of(0)
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << kLeft << "\" y1=\"" << y_of(0) << "\" x2=\"" << kLeft << "\" y2=\"" << y_of(1)
    << "\" stroke=\"black\"/>\n";
  for (int pct = 0; pct <= 100; pct += 25) {
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << y_of(pct / 100.0) + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << pct << "%</text>\n";
  }
  for (int n : counts) {
    s << "<text x=\"" << x_of(n) << "\" y=\"" << kH - kBottom + 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << n << "</text>\n";
  }
  const char* colors[] = {"#d62728", "#1f77b4"};
  int legend = 0;
  for (Algorithm alg : {Algorithm::OrcaStar, Algorithm::OrcaStarMapf}) {
    std::string points;
    for (const AggregateRow& a : report.aggregates) {
      if (a.algorithm != alg) continue;
      points += num(x_of(a.agents)) + "," + num(y_of(a.success_rate)) + " ";
    }
    if (points.empty()) continue;
    const char* color = colors[static_cast<int>(alg)];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << points << "\"/>\n";
    s << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 14 + 14 * legend++ << "\" fill=\"" << color
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << algorithm_name(alg) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<BenchRow> solver_bench(std::span<const std::pair<std::string, MAPFInstance>> instances, double w,
                                   const SolverBudget& budget) {
  std::vector<BenchRow> out;
  for (const auto& [name, inst] : instances) {
    for (SolverKind kind : {SolverKind::PushAndRotate, SolverKind::ECBS}) {
      const SolveResult r =
          kind == SolverKind::PushAndRotate ? solve_push_and_rotate(inst, budget) : solve_ecbs(inst, w, budget);
      BenchRow row;
      row.instance = name;
      row.agents = static_cast<int>(inst.agents.size());
      row.solver = kind;
      row.status = r.status;
      row.seconds = r.seconds;
      if (r.solution) {
        row.flowtime = r.solution->flowtime;
        row.makespan = r.solution->makespan;
      }
      out.push_back(row);
    }
  }
  return out;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "# one row per (instance, solver); flowtime and makespan are -1 when unsolved\n";
  out << "instance,agents,solver,status,solved,flowtime,makespan,seconds\n";
  for (const BenchRow& r : rows) {
    out << r.instance << ',' << r.agents << ',' << solver_name(r.solver) << ',' << status_name(r.status) << ','
        << (r.status == SolveStatus::Solved ? "true" : "false") << ',' << r.flowtime << ',' << r.makespan << ','
        << num(r.seconds) << '\n';
  }
}

}  // namespace mapfnav
