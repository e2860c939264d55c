#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mapfnav/experiment.hpp"
#include "mapfnav/instance_io.hpp"
#include "mapfnav/maps.hpp"

namespace py = pybind11;
using namespace mapfnav;

namespace {

py::tuple cell_tuple(const Cell& c) { return py::make_tuple(c.col, c.row); }

std::vector<Cell> cells_from(const std::vector<std::pair<int, int>>& v) {
  std::vector<Cell> out;
  for (const auto& [c, r] : v) out.push_back({c, r});
  return out;
}

py::dict solve_dict(const SolveResult& r) {
  py::dict d;
  d["status"] = status_name(r.status);
  d["expansions"] = r.expansions;
  d["seconds"] = r.seconds;
  if (r.solution) {
    py::list plans;
    for (const DiscretePlan& p : r.solution->plans) {
      py::list plan;
      for (const Cell& c : p) plan.append(cell_tuple(c));
      plans.append(plan);
    }
    d["plans"] = plans;
    d["flowtime"] = r.solution->flowtime;
    d["makespan"] = r.solution->makespan;
  } else {
    d["plans"] = py::none();
  }
  return d;
}

py::dict run_dict(const RunResult& r) {
  py::dict d;
  d["success"] = r.success;
  d["reason"] = termination_name(r.reason);
  d["steps"] = r.steps;
  d["flowtime"] = r.flowtime;
  d["makespan"] = r.makespan;
  d["n_mapf_calls"] = r.n_mapf_calls;
  d["mean_mapf_agents"] = r.mean_mapf_agents;
  d["mapf_mode_steps"] = r.mapf_mode_steps;
  d["normal_mode_steps"] = r.normal_mode_steps;
  d["collisions"] = r.collisions;
  d["n_mapf_failures"] = r.n_mapf_failures;
  d["audit_violations"] = r.audit.total();
  d["trajectory_hash"] = r.trajectory_hash;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grid navigation with ORCA collision avoidance and local MAPF deadlock resolution";

  py::class_<GridMap>(m, "GridMap")
      .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
      .def_property_readonly("width", &GridMap::width)
      .def_property_readonly("height", &GridMap::height)
      .def("blocked", [](const GridMap& g, int col, int row) { return g.blocked({col, row}); })
      .def("set_blocked", [](GridMap& g, int col, int row, bool v) { g.set_blocked({col, row}, v); },
           py::arg("col"), py::arg("row"), py::arg("value") = true)
      .def("blocked_count", &GridMap::blocked_count)
      .def("to_string", [](const GridMap& g) { return serialize_map(g); })
      .def_static("from_string", [](const std::string& s) { return load_map_string(s); })
      .def_static("load", &load_map_file);

  m.def("build_map", &build_map, py::arg("spec"),
        "gaps:<size>:<n>, warehouse:<size>:<n>, rooms[:<size>[:<seed>]] or a .map path");
  m.def("line_of_sight", [](const GridMap& g, std::pair<double, double> a, std::pair<double, double> b) {
    return line_of_sight(g, {a.first, a.second}, {b.first, b.second});
  });
  m.def("plan_theta_star", [](const GridMap& g, std::pair<int, int> s, std::pair<int, int> t) {
    std::vector<std::pair<double, double>> out;
    for (const Position& p : plan_theta_star(g, {s.first, s.second}, {t.first, t.second}).waypoints) {
      out.emplace_back(p.x, p.y);
    }
    return out;
  });

  m.def(
      "generate_instance",
      [](const GridMap& g, const std::string& placement, int n, std::uint64_t seed) {
        const Scenario sc =
            generate_instance(g, placement == "halls" ? Placement::Halls : Placement::Random, n, seed);
        std::vector<std::pair<int, int>> starts, goals;
        for (const Cell& c : sc.starts) starts.emplace_back(c.col, c.row);
        for (const Cell& c : sc.goals) goals.emplace_back(c.col, c.row);
        return py::make_tuple(starts, goals);
      },
      py::arg("map"), py::arg("placement"), py::arg("n_agents"), py::arg("seed"));

  m.def(
      "run",
      [](const GridMap& g, const std::vector<std::pair<int, int>>& starts, const std::vector<std::pair<int, int>>& goals,
         std::uint64_t seed, bool mapf, int max_steps, std::uint64_t pr_expansions, std::uint64_t ecbs_expansions) {
        Scenario sc;
        sc.starts = cells_from(starts);
        sc.goals = cells_from(goals);
        SimConfig cfg;
        cfg.seed = seed;
        cfg.mapf_enabled = mapf;
        cfg.max_steps = max_steps;
        cfg.pr_expansions = pr_expansions;
        cfg.ecbs_expansions = ecbs_expansions;
        py::gil_scoped_release release;
        const RunResult r = run(g, sc, cfg);
        py::gil_scoped_acquire acquire;
        return run_dict(r);
      },
      py::arg("map"), py::arg("starts"), py::arg("goals"), py::arg("seed") = 0, py::arg("mapf") = true,
      py::arg("max_steps") = 20000, py::arg("pr_expansions") = 0, py::arg("ecbs_expansions") = 0,
      "Simulate one instance; returns the RunResult fields as a dict.");

  py::class_<MAPFInstance>(m, "MAPFInstance")
      .def_static("from_json", &instance_from_json)
      .def("to_json", [](const MAPFInstance& i) { return instance_to_json(i); })
      .def_property_readonly("n_agents", [](const MAPFInstance& i) { return i.agents.size(); });

  m.def(
      "mapf_instance",
      [](const GridMap& g, const std::vector<std::pair<int, int>>& starts, const std::vector<std::pair<int, int>>& goals) {
        MAPFInstance inst;
        inst.area = whole_map_area(g);
        for (std::size_t k = 0; k < starts.size(); ++k) {
          const Cell goal{goals.at(k).first, goals.at(k).second};
          inst.agents.push_back({static_cast<int>(k), {starts[k].first, starts[k].second}, goal, center_of(goal)});
        }
        if (const std::string err = check_instance(inst); !err.empty()) throw std::invalid_argument(err);
        return inst;
      },
      py::arg("map"), py::arg("starts"), py::arg("goals"), "MAPF instance over the whole map.");

  m.def(
      "solve_push_and_rotate",
      [](const MAPFInstance& inst, double seconds) {
        SolverBudget b;
        b.seconds = seconds;
        return solve_dict(solve_push_and_rotate(inst, b));
      },
      py::arg("instance"), py::arg("seconds") = 1.0);
  m.def(
      "solve_ecbs",
      [](const MAPFInstance& inst, double w, double seconds) {
        SolverBudget b;
        b.seconds = seconds;
        return solve_dict(solve_ecbs(inst, w, b));
      },
      py::arg("instance"), py::arg("w") = 10.0, py::arg("seconds") = 1.0);
  m.def(
      "solve_optimal", [](const MAPFInstance& inst) { return solve_dict(solve_optimal_oracle(inst)); },
      py::arg("instance"), "Exact minimum-flowtime joint search (small instances only).");
  m.def("validate_solution", [](const MAPFInstance& inst, const std::vector<std::vector<std::pair<int, int>>>& plans) {
    std::vector<DiscretePlan> ps;
    for (const auto& p : plans) ps.push_back(cells_from(p));
    std::vector<std::string> out;
    for (const Violation& v : validate_solution(inst, make_solution(ps))) out.push_back(violation_name(v.kind));
    return out;
  });
}
