// Command-line front end: single runs, batches, map and instance generation,
// and the offline MAPF solver benchmark.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mapfnav/experiment.hpp"
#include "mapfnav/instance_io.hpp"
#include "mapfnav/maps.hpp"

using namespace mapfnav;
namespace fs = std::filesystem;

namespace {

// Flags named after the SimConfig / AgentParams / OrcaConfig fields.
void add_sim_flags(CLI::App* cmd, SimConfig& cfg) {
  cmd->add_option("--max_steps", cfg.max_steps, "step limit")->capture_default_str();
  cmd->add_option("--stall_window", cfg.stall_window, "steps averaged by the stall test")->capture_default_str();
  cmd->add_option("--stall_threshold", cfg.stall_threshold, "mean speed below which the run stalls")
      ->capture_default_str();
  cmd->add_option("--time_cap_mapf", cfg.time_cap_mapf, "seconds per MAPF solve")->capture_default_str();
  cmd->add_option("--w_ecbs", cfg.w_ecbs, "ECBS suboptimality factor")->capture_default_str();
  cmd->add_option("--offset", cfg.offset, "MAPF area margin in cells")->capture_default_str();
  cmd->add_option("--pr_expansions", cfg.pr_expansions, "Push and Rotate expansion budget (0: wall-clock)")
      ->capture_default_str();
  cmd->add_option("--ecbs_expansions", cfg.ecbs_expansions, "ECBS expansion budget (0: wall-clock)")
      ->capture_default_str();
  cmd->add_option("--r_phys", cfg.params.r_phys)->capture_default_str();
  cmd->add_option("--r_avoid", cfg.params.r_avoid)->capture_default_str();
  cmd->add_option("--v_max", cfg.params.v_max)->capture_default_str();
  cmd->add_option("--range", cfg.params.range)->capture_default_str();
  cmd->add_option("--window_k", cfg.params.window_k)->capture_default_str();
  cmd->add_option("--v_low", cfg.params.v_low)->capture_default_str();
  cmd->add_option("--tau", cfg.orca.tau)->capture_default_str();
  cmd->add_option("--tau_obst", cfg.orca.tau_obst)->capture_default_str();
}

nlohmann::json result_json(const RunResult& r) {
  return {{"success", r.success},
          {"reason", termination_name(r.reason)},
          {"steps", r.steps},
          {"flowtime", r.flowtime},
          {"makespan", r.makespan},
          {"n_mapf_calls", r.n_mapf_calls},
          {"mean_mapf_agents", r.mean_mapf_agents},
          {"mapf_mode_steps", r.mapf_mode_steps},
          {"normal_mode_steps", r.normal_mode_steps},
          {"collisions", r.collisions},
          {"n_mapf_failures", r.n_mapf_failures},
          {"audit_violations", r.audit.total()},
          {"trajectory_hash", r.trajectory_hash}};
}

Placement placement_for(const std::string& map_spec, const std::string& choice) {
  if (choice == "halls") return Placement::Halls;
  if (choice == "random") return Placement::Random;
  return map_spec.rfind("gaps", 0) == 0 ? Placement::Halls : Placement::Random;
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoi(item));
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized multi-agent navigation with ORCA and local MAPF"};
  app.require_subcommand(1);

  // run
  SimConfig run_cfg;
  std::string run_map, run_scenario, run_trajectory, run_instances, run_placement = "auto", run_algorithm = "orca-star-mapf";
  int run_agents = 0;
  auto* run_cmd = app.add_subcommand("run", "simulate one instance and print its RunResult as JSON");
  run_cmd->add_option("--map", run_map, "map spec or .map file (default: the scenario's map)");
  run_cmd->add_option("--scenario", run_scenario, "scenario JSON file");
  run_cmd->add_option("--agents", run_agents, "generate a scenario with this many agents instead");
  run_cmd->add_option("--seed", run_cfg.seed, "instance and priority seed")->capture_default_str();
  run_cmd->add_option("--placement", run_placement)->check(CLI::IsMember({"auto", "halls", "random"}));
  run_cmd->add_option("--algorithm", run_algorithm)->check(CLI::IsMember({"orca-star", "orca-star-mapf"}));
  run_cmd->add_option("--trajectory", run_trajectory, "write step,agent,x,y,mode lines here");
  run_cmd->add_option("--dump_instances", run_instances, "write every MAPF instance built into this directory");
  add_sim_flags(run_cmd, run_cfg);

  // batch
  ExperimentSpec spec;
  std::string batch_counts, batch_out, batch_svg, batch_placement = "auto";
  std::vector<std::string> batch_algorithms;
  auto* batch_cmd = app.add_subcommand("batch", "run both algorithms over generated instances, write CSV");
  batch_cmd->add_option("--map", spec.map, "map spec or .map file")->required();
  batch_cmd->add_option("--agents", batch_counts, "comma-separated agent counts")->required();
  batch_cmd->add_option("--instances", spec.instances, "instances per agent count")->capture_default_str();
  batch_cmd->add_option("--seed", spec.first_seed, "first instance seed")->capture_default_str();
  batch_cmd->add_option("--algorithm", batch_algorithms, "orca-star and/or orca-star-mapf (default both)")
      ->check(CLI::IsMember({"orca-star", "orca-star-mapf"}));
  batch_cmd->add_option("--placement", batch_placement)->check(CLI::IsMember({"auto", "halls", "random"}));
  batch_cmd->add_option("--threads", spec.threads)->capture_default_str();
  batch_cmd->add_option("--out", batch_out, "CSV path (default stdout)");
  batch_cmd->add_option("--svg", batch_svg, "success-rate chart path");
  add_sim_flags(batch_cmd, spec.config);

  // genmap
  std::string genmap_spec, genmap_out;
  auto* genmap_cmd = app.add_subcommand("genmap", "write a builtin map in MovingAI format");
  genmap_cmd->add_option("spec", genmap_spec, "gaps:<size>:<n>, warehouse:<size>:<n>, rooms[:<size>[:<seed>]]")
      ->required();
  genmap_cmd->add_option("--out", genmap_out, "output .map path (default stdout)");

  // geninstances
  std::string gen_map, gen_outdir, gen_placement = "auto";
  int gen_agents = 0, gen_count = 1;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("geninstances", "write scenario JSON files");
  gen_cmd->add_option("--map", gen_map, "map spec or .map file")->required();
  gen_cmd->add_option("--agents", gen_agents)->required();
  gen_cmd->add_option("--count", gen_count)->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed, "first seed")->capture_default_str();
  gen_cmd->add_option("--placement", gen_placement)->check(CLI::IsMember({"auto", "halls", "random"}));
  gen_cmd->add_option("--outdir", gen_outdir)->required();

  // solverbench
  std::vector<std::string> bench_files;
  double bench_w = 10.0, bench_cap = 1.0;
  std::uint64_t bench_expansions = 0;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("solverbench", "run both MAPF solvers on instance JSON files, write CSV");
  bench_cmd->add_option("instances", bench_files, "MAPF instance JSON files")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--w_ecbs", bench_w)->capture_default_str();
  bench_cmd->add_option("--time_cap", bench_cap, "seconds per solver and instance")->capture_default_str();
  bench_cmd->add_option("--expansions", bench_expansions, "expansion budget instead of wall-clock");
  bench_cmd->add_option("--out", bench_out, "CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      Scenario sc;
      std::string map_spec = run_map;
      if (!run_scenario.empty()) {
        sc = load_scenario_file(run_scenario);
        if (map_spec.empty()) map_spec = sc.map;
      }
      if (map_spec.empty()) throw std::invalid_argument("run: need --map or a scenario with a map");
      const GridMap map = build_map(map_spec);
      if (run_scenario.empty()) {
        sc = generate_instance(map, placement_for(map_spec, run_placement), run_agents, run_cfg.seed);
        sc.map = map_spec;
      }
      run_cfg.mapf_enabled = run_algorithm == "orca-star-mapf";
      World world(map, sc, run_cfg);
      std::ofstream traj;
      if (!run_trajectory.empty()) {
        traj = open_out(run_trajectory);
        traj.precision(17);
        traj << "step,agent,x,y,mode\n";
        world.set_trajectory_sink([&](int step, const AgentState& a) {
          traj << step << ',' << a.id << ',' << a.position.x << ',' << a.position.y << ',' << mode_name(a.mode)
               << '\n';
        });
      }
      if (!run_instances.empty()) {
        fs::create_directories(run_instances);
        int k = 0;
        world.set_instance_sink([&](int step, const MAPFInstance& inst) {
          const std::string name = "mapf_" + std::to_string(k++) + "_step" + std::to_string(step) + ".json";
          save_instance_file(inst, (fs::path(run_instances) / name).string());
        });
      }
      while (!world.terminated()) world.step();
      std::cout << result_json(world.result()).dump(1) << '\n';
    } else if (*batch_cmd) {
      spec.agent_counts = parse_counts(batch_counts);
      if (!batch_algorithms.empty()) {
        spec.algorithms.clear();
        for (const std::string& a : batch_algorithms) spec.algorithms.push_back(*parse_algorithm(a));
      }
      if (batch_placement != "auto") spec.placement = placement_for(spec.map, batch_placement);
      const GridMap map = build_map(spec.map);
      const BatchReport report = run_batch(map, spec);
      if (batch_out.empty()) {
        write_batch_csv(std::cout, report);
      } else {
        std::ofstream out = open_out(batch_out);
        write_batch_csv(out, report);
      }
      if (!batch_svg.empty()) open_out(batch_svg) << success_svg(report, spec.map);
    } else if (*genmap_cmd) {
      const GridMap map = build_map(genmap_spec);
      if (genmap_out.empty()) std::cout << serialize_map(map);
      else save_map_file(map, genmap_out);
    } else if (*gen_cmd) {
      const GridMap map = build_map(gen_map);
      fs::create_directories(gen_outdir);
      for (int i = 0; i < gen_count; ++i) {
        const std::uint64_t seed = gen_seed + static_cast<std::uint64_t>(i);
        Scenario sc = generate_instance(map, placement_for(gen_map, gen_placement), gen_agents, seed);
        sc.map = gen_map;
        const std::string name = "scen_" + std::to_string(gen_agents) + "_" + std::to_string(seed) + ".json";
        save_scenario_file(sc, (fs::path(gen_outdir) / name).string());
      }
    } else if (*bench_cmd) {
      std::vector<std::pair<std::string, MAPFInstance>> instances;
      for (const std::string& f : bench_files) instances.emplace_back(fs::path(f).filename().string(), load_instance_file(f));
      SolverBudget budget;
      if (bench_expansions != 0) budget.max_expansions = bench_expansions;
      else budget.seconds = bench_cap;
      const auto rows = solver_bench(instances, bench_w, budget);
      if (bench_out.empty()) {
        write_bench_csv(std::cout, rows);
      } else {
        std::ofstream out = open_out(bench_out);
        write_bench_csv(out, rows);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
