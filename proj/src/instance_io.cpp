#include "mapfnav/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mapfnav {

using nlohmann::json;

namespace {

json cell_json(const Cell& c) { return json::array({c.col, c.row}); }

Cell json_cell(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw FormatError("expected [col, row], got " + j.dump());
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << '\n';
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json agents = json::array();
  for (std::size_t i = 0; i < s.starts.size(); ++i) {
    agents.push_back({{"start", cell_json(s.starts[i])}, {"goal", cell_json(s.goals[i])}});
  }
  return json{{"map", s.map}, {"agents", agents}, {"seed", s.seed}}.dump(1);
}

Scenario scenario_from_json(const std::string& text) {
  const json j = parse(text);
  Scenario s;
  try {
    s.map = field(j, "map").get<std::string>();
    for (const json& a : field(j, "agents")) {
      s.starts.push_back(json_cell(field(a, "start")));
      s.goals.push_back(json_cell(field(a, "goal")));
    }
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) { return scenario_from_json(read_file(path)); }
void save_scenario_file(const Scenario& s, const std::string& path) { write_file(path, scenario_to_json(s)); }

std::string instance_to_json(const MAPFInstance& inst) {
  json rows = json::array();
  for (int r = 0; r < inst.area.height; ++r) {
    std::string row;
    for (int c = 0; c < inst.area.width; ++c) {
      row += inst.area.blocked[static_cast<std::size_t>(r * inst.area.width + c)] ? '@' : '.';
    }
    rows.push_back(row);
  }
  json agents = json::array();
  for (const InstanceAgent& a : inst.agents) {
    agents.push_back({{"id", a.id},
                      {"start", cell_json(a.start)},
                      {"goal", cell_json(a.goal)},
                      {"waypoint", json::array({a.waypoint.x, a.waypoint.y})}});
  }
  json area{{"origin", cell_json(inst.area.origin)},
            {"width", inst.area.width},
            {"height", inst.area.height},
            {"rows", rows}};
  return json{{"area", area}, {"agents", agents}}.dump(1);
}

MAPFInstance instance_from_json(const std::string& text) {
  const json j = parse(text);
  MAPFInstance inst;
  try {
    const json& area = field(j, "area");
    inst.area.origin = json_cell(field(area, "origin"));
    inst.area.width = field(area, "width").get<int>();
    inst.area.height = field(area, "height").get<int>();
    if (inst.area.width < 1 || inst.area.height < 1) throw FormatError("area must be non-empty");
    const json& rows = field(area, "rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != inst.area.height) {
      throw FormatError("area rows do not match the height");
    }
    for (const json& row : rows) {
      const std::string s = row.get<std::string>();
      if (static_cast<int>(s.size()) != inst.area.width) throw FormatError("area row does not match the width");
      for (char ch : s) {
        if (ch != '.' && ch != '@') throw FormatError(std::string("unknown area character '") + ch + "'");
        inst.area.blocked.push_back(ch == '@' ? 1 : 0);
      }
    }
    for (const json& a : field(j, "agents")) {
      InstanceAgent agent;
      agent.id = field(a, "id").get<int>();
      agent.start = json_cell(field(a, "start"));
      agent.goal = json_cell(field(a, "goal"));
      if (a.contains("waypoint")) {
        const json& w = a.at("waypoint");
        agent.waypoint = {w.at(0).get<double>(), w.at(1).get<double>()};
      } else {
        agent.waypoint = center_of(agent.goal);
      }
      inst.agents.push_back(agent);
    }
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
  if (const std::string err = check_instance(inst); !err.empty()) throw FormatError("invalid instance: " + err);
  return inst;
}

MAPFInstance load_instance_file(const std::string& path) { return instance_from_json(read_file(path)); }
void save_instance_file(const MAPFInstance& inst, const std::string& path) { write_file(path, instance_to_json(inst)); }

}  // namespace mapfnav
