#pragma once

#include <stdexcept>
#include <string>

#include "mapfnav/mapf_instance.hpp"
#include "mapfnav/simulator.hpp"

namespace mapfnav {

/// Malformed or inconsistent JSON document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `{"map": path, "agents": [{"start": [c, r], "goal": [c, r]}, ...], "seed": s}`
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario_file(const std::string& path);
void save_scenario_file(const Scenario& s, const std::string& path);

/// `{"area": {"origin": [c, r], "width": w, "height": h, "rows": ["..@.", ...]},
///   "agents": [{"id": i, "start": [c, r], "goal": [c, r], "waypoint": [x, y]}, ...]}`
/// where `rows` is the blocked bitmap, `@` blocked, row 0 first.
std::string instance_to_json(const MAPFInstance& inst);
MAPFInstance instance_from_json(const std::string& text);
MAPFInstance load_instance_file(const std::string& path);
void save_instance_file(const MAPFInstance& inst, const std::string& path);

}  // namespace mapfnav
