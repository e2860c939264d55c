#pragma once

#include <stdexcept>

namespace mapfnav {

/// Per-agent physical and behavioural parameters. Defaults are the values
/// used throughout the experiments.
struct AgentParams {
  double r_phys = 0.3;    ///< body radius (cell widths)
  double r_avoid = 0.49;  ///< radius used by collision avoidance
  double v_max = 0.1;     ///< cell widths per step
  double range = 3.0;     ///< observation/communication range (cell widths)
  int window_k = 250;     ///< speed window length (steps)
  double v_low = 0.001;   ///< deadlock speed threshold

  void validate() const {
    if (!(r_phys > 0.0 && r_phys <= r_avoid && r_avoid < 0.5)) {
      throw std::invalid_argument("AgentParams: need 0 < r_phys <= r_avoid < 0.5");
    }
    if (!(v_max > 0.0)) throw std::invalid_argument("AgentParams: v_max must be positive");
    if (!(range > 0.0)) throw std::invalid_argument("AgentParams: range must be positive");
    if (window_k < 1) throw std::invalid_argument("AgentParams: window_k must be >= 1");
    if (!(v_low > 0.0 && v_low < v_max)) {
      throw std::invalid_argument("AgentParams: need 0 < v_low < v_max");
    }
  }
};

}  // namespace mapfnav
