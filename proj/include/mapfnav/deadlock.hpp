#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mapfnav {

enum class Mode { Normal, MoveToMAPFStart, MAPF };

const char* mode_name(Mode m);

/// Ring buffer of the last `capacity` per-step speeds.
class SpeedWindow {
 public:
  explicit SpeedWindow(int capacity = 250);

  void record(double speed);
  void clear();

  int capacity() const { return static_cast<int>(samples_.size()); }
  int count() const { return count_; }
  bool full() const { return count_ == capacity(); }
  /// Mean of the stored samples; 0 when empty.
  double average() const;

 private:
  std::vector<double> samples_;
  std::size_t head_ = 0;
  int count_ = 0;
  double sum_ = 0.0;
};

/// Speed an agent shares with its neighbours: v_max while it follows (or moves
/// towards) a MAPF plan and while its window is still filling up, the window
/// average otherwise.
double reported_speed(const SpeedWindow& w, Mode mode, double v_max);

/// Deadlock iff the agent itself is slow and at least one neighbour reports a
/// slow speed too.
bool detect_deadlock(double self_avg, std::span<const double> neighbor_reports, double v_low);

}  // namespace mapfnav
