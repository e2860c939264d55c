#include "mapfnav/deadlock.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mapfnav {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Normal:
      return "normal";
    case Mode::MoveToMAPFStart:
      return "to_start";
    case Mode::MAPF:
      return "mapf";
  }
  return "?";
}

SpeedWindow::SpeedWindow(int capacity) {
  if (capacity < 1) throw std::invalid_argument("SpeedWindow: capacity must be >= 1");
  samples_.assign(static_cast<std::size_t>(capacity), 0.0);
}

void SpeedWindow::record(double speed) {
  if (full()) sum_ -= samples_[head_];
  else ++count_;
  samples_[head_] = speed;
  sum_ += speed;
  head_ = (head_ + 1) % samples_.size();
  // Resum once per lap so rounding in the running sum cannot accumulate.
  if (head_ == 0) sum_ = std::accumulate(samples_.begin(), samples_.begin() + count_, 0.0);
}

void SpeedWindow::clear() {
  std::fill(samples_.begin(), samples_.end(), 0.0);
  head_ = 0;
  count_ = 0;
  sum_ = 0.0;
}

double SpeedWindow::average() const { return count_ == 0 ? 0.0 : std::max(0.0, sum_) / count_; }

double reported_speed(const SpeedWindow& w, Mode mode, double v_max) {
  if (mode != Mode::Normal || !w.full()) return v_max;
  return w.average();
}

bool detect_deadlock(double self_avg, std::span<const double> neighbor_reports, double v_low) {
  if (!(self_avg < v_low)) return false;
  return std::any_of(neighbor_reports.begin(), neighbor_reports.end(), [&](double r) { return r < v_low; });
}

}  // namespace mapfnav
