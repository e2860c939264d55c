#include "mapfnav/grid_map.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

namespace mapfnav {

GridMap::GridMap(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("GridMap: dimensions must be positive");
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

GridMap::GridMap(int width, int height, const std::vector<Cell>& blocked) : GridMap(width, height) {
  for (const Cell& c : blocked) {
    if (!in_bounds(c)) throw std::invalid_argument("GridMap: blocked cell out of bounds");
    cells_[index(c)] = 1;
  }
}

void GridMap::set_blocked(const Cell& c, bool value) {
  if (!in_bounds(c)) throw std::out_of_range("GridMap::set_blocked: cell out of bounds");
  cells_[index(c)] = value ? 1 : 0;
}

std::vector<Cell> GridMap::blocked_cells() const {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] != 0) out.push_back(cell_at(i));
  }
  return out;
}

std::size_t GridMap::blocked_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

int parse_dimension(const std::string& line, std::string_view key) {
  std::istringstream ss(line);
  std::string word;
  std::string number;
  std::string extra;
  if (!(ss >> word >> number) || word != key || (ss >> extra)) {
    throw MapParseError(MapParseErrorKind::MalformedHeader,
                        "expected '" + std::string(key) + " <int>', got '" + line + "'");
  }
  int value = 0;
  const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (ec != std::errc{} || ptr != number.data() + number.size() || value <= 0) {
    throw MapParseError(MapParseErrorKind::MalformedHeader,
                        "invalid " + std::string(key) + " value '" + number + "'");
  }
  return value;
}

}  // namespace

GridMap load_map(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) {
      throw MapParseError(MapParseErrorKind::MalformedHeader, std::string("missing ") + what + " line");
    }
    line = strip_cr(line);
  };

  next_line("type");
  {
    std::istringstream ss(line);
    std::string word;
    std::string kind;
    if (!(ss >> word >> kind) || word != "type") {
      throw MapParseError(MapParseErrorKind::MalformedHeader, "expected 'type <name>', got '" + line + "'");
    }
  }
  next_line("height");
  const int height = parse_dimension(line, "height");
  next_line("width");
  const int width = parse_dimension(line, "width");
  next_line("map");
  if (line != "map") {
    throw MapParseError(MapParseErrorKind::MalformedHeader, "expected 'map', got '" + line + "'");
  }

  GridMap g(width, height);
  for (int row = 0; row < height; ++row) {
    if (!std::getline(in, line)) {
      throw MapParseError(MapParseErrorKind::DimensionMismatch,
                          "expected " + std::to_string(height) + " rows, got " + std::to_string(row));
    }
    line = strip_cr(line);
    if (static_cast<int>(line.size()) != width) {
      throw MapParseError(MapParseErrorKind::DimensionMismatch,
                          "row " + std::to_string(row) + " has " + std::to_string(line.size()) +
                              " characters, expected " + std::to_string(width));
    }
    for (int col = 0; col < width; ++col) {
      switch (line[static_cast<std::size_t>(col)]) {
        case '.':
        case 'G':
          break;
        case '@':
        case 'T':
          g.set_blocked({col, row}, true);
          break;
        default:
          throw MapParseError(MapParseErrorKind::UnknownCharacter,
                              std::string("unknown map character '") + line[static_cast<std::size_t>(col)] +
                                  "' at row " + std::to_string(row) + ", column " + std::to_string(col));
      }
    }
  }
  while (std::getline(in, line)) {
    if (!strip_cr(line).empty()) {
      throw MapParseError(MapParseErrorKind::DimensionMismatch, "more rows than declared height");
    }
  }
  return g;
}

GridMap load_map_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_map(in);
}

GridMap load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file '" + path + "'");
  return load_map(in);
}

std::string serialize_map(const GridMap& g) {
  std::string out = "type octile\nheight " + std::to_string(g.height()) + "\nwidth " +
                    std::to_string(g.width()) + "\nmap\n";
  out.reserve(out.size() + g.size() + static_cast<std::size_t>(g.height()));
  for (int row = 0; row < g.height(); ++row) {
    for (int col = 0; col < g.width(); ++col) out.push_back(g.blocked({col, row}) ? '@' : '.');
    out.push_back('\n');
  }
  return out;
}

void save_map_file(const GridMap& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write map file '" + path + "'");
  out << serialize_map(g);
}

namespace {

// Slack added to touched intervals so that rounding never hides a contact.
constexpr double kTouchEps = 1e-9;

// Calls visit(cell) for every cell the closed segment touches; stops early
// when visit returns false. Returns false iff stopped early.
template <typename Visit>
bool for_each_touched(Position a, Position b, Visit&& visit) {
  // Canonical endpoint order keeps the result independent of direction.
  if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);

  const double xmin = a.x - kTouchEps;
  const double xmax = b.x + kTouchEps;
  const int col_lo = static_cast<int>(std::ceil(xmin)) - 1;
  const int col_hi = static_cast<int>(std::floor(xmax));
  const double dx = b.x - a.x;

  for (int col = col_lo; col <= col_hi; ++col) {
    double ylo;
    double yhi;
    if (dx <= 0.0) {
      ylo = std::min(a.y, b.y);
      yhi = std::max(a.y, b.y);
    } else {
      const double x0 = std::max(a.x, static_cast<double>(col));
      const double x1 = std::min(b.x, static_cast<double>(col + 1));
      const double t0 = std::clamp((x0 - a.x) / dx, 0.0, 1.0);
      const double t1 = std::clamp((x1 - a.x) / dx, 0.0, 1.0);
      const double y0 = a.y + t0 * (b.y - a.y);
      const double y1 = a.y + t1 * (b.y - a.y);
      ylo = std::min(y0, y1);
      yhi = std::max(y0, y1);
    }
    const int row_lo = static_cast<int>(std::ceil(ylo - kTouchEps)) - 1;
    const int row_hi = static_cast<int>(std::floor(yhi + kTouchEps));
    for (int row = row_lo; row <= row_hi; ++row) {
      if (!visit(Cell{col, row})) return false;
    }
  }
  return true;
}

}  // namespace

bool line_of_sight(const GridMap& g, const Position& a, const Position& b) {
  return for_each_touched(a, b, [&](const Cell& c) { return !g.blocked(c); });
}

std::vector<Cell> supercover(const Position& a, const Position& b) {
  std::vector<Cell> out;
  for_each_touched(a, b, [&](const Cell& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

}  // namespace mapfnav
