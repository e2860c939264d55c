#include "mapfnav/maps.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

#include "mapfnav/random.hpp"

namespace mapfnav {

GridMap make_gaps(int size, int n_passages) {
  if (size < 3) throw std::invalid_argument("gaps: size must be >= 3");
  if (n_passages < 0 || n_passages > size / 2) throw std::invalid_argument("gaps: bad passage count");
  GridMap g(size, size);
  const int wall = size / 2;
  for (int r = 0; r < size; ++r) g.set_blocked({wall, r}, true);
  for (int i = 0; i < n_passages; ++i) g.set_blocked({wall, (i + 1) * size / (n_passages + 1)}, false);
  return g;
}

GridMap make_warehouse(int size, int n_shelves) {
  if (size < 16) throw std::invalid_argument("warehouse: size must be >= 16");
  if (n_shelves < 1) throw std::invalid_argument("warehouse: need at least one shelf");
  const int margin = size / 8;
  const int length = (size - 3 * margin) / 2;
  const int rows = (n_shelves + 1) / 2;
  const int pitch = (size - 2 * margin) / rows;
  if (pitch < 4) throw std::invalid_argument("warehouse: too many shelves for the size");
  GridMap g(size, size);
  for (int s = 0; s < n_shelves; ++s) {
    const int col0 = s % 2 == 0 ? margin : 2 * margin + length;
    const int row0 = margin + (s / 2) * pitch + (pitch - 2) / 2;
    for (int r = row0; r < row0 + 2; ++r) {
      for (int c = col0; c < col0 + length; ++c) g.set_blocked({c, r}, true);
    }
  }
  return g;
}

GridMap make_rooms(int size, std::uint64_t seed) {
  if (size < 8 || size % 4 != 0) throw std::invalid_argument("rooms: size must be a multiple of 4, >= 8");
  GridMap g(size, size);
  // Walls on every index = 3 mod 4; the last one is the map border itself.
  for (int i = 3; i < size - 1; i += 4) {
    for (int j = 0; j < size; ++j) {
      g.set_blocked({i, j}, true);
      g.set_blocked({j, i}, true);
    }
  }
  Rng rng(seed, 0x500d5ULL);
  const int rooms = size / 4;
  for (int a = 0; a < rooms; ++a) {
    for (int b = 0; b + 1 < rooms; ++b) {
      // Wall segment between room b and b + 1, once across columns and once
      // across rows; one door always, a second one sometimes.
      const int wall = 4 * b + 3;
      for (int pass = 0; pass < 2; ++pass) {
        const int doors = rng.uniform() < 0.3 ? 2 : 1;
        for (int d = 0; d < doors; ++d) {
          const int along = 4 * a + static_cast<int>(rng.below(3));
          if (pass == 0) g.set_blocked({wall, along}, false);
          else g.set_blocked({along, wall}, false);
        }
      }
    }
  }
  return g;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out(1);
  for (char ch : s) {
    if (ch == sep) out.emplace_back();
    else out.back() += ch;
  }
  return out;
}

long long to_int(const std::string& s) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw std::invalid_argument("map spec: bad number '" + s + "'");
  return v;
}

}  // namespace

GridMap build_map(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  if (kind == "gaps" || kind == "warehouse") {
    if (parts.size() != 3) throw std::invalid_argument("map spec: expected " + kind + ":<size>:<n>");
    const int size = static_cast<int>(to_int(parts[1]));
    const int n = static_cast<int>(to_int(parts[2]));
    return kind == "gaps" ? make_gaps(size, n) : make_warehouse(size, n);
  }
  if (kind == "rooms") {
    if (parts.size() > 3) throw std::invalid_argument("map spec: expected rooms[:<size>[:<seed>]]");
    const int size = parts.size() > 1 ? static_cast<int>(to_int(parts[1])) : 32;
    const auto seed = parts.size() > 2 ? static_cast<std::uint64_t>(to_int(parts[2])) : 0;
    return make_rooms(size, seed);
  }
  return load_map_file(spec);
}

}  // namespace mapfnav
