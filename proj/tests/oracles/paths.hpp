#pragma once

// Straight transcription of the spiral and sinusoidal pseudo-code: string
// direction names, dictionary maps, tuple coordinates. Kept deliberately
// naive so it shares nothing with the library version.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Cell = std::pair<int, int>;  // (row, col), 1-indexed

inline const std::vector<std::string>& clockwise_cycle() {
  static const std::vector<std::string> c = {"right", "down", "left", "up"};
  return c;
}

inline std::map<std::string, Cell> coordinate_update() {
  return {{"right", {0, 1}}, {"down", {1, 0}}, {"left", {0, -1}}, {"up", {-1, 0}}};
}

// Direction-Change map: next direction in the rotation.
inline std::map<std::string, std::string> spiral_change(bool clockwise) {
  std::vector<std::string> cyc = clockwise_cycle();
  if (!clockwise) cyc = {"right", "up", "left", "down"};
  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < 4; ++i) m[cyc[i]] = cyc[(i + 1) % 4];
  return m;
}

inline bool inside(int nr, int nc, Cell c) {
  return c.first >= 1 && c.first <= nr && c.second >= 1 && c.second <= nc;
}

// nullopt stands for "the pseudo-code adds a cell outside the table" or k < 1.
inline std::optional<std::vector<Cell>> spiral(int nr, int nc, Cell start, int k, const std::string& initial = "right",
                                               bool clockwise = true) {
  if (k < 1 || !inside(nr, nc, start)) return std::nullopt;
  auto change = spiral_change(clockwise);
  auto update = coordinate_update();
  int n_seg = 0;
  Cell cur = start;
  std::string dir = initial;
  std::vector<Cell> path;
  while (n_seg != k) {
    if (!inside(nr, nc, cur)) return std::nullopt;
    path.push_back(cur);
    Cell tmp = {cur.first + update[dir].first, cur.second + update[dir].second};
    if (!inside(nr, nc, tmp)) {
      dir = change[dir];
      n_seg += 1;
    }
    cur = {cur.first + update[dir].first, cur.second + update[dir].second};
    if (path.size() > 100000) return std::nullopt;
  }
  return path;
}

inline std::optional<std::vector<Cell>> sinusoidal(int nr, int nc, Cell start, int k, const std::string& initial = "right",
                                                   bool clockwise = true) {
  if (k < 1 || !inside(nr, nc, start)) return std::nullopt;
  auto update = coordinate_update();
  auto rot = spiral_change(clockwise);
  const std::string back = rot[rot[initial]];
  std::map<std::string, std::string> change = {{initial, back}, {back, initial}};
  // The connector: "Increment column coordinate" read as a step along the
  // direction one turn after the initial one (down for the default).
  const Cell connector = update[rot[initial]];
  int n_seg = 0;
  Cell cur = start;
  std::string dir = initial;
  std::vector<Cell> path;
  while (n_seg != k) {
    if (!inside(nr, nc, cur)) return std::nullopt;
    path.push_back(cur);
    Cell tmp = {cur.first + update[dir].first, cur.second + update[dir].second};
    if (!inside(nr, nc, tmp)) {
      if (n_seg == k - 1) break;
      for (int i = 0; i < 2; ++i) {
        cur = {cur.first + connector.first, cur.second + connector.second};
        if (!inside(nr, nc, cur)) return std::nullopt;
        path.push_back(cur);
      }
      dir = change[dir];
      n_seg += 2;
    }
    cur = {cur.first + update[dir].first, cur.second + update[dir].second};
    if (path.size() > 100000) return std::nullopt;
  }
  return path;
}

}  // namespace oracle
