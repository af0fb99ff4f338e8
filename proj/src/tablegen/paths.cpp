#include <cstdlib>
#include <set>

#include "s2h/core/error.hpp"
#include "s2h/tablegen/tablegen.hpp"

namespace s2h::table {

std::string_view to_string(PathPattern p) {
  return p == PathPattern::Spiral ? "spiral" : "sinusoidal";
}

namespace {

void check_start(int n_rows, int n_cols, Coord start, int k) {
  if (n_rows < 1 || n_cols < 1) throw InvalidArgument("table dimensions must be positive");
  if (k < 1) throw InvalidArgument("segment count k must be at least 1");
  if (!in_bounds(n_rows, n_cols, start)) throw InvalidArgument("start cell outside the table");
}

void add_cell(std::vector<Coord>& path, int n_rows, int n_cols, Coord c) {
  if (!in_bounds(n_rows, n_cols, c))
    throw InvalidArgument("path walks outside the table at (" + std::to_string(c.row) + ", " +
                          std::to_string(c.col) + ")");
  path.push_back(c);
}

}  // namespace

std::vector<Coord> gen_consecutive_path(int n_rows, int n_cols, Coord start, Coord end) {
  if (!in_bounds(n_rows, n_cols, start) || !in_bounds(n_rows, n_cols, end))
    throw InvalidArgument("consecutive path endpoints must lie inside the table");
  std::vector<Coord> path;
  if (start.row == end.row) {
    if (start.col > end.col)
      throw InvalidArgument("same-row consecutive path must not run right to left");
    for (int c = start.col; c <= end.col; ++c) path.push_back({start.row, c});
    return path;
  }
  Coord cur = start;
  if (start.row < end.row) {
    while (cur != end) {
      path.push_back(cur);
      cur = cur.col == n_cols ? Coord{cur.row + 1, 1} : Coord{cur.row, cur.col + 1};
    }
  } else {
    while (cur != end) {
      path.push_back(cur);
      cur = cur.col == 1 ? Coord{cur.row - 1, n_cols} : Coord{cur.row, cur.col - 1};
    }
  }
  path.push_back(end);
  return path;
}

std::vector<Coord> gen_spiral_path(int n_rows, int n_cols, Coord start, int k,
                                   Orientation orientation) {
  check_start(n_rows, n_cols, start, k);
  std::vector<Coord> path;
  int n_seg = 0;
  Coord cur = start;
  Direction dir = orientation.initial;
  while (n_seg != k) {
    add_cell(path, n_rows, n_cols, cur);
    if (!in_bounds(n_rows, n_cols, step(cur, dir))) {
      dir = turn(dir, orientation.clockwise);
      ++n_seg;
    }
    cur = step(cur, dir);
  }
  return path;
}

std::vector<Coord> gen_sinusoidal_path(int n_rows, int n_cols, Coord start, int k,
                                       Orientation orientation) {
  check_start(n_rows, n_cols, start, k);
  const Direction connector = turn(orientation.initial, orientation.clockwise);
  std::vector<Coord> path;
  int n_seg = 0;
  Coord cur = start;
  Direction dir = orientation.initial;
  while (n_seg != k) {
    add_cell(path, n_rows, n_cols, cur);
    if (!in_bounds(n_rows, n_cols, step(cur, dir))) {
      if (n_seg == k - 1) break;
      for (int i = 0; i < 2; ++i) {
        cur = step(cur, connector);
        add_cell(path, n_rows, n_cols, cur);
      }
      dir = opposite(dir);
      n_seg += 2;
    }
    cur = step(cur, dir);
  }
  return path;
}

int count_segments(const std::vector<Coord>& path) {
  if (path.empty()) return 0;
  if (path.size() < 3) return 1;
  int segments = 1;
  for (std::size_t i = 2; i < path.size(); ++i) {
    int dr0 = path[i - 1].row - path[i - 2].row, dc0 = path[i - 1].col - path[i - 2].col;
    int dr1 = path[i].row - path[i - 1].row, dc1 = path[i].col - path[i - 1].col;
    if (dr0 != dr1 || dc0 != dc1) ++segments;
  }
  return segments;
}

bool is_loop_free(const std::vector<Coord>& path) {
  std::set<Coord> seen(path.begin(), path.end());
  return seen.size() == path.size();
}

bool is_continuous(const std::vector<Coord>& path) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    int d = std::abs(path[i].row - path[i - 1].row) + std::abs(path[i].col - path[i - 1].col);
    if (d != 1) return false;
  }
  return true;
}

}  // namespace s2h::table
