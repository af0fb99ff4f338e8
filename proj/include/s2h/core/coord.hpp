#pragma once

#include <compare>
#include <string_view>

namespace s2h {

/// 1-indexed (row, column) cell coordinate shared by tables and grids.
struct Coord {
  int row = 1;
  int col = 1;
  auto operator<=>(const Coord&) const = default;
};

/// Listed in clockwise order; this is also the grid solver's tie order.
enum class Direction { Right, Down, Left, Up };

inline constexpr Direction kDirections[] = {Direction::Right, Direction::Down, Direction::Left,
                                            Direction::Up};

constexpr Direction turn(Direction d, bool clockwise) {
  return static_cast<Direction>((static_cast<int>(d) + (clockwise ? 1 : 3)) % 4);
}

constexpr Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 2) % 4);
}

constexpr Coord step(Coord c, Direction d) {
  switch (d) {
    case Direction::Right: return {c.row, c.col + 1};
    case Direction::Down: return {c.row + 1, c.col};
    case Direction::Left: return {c.row, c.col - 1};
    case Direction::Up: return {c.row - 1, c.col};
  }
  return c;
}

constexpr std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Right: return "right";
    case Direction::Down: return "down";
    case Direction::Left: return "left";
    case Direction::Up: return "up";
  }
  return "?";
}

constexpr bool in_bounds(int n_rows, int n_cols, Coord c) {
  return c.row >= 1 && c.row <= n_rows && c.col >= 1 && c.col <= n_cols;
}

constexpr int manhattan(Coord a, Coord b) {
  return (a.row > b.row ? a.row - b.row : b.row - a.row) +
         (a.col > b.col ? a.col - b.col : b.col - a.col);
}

}  // namespace s2h
