#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "s2h/core/coord.hpp"
#include "s2h/core/types.hpp"

namespace s2h::table {

/// One of the eight direction-change permutations of the path algorithms.
/// Default is "start right, rotate clockwise" (right -> down -> left -> up).
struct Orientation {
  Direction initial = Direction::Right;
  bool clockwise = true;
  auto operator<=>(const Orientation&) const = default;
};

enum class PathPattern { Spiral, Sinusoidal };
std::string_view to_string(PathPattern p);

struct PatternMeta {
  int segments = 0;
  std::vector<PathPattern> patterns;
  bool operator==(const PatternMeta&) const = default;
};

struct TableInstance {
  TaskKind task = TaskKind::TableReadout;
  Difficulty difficulty = Difficulty::Simple;
  int n_rows = 0;
  int n_cols = 0;
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;
  std::vector<std::vector<int>> values;  // [row-1][col-1], digits 0-9
  std::vector<Coord> path;
  PatternMeta pattern_meta;

  int value(Coord c) const { return values.at(c.row - 1).at(c.col - 1); }
  std::vector<int> path_values() const;
  /// Cells drawn with the highlight color: the whole path for table readout,
  /// the two endpoints for consecutive readout.
  std::vector<Coord> highlighted() const;
  bool operator==(const TableInstance&) const = default;
};

/// The fixed pool of header words; tables draw distinct names from it.
const std::vector<std::string>& header_words();

/// Row-major walk between two cells (left-to-right when the end row is
/// below, right-to-left when above, direct within one row).
std::vector<Coord> gen_consecutive_path(int n_rows, int n_cols, Coord start, Coord end);

/// Boundary spiral: walk straight, turn when the next cell would leave the
/// table, stop after `k` turns. Throws InvalidArgument when k < 1, the start
/// is outside, or the walk would add a cell outside the table.
std::vector<Coord> gen_spiral_path(int n_rows, int n_cols, Coord start, int k,
                                   Orientation orientation = {});

/// Zig-zag: walk along the main axis, at the boundary take a two-cell
/// connector perpendicular to it and reverse. The segment counter advances by
/// two per connector and the walk stops at the first boundary once it reaches
/// k - 1. Throws InvalidArgument when a connector leaves the table.
std::vector<Coord> gen_sinusoidal_path(int n_rows, int n_cols, Coord start, int k,
                                       Orientation orientation = {});

/// Number of maximal straight runs; a single cell counts as one.
int count_segments(const std::vector<Coord>& path);
bool is_loop_free(const std::vector<Coord>& path);
bool is_continuous(const std::vector<Coord>& path);

TableInstance gen_table_readout_instance(Difficulty difficulty, std::uint64_t seed);
TableInstance gen_consecutive_instance(Difficulty difficulty, std::uint64_t seed);

/// Inclusive length band for consecutive readout at a difficulty.
std::pair<int, int> consecutive_length_band(Difficulty difficulty);
/// Inclusive rejection window on path length for table readout.
std::pair<int, int> readout_length_window(Difficulty difficulty);

/// Task instruction. `with_table` appends the LaTeX form for text input.
std::string table_prompt(const TableInstance& inst, bool with_table);
/// LaTeX tabular; highlighted cells are wrapped in \hl{}.
std::string emit_table_text(const TableInstance& inst);

struct CotAnswer {
  std::string cot;
  std::string answer;
};
CotAnswer emit_table_cot(const TableInstance& inst);

std::string to_json(const TableInstance& inst);
TableInstance table_from_json(const std::string& text);

}  // namespace s2h::table
