#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "s2h/core/coord.hpp"
#include "s2h/core/types.hpp"

namespace s2h::grid {

struct GlyphEntry {
  std::string_view name;
  char32_t codepoint;
};

/// Collectible objects, in vocabulary order.
const std::vector<GlyphEntry>& object_glyphs();

enum class ObstacleKind { Dot, Cross, Square, Triangle, Plus };
inline constexpr ObstacleKind kObstacleKinds[] = {ObstacleKind::Dot, ObstacleKind::Cross,
                                                  ObstacleKind::Square, ObstacleKind::Triangle,
                                                  ObstacleKind::Plus};
std::string_view to_string(ObstacleKind k);
char32_t obstacle_glyph(ObstacleKind k);
std::optional<char32_t> object_glyph(std::string_view name);

struct GridObject {
  std::string name;
  char32_t glyph = 0;
  Coord pos;
  bool operator==(const GridObject&) const = default;
};

struct Obstacle {
  ObstacleKind kind = ObstacleKind::Dot;
  Coord pos;
  bool operator==(const Obstacle&) const = default;
};

struct GridInstance {
  Difficulty difficulty = Difficulty::Simple;
  int n_rows = 0;
  int n_cols = 0;
  Coord start;
  Coord end;
  std::vector<GridObject> objects;
  std::vector<Obstacle> obstacles;
  int dfs_steps = 0;

  bool has_obstacle(Coord c) const;
  /// Index into `objects`, if an object sits at `c`.
  std::optional<std::size_t> object_at(Coord c) const;
  int obstacle_kind_count() const;
  bool operator==(const GridInstance&) const = default;
};

enum class CandidateStatus { Ok, Obstacle, Visited, OutOfBounds };

struct Candidate {
  Direction dir = Direction::Right;
  Coord target;
  CandidateStatus status = CandidateStatus::Ok;
  bool operator==(const Candidate&) const = default;
};

/// One solver decision at `cell`: either a move along the last considered
/// candidate, or a backtrack after every candidate was rejected.
struct TraceStep {
  Coord cell;
  std::vector<Candidate> considered;
  bool backtrack = false;
  Direction move = Direction::Right;
  Coord next;  // cell after the move or backtrack
  std::optional<std::size_t> collected;  // object picked up on arrival
  bool operator==(const TraceStep&) const = default;
};

struct DfsTrace {
  std::vector<TraceStep> steps;
  std::vector<std::size_t> collected_order;
  std::vector<Direction> final_actions;
  bool operator==(const DfsTrace&) const = default;
};

/// Preference key of a candidate cell: Manhattan distance to the nearest
/// uncollected object, or to the destination once everything is collected.
int preference_key(const GridInstance& inst, const std::vector<bool>& collected, Coord cell);

/// Depth-first search that walks toward the nearest uncollected object.
/// Candidates are tried by ascending preference key, ties broken in the order
/// right, down, left, up. Collecting an object clears the visited set and
/// commits the route so far. Throws InvalidArgument when
/// an object or the destination is unreachable.
DfsTrace dfs_solve(const GridInstance& inst);

struct GenOptions {
  double obstacle_probability = 0.12;
  int max_attempts = 5000;
};

GridInstance gen_grid_instance(Difficulty difficulty, std::uint64_t seed, DfsTrace* trace = nullptr,
                               const GenOptions& options = {});

struct SimulationResult {
  Coord final_cell;
  bool reached_end = false;  // final cell is the destination
  bool left_grid = false;    // a move stepped outside; simulation stops there
  int objects_collected = 0;
  int obstacles_hit = 0;
};

SimulationResult simulate(const GridInstance& inst, const std::vector<Direction>& moves);
std::optional<Direction> parse_direction(std::string_view word);

std::string grid_prompt(const GridInstance& inst, bool with_grid);
/// LaTeX tabular: numbered header row/column, S and E for start and
/// destination, one glyph per object or obstacle cell.
std::string emit_grid_text(const GridInstance& inst);

struct CotAnswer {
  std::string cot;
  std::string answer;
};
CotAnswer emit_grid_cot(const GridInstance& inst, const DfsTrace& trace);

std::string to_json(const GridInstance& inst);
GridInstance grid_from_json(const std::string& text);

}  // namespace s2h::grid
