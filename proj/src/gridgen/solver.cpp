#include <algorithm>
#include <array>
#include <limits>
#include <set>

#include "s2h/core/error.hpp"
#include "s2h/gridgen/gridgen.hpp"

namespace s2h::grid {

int preference_key(const GridInstance& inst, const std::vector<bool>& collected, Coord cell) {
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < inst.objects.size(); ++i)
    if (!collected[i]) best = std::min(best, manhattan(cell, inst.objects[i].pos));
  return best == std::numeric_limits<int>::max() ? manhattan(cell, inst.end) : best;
}

DfsTrace dfs_solve(const GridInstance& inst) {
  if (!in_bounds(inst.n_rows, inst.n_cols, inst.start) || !in_bounds(inst.n_rows, inst.n_cols, inst.end))
    throw InvalidArgument("grid start or destination outside the grid");
  DfsTrace trace;
  std::vector<bool> collected(inst.objects.size(), false);
  std::size_t remaining = inst.objects.size();
  std::vector<Coord> stack{inst.start};
  std::vector<Direction> moves;
  std::size_t base = 0;  // stack entries at or below this index are committed
  std::set<Coord> visited{inst.start};

  // Bounded by (cells * 4) decisions per committed leg; the guard only
  // protects against a logic error turning into an endless loop.
  const std::size_t guard = static_cast<std::size_t>(inst.n_rows * inst.n_cols) * 8 *
                            (inst.objects.size() + 1);
  while (!(stack.back() == inst.end && remaining == 0)) {
    if (trace.steps.size() > guard) throw Error("grid solver exceeded its step guard");
    const Coord cur = stack.back();
    std::array<Direction, 4> order = {Direction::Right, Direction::Down, Direction::Left, Direction::Up};
    std::stable_sort(order.begin(), order.end(), [&](Direction a, Direction b) {
      return preference_key(inst, collected, step(cur, a)) < preference_key(inst, collected, step(cur, b));
    });
    TraceStep ts;
    ts.cell = cur;
    for (Direction d : order) {
      Coord t = step(cur, d);
      CandidateStatus status = CandidateStatus::Ok;
      if (!in_bounds(inst.n_rows, inst.n_cols, t)) status = CandidateStatus::OutOfBounds;
      else if (inst.has_obstacle(t)) status = CandidateStatus::Obstacle;
      else if (visited.contains(t)) status = CandidateStatus::Visited;
      ts.considered.push_back({d, t, status});
      if (status == CandidateStatus::Ok) break;
    }
    if (ts.considered.back().status == CandidateStatus::Ok) {
      const Candidate& c = ts.considered.back();
      ts.move = c.dir;
      ts.next = c.target;
      stack.push_back(c.target);
      moves.push_back(c.dir);
      visited.insert(c.target);
      if (auto idx = inst.object_at(c.target); idx && !collected[*idx]) {
        collected[*idx] = true;
        --remaining;
        trace.collected_order.push_back(*idx);
        ts.collected = *idx;
        visited = {c.target};
        base = stack.size() - 1;
      }
    } else {
      if (stack.size() - 1 <= base)
        throw InvalidArgument("grid objective unreachable from (" + std::to_string(cur.row) + ", " +
                              std::to_string(cur.col) + ")");
      stack.pop_back();
      moves.pop_back();
      ts.backtrack = true;
      ts.next = stack.back();
    }
    trace.steps.push_back(std::move(ts));
  }
  trace.final_actions = std::move(moves);
  return trace;
}

SimulationResult simulate(const GridInstance& inst, const std::vector<Direction>& moves) {
  SimulationResult r;
  Coord cur = inst.start;
  std::vector<bool> collected(inst.objects.size(), false);
  for (Direction d : moves) {
    Coord next = step(cur, d);
    if (!in_bounds(inst.n_rows, inst.n_cols, next)) {
      r.left_grid = true;
      break;
    }
    cur = next;
    if (inst.has_obstacle(cur)) ++r.obstacles_hit;
    if (auto idx = inst.object_at(cur)) collected[*idx] = true;
  }
  r.final_cell = cur;
  r.reached_end = !r.left_grid && cur == inst.end;
  r.objects_collected = static_cast<int>(std::count(collected.begin(), collected.end(), true));
  return r;
}

std::optional<Direction> parse_direction(std::string_view word) {
  for (Direction d : kDirections)
    if (to_string(d) == word) return d;
  return std::nullopt;
}

}  // namespace s2h::grid
