#include <algorithm>

#include "s2h/core/error.hpp"
#include "s2h/core/rng.hpp"
#include "s2h/gridgen/gridgen.hpp"

namespace s2h::grid {

namespace {

struct Band {
  int min_objects, max_objects;
  int min_kinds, max_kinds;
  int min_steps, max_steps;
};

Band band_for(Difficulty d) {
  if (d == Difficulty::Simple) return {1, 2, 1, 1, 10, 25};
  if (d == Difficulty::Hard) return {2, 5, 3, 5, 26, 60};
  throw InvalidArgument("grid navigation has no medium difficulty");
}

}  // namespace

GridInstance gen_grid_instance(Difficulty difficulty, std::uint64_t seed, DfsTrace* trace,
                               const GenOptions& options) {
  const Band band = band_for(difficulty);
  Rng rng(seed);
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    GridInstance inst;
    inst.difficulty = difficulty;
    inst.n_rows = rng.uniform_int(8, 12);
    inst.n_cols = rng.uniform_int(8, 12);
    std::vector<Coord> cells;
    for (int r = 1; r <= inst.n_rows; ++r)
      for (int c = 1; c <= inst.n_cols; ++c) cells.push_back({r, c});
    rng.shuffle(cells);

    const int n_objects = rng.uniform_int(band.min_objects, band.max_objects);
    inst.start = cells[0];
    inst.end = cells[1];
    std::vector<std::size_t> names(object_glyphs().size());
    for (std::size_t i = 0; i < names.size(); ++i) names[i] = i;
    rng.shuffle(names);
    for (int i = 0; i < n_objects; ++i) {
      const auto& g = object_glyphs()[names[static_cast<std::size_t>(i)]];
      inst.objects.push_back({std::string(g.name), g.codepoint, cells[static_cast<std::size_t>(2 + i)]});
    }

    const int n_kinds = rng.uniform_int(band.min_kinds, band.max_kinds);
    std::vector<ObstacleKind> kinds(std::begin(kObstacleKinds), std::end(kObstacleKinds));
    rng.shuffle(kinds);
    kinds.resize(static_cast<std::size_t>(n_kinds));
    for (std::size_t i = static_cast<std::size_t>(2 + n_objects); i < cells.size(); ++i)
      if (rng.bernoulli(options.obstacle_probability))
        inst.obstacles.push_back({kinds[rng.below(kinds.size())], cells[i]});
    std::sort(inst.obstacles.begin(), inst.obstacles.end(),
              [](const Obstacle& a, const Obstacle& b) { return a.pos < b.pos; });
    if (inst.obstacle_kind_count() != n_kinds) continue;

    DfsTrace t;
    try {
      t = dfs_solve(inst);
    } catch (const InvalidArgument&) {
      continue;
    }
    const int steps = static_cast<int>(t.steps.size());
    if (steps < band.min_steps || steps > band.max_steps) continue;
    inst.dfs_steps = steps;
    if (trace) *trace = std::move(t);
    return inst;
  }
  throw SamplingExhausted("grid navigation: no layout in band after " +
                          std::to_string(options.max_attempts) + " attempts");
}

}  // namespace s2h::grid
