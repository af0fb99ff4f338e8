#include <algorithm>
#include <array>

#include "s2h/core/error.hpp"
#include "s2h/core/rng.hpp"
#include "s2h/tablegen/tablegen.hpp"

namespace s2h::table {

namespace {

constexpr int kMaxAttempts = 1000;

const std::array<Orientation, 8> kOrientations = {{
    {Direction::Right, true}, {Direction::Right, false}, {Direction::Down, true},
    {Direction::Down, false}, {Direction::Left, true},   {Direction::Left, false},
    {Direction::Up, true},    {Direction::Up, false},
}};

void fill_table(TableInstance& inst, Rng& rng) {
  std::vector<std::string> words = header_words();
  rng.shuffle(words);
  inst.row_names.assign(words.begin(), words.begin() + inst.n_rows);
  inst.col_names.assign(words.begin() + inst.n_rows, words.begin() + inst.n_rows + inst.n_cols);
  inst.values.assign(static_cast<std::size_t>(inst.n_rows),
                     std::vector<int>(static_cast<std::size_t>(inst.n_cols)));
  for (auto& row : inst.values)
    for (int& v : row) v = rng.uniform_int(0, 9);
}

std::vector<Coord> pattern_path(PathPattern p, int n_rows, int n_cols, Coord start, int k,
                                Orientation o) {
  return p == PathPattern::Spiral ? gen_spiral_path(n_rows, n_cols, start, k, o)
                                  : gen_sinusoidal_path(n_rows, n_cols, start, k, o);
}

}  // namespace

const std::vector<std::string>& header_words() {
  static const std::vector<std::string> words = {
      "apple", "river", "stone", "cedar", "tiger", "maple", "ocean", "piano",
      "lemon", "delta", "eagle", "frost", "grape", "honey", "ivory", "jewel",
      "koala", "lunar", "mango", "noble", "olive", "pearl", "raven", "sugar"};
  return words;
}

std::vector<int> TableInstance::path_values() const {
  std::vector<int> out;
  out.reserve(path.size());
  for (Coord c : path) out.push_back(value(c));
  return out;
}

std::vector<Coord> TableInstance::highlighted() const {
  if (task == TaskKind::ConsecutiveTableReadout && path.size() > 1)
    return {path.front(), path.back()};
  return path;
}

std::pair<int, int> consecutive_length_band(Difficulty d) {
  switch (d) {
    case Difficulty::Simple: return {5, 10};
    case Difficulty::Medium: return {15, 20};
    case Difficulty::Hard: return {25, 30};
  }
  return {0, 0};
}

std::pair<int, int> readout_length_window(Difficulty d) {
  if (d == Difficulty::Hard) return {28, 42};
  if (d == Difficulty::Simple) return {8, 16};
  throw InvalidArgument("table readout has no medium difficulty");
}

TableInstance gen_table_readout_instance(Difficulty difficulty, std::uint64_t seed) {
  require_difficulty_valid(TaskKind::TableReadout, difficulty);
  Rng rng(seed);
  const auto [min_len, max_len] = readout_length_window(difficulty);
  const bool hard = difficulty == Difficulty::Hard;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const int n_rows = rng.uniform_int(8, 12);
    const int n_cols = rng.uniform_int(8, 12);
    const int blocks = hard ? rng.uniform_int(2, 4) : 1;
    Coord cur{rng.uniform_int(1, n_rows), rng.uniform_int(1, n_cols)};
    std::vector<Coord> path;
    std::vector<PathPattern> patterns;
    int requested_k = 0;
    bool ok = true;
    for (int b = 0; b < blocks && ok; ++b) {
      auto pattern = rng.bernoulli(0.5) ? PathPattern::Spiral : PathPattern::Sinusoidal;
      const int k = rng.uniform_int(1, 4);
      const Orientation o = kOrientations[rng.below(kOrientations.size())];
      requested_k = k;
      try {
        auto piece = pattern_path(pattern, n_rows, n_cols, cur, k, o);
        path.insert(path.end(), piece.begin() + (path.empty() ? 0 : 1), piece.end());
        cur = path.back();
        patterns.push_back(pattern);
      } catch (const InvalidArgument&) {
        ok = false;
      }
    }
    if (!ok || static_cast<int>(path.size()) < min_len || static_cast<int>(path.size()) > max_len)
      continue;
    if (!is_loop_free(path)) continue;
    const int segments = count_segments(path);
    if (hard ? segments <= 4 : segments != requested_k) continue;

    TableInstance inst;
    inst.task = TaskKind::TableReadout;
    inst.difficulty = difficulty;
    inst.n_rows = n_rows;
    inst.n_cols = n_cols;
    inst.path = std::move(path);
    inst.pattern_meta = {segments, std::move(patterns)};
    fill_table(inst, rng);
    return inst;
  }
  throw SamplingExhausted("table readout: no valid path after " + std::to_string(kMaxAttempts) +
                          " attempts");
}

TableInstance gen_consecutive_instance(Difficulty difficulty, std::uint64_t seed) {
  Rng rng(seed);
  const auto [lo, hi] = consecutive_length_band(difficulty);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const int n_rows = rng.uniform_int(6, 12);
    const int n_cols = rng.uniform_int(6, 12);
    const int cells = n_rows * n_cols;
    const int length = rng.uniform_int(lo, hi);
    if (length > cells) continue;
    const bool forward = rng.bernoulli(0.5);
    int s = 0, e = 0;
    if (forward) {
      s = static_cast<int>(rng.below(static_cast<std::uint64_t>(cells - length + 1)));
      e = s + length - 1;
    } else {
      s = length - 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cells - length + 1)));
      e = s - length + 1;
    }
    Coord start{s / n_cols + 1, s % n_cols + 1};
    Coord end{e / n_cols + 1, e % n_cols + 1};
    // Same-row reads only run left to right; the reverse has no defined rule.
    if (start.row == end.row && start.col > end.col) continue;

    TableInstance inst;
    inst.task = TaskKind::ConsecutiveTableReadout;
    inst.difficulty = difficulty;
    inst.n_rows = n_rows;
    inst.n_cols = n_cols;
    inst.path = gen_consecutive_path(n_rows, n_cols, start, end);
    inst.pattern_meta = {count_segments(inst.path), {}};
    fill_table(inst, rng);
    return inst;
  }
  throw SamplingExhausted("consecutive readout: no valid endpoints");
}

}  // namespace s2h::table
