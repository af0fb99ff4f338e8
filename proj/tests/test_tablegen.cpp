#include <numeric>
#include <set>

#include "doctest.h"
#include "oracles/paths.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/rng.hpp"
#include "s2h/core/text.hpp"
#include "s2h/evaluator/evaluator.hpp"
#include "s2h/tablegen/tablegen.hpp"

using namespace s2h;
using namespace s2h::table;

namespace {

std::vector<Coord> cells(std::initializer_list<std::pair<int, int>> xs) {
  std::vector<Coord> out;
  for (auto [r, c] : xs) out.push_back({r, c});
  return out;
}

std::vector<Coord> from_oracle(const std::vector<oracle::Cell>& xs) {
  std::vector<Coord> out;
  for (auto [r, c] : xs) out.push_back({r, c});
  return out;
}

std::size_t count_substr(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

int turns(const std::vector<Coord>& p) {
  int t = 0;
  for (std::size_t i = 2; i < p.size(); ++i) {
    const int dr0 = p[i - 1].row - p[i - 2].row, dc0 = p[i - 1].col - p[i - 2].col;
    const int dr1 = p[i].row - p[i - 1].row, dc1 = p[i].col - p[i - 1].col;
    if (dr0 * dr1 + dc0 * dc1 == 0) ++t;  // perpendicular unit steps
  }
  return t;
}

}  // namespace

TEST_SUITE("tablegen") {

TEST_CASE("consecutive path follows the row-major rule") {
  CHECK_THROWS_AS(gen_consecutive_path(3, 4, {2, 3}, {2, 5}), InvalidArgument);
  CHECK(gen_consecutive_path(3, 4, {1, 3}, {2, 2}) == cells({{1, 3}, {1, 4}, {2, 1}, {2, 2}}));
  CHECK(gen_consecutive_path(3, 4, {2, 2}, {1, 3}) == cells({{2, 2}, {2, 1}, {1, 4}, {1, 3}}));
  CHECK(gen_consecutive_path(3, 4, {2, 1}, {2, 3}) == cells({{2, 1}, {2, 2}, {2, 3}}));
  CHECK_THROWS_AS(gen_consecutive_path(3, 4, {2, 3}, {2, 1}), InvalidArgument);
}

TEST_CASE("spiral hand traces") {
  CHECK(gen_spiral_path(3, 3, {1, 1}, 1) == cells({{1, 1}, {1, 2}, {1, 3}}));
  CHECK(gen_spiral_path(3, 3, {1, 1}, 2) == cells({{1, 1}, {1, 2}, {1, 3}, {2, 3}, {3, 3}}));
  CHECK(gen_spiral_path(1, 5, {1, 1}, 1) == cells({{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}}));
  CHECK_THROWS_AS(gen_spiral_path(3, 3, {1, 1}, 0), InvalidArgument);
  CHECK_THROWS_AS(gen_spiral_path(3, 3, {4, 1}, 1), InvalidArgument);
}

TEST_CASE("sinusoidal hand traces") {
  CHECK(gen_sinusoidal_path(3, 4, {1, 1}, 2) == cells({{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}}));
  CHECK(gen_sinusoidal_path(3, 4, {1, 1}, 1) == cells({{1, 1}, {1, 2}, {1, 3}, {1, 4}}));
  CHECK_THROWS_AS(gen_sinusoidal_path(2, 2, {1, 1}, 2), InvalidArgument);
}

TEST_CASE("path generators agree with the literal pseudo-code") {
  const std::string names[4] = {"right", "down", "left", "up"};
  Rng rng(2024);
  int compared = 0, both_failed = 0;
  for (int i = 0; i < 1000; ++i) {
    const int nr = rng.uniform_int(1, 12), nc = rng.uniform_int(1, 12);
    const Coord start{rng.uniform_int(1, nr), rng.uniform_int(1, nc)};
    const int k = rng.uniform_int(1, 8);
    const int d = rng.uniform_int(0, 3);
    const bool cw = rng.bernoulli(0.5);
    const Orientation o{kDirections[d], cw};
    for (bool spiral : {true, false}) {
      const auto expect = spiral ? oracle::spiral(nr, nc, {start.row, start.col}, k, names[d], cw)
                                 : oracle::sinusoidal(nr, nc, {start.row, start.col}, k, names[d], cw);
      std::optional<std::vector<Coord>> got;
      try {
        got = spiral ? gen_spiral_path(nr, nc, start, k, o) : gen_sinusoidal_path(nr, nc, start, k, o);
      } catch (const InvalidArgument&) {
      }
      CAPTURE(nr);
      CAPTURE(nc);
      CAPTURE(k);
      CAPTURE(spiral);
      REQUIRE(expect.has_value() == got.has_value());
      if (expect) {
        CHECK(*got == from_oracle(*expect));
        ++compared;
      } else {
        ++both_failed;
      }
    }
  }
  CHECK(compared > 1000);  // most draws are valid paths
  MESSAGE("compared " << compared << " paths, " << both_failed << " rejected by both");
}

TEST_CASE("segment counting") {
  CHECK(count_segments(cells({{1, 1}})) == 1);
  CHECK(count_segments(cells({{1, 1}, {1, 2}, {1, 3}})) == 1);
  CHECK(count_segments(cells({{1, 1}, {1, 2}, {1, 3}, {2, 3}, {3, 3}})) == 2);
  CHECK(is_loop_free(cells({{1, 1}, {1, 2}})));
  CHECK_FALSE(is_loop_free(cells({{1, 1}, {1, 2}, {1, 1}})));
  CHECK_FALSE(is_continuous(cells({{1, 1}, {2, 2}})));
}

TEST_CASE("table readout instances respect their bands") {
  for (Difficulty d : {Difficulty::Simple, Difficulty::Hard}) {
    double total = 0;
    const int n = 500;
    for (int i = 0; i < n; ++i) {
      const auto inst = gen_table_readout_instance(d, derive_seed(11, TaskKind::TableReadout, "t", i));
      CAPTURE(i);
      REQUIRE(inst.n_rows >= 8);
      REQUIRE(inst.n_rows <= 12);
      REQUIRE(inst.n_cols >= 8);
      REQUIRE(inst.n_cols <= 12);
      REQUIRE(is_loop_free(inst.path));
      REQUIRE(is_continuous(inst.path));
      for (Coord c : inst.path) REQUIRE(in_bounds(inst.n_rows, inst.n_cols, c));
      const int seg = count_segments(inst.path);
      CHECK(seg == inst.pattern_meta.segments);
      CHECK(turns(inst.path) == seg - 1);
      if (d == Difficulty::Simple) {
        CHECK(seg >= 1);
        CHECK(seg <= 4);
        CHECK(inst.pattern_meta.patterns.size() == 1);
      } else {
        CHECK(seg > 4);
        CHECK(inst.pattern_meta.patterns.size() >= 2);
      }
      const auto [lo, hi] = readout_length_window(d);
      CHECK(static_cast<int>(inst.path.size()) >= lo);
      CHECK(static_cast<int>(inst.path.size()) <= hi);
      for (const auto& row : inst.values)
        for (int v : row) REQUIRE((v >= 0 && v <= 9));
      std::set<std::string> names(inst.row_names.begin(), inst.row_names.end());
      names.insert(inst.col_names.begin(), inst.col_names.end());
      CHECK(names.size() == inst.row_names.size() + inst.col_names.size());
      total += static_cast<double>(inst.path.size());
    }
    const double mean = total / n;
    if (d == Difficulty::Simple) {
      CHECK(mean >= 10);
      CHECK(mean <= 14);
    } else {
      CHECK(mean >= 31);
      CHECK(mean <= 39);
    }
  }
}

TEST_CASE("consecutive readout length bands") {
  for (Difficulty d : {Difficulty::Simple, Difficulty::Medium, Difficulty::Hard}) {
    const auto [lo, hi] = consecutive_length_band(d);
    for (int i = 0; i < 300; ++i) {
      const auto inst = gen_consecutive_instance(d, derive_seed(3, TaskKind::ConsecutiveTableReadout, "c", i));
      const int len = static_cast<int>(inst.path.size());
      CHECK(len >= lo);
      CHECK(len <= hi);
      CHECK(inst.path == gen_consecutive_path(inst.n_rows, inst.n_cols, inst.path.front(), inst.path.back()));
      CHECK(inst.highlighted().size() == 2);
      CHECK(inst.n_cols >= 4);
    }
  }
  CHECK(consecutive_length_band(Difficulty::Simple) == std::pair{5, 10});
  CHECK(consecutive_length_band(Difficulty::Medium) == std::pair{15, 20});
  CHECK(consecutive_length_band(Difficulty::Hard) == std::pair{25, 30});
  CHECK_THROWS_AS(gen_table_readout_instance(Difficulty::Medium, 1), InvalidArgument);
}

TEST_CASE("latex text form") {
  const auto inst = gen_table_readout_instance(Difficulty::Simple, 77);
  const std::string a = emit_table_text(inst), b = emit_table_text(inst);
  CHECK(a == b);
  CHECK(count_substr(a, "\\hl{") == inst.path.size());
  for (char c = '0'; c <= '9'; ++c) CHECK(a.find(c) == std::string::npos);

  TableInstance nine = inst;
  nine.values[0][0] = 9;
  CHECK(emit_table_text(nine).find("NINE") != std::string::npos);
}

TEST_CASE("cot and answer") {
  TableInstance t;
  t.n_rows = 2;
  t.n_cols = 3;
  t.row_names = {"apple", "river"};
  t.col_names = {"stone", "cloud", "tiger"};
  t.values = {{1, 3, 2}, {0, 5, 9}};
  t.path = cells({{1, 2}});
  auto one = emit_table_cot(t);
  CHECK(count_substr(one.cot, "\nStep ") == 1);
  CHECK(one.answer == "Final answer: The numbers are THREE. Their sum is 3.");

  t.path = cells({{1, 3}, {2, 2}, {2, 3}});
  auto three = emit_table_cot(t);
  CHECK(three.answer.find("Their sum is 16.") != std::string::npos);
  CHECK(three.cot.find("Step 1: row 1, column 3 (row name apple, column name tiger) has value TWO.") !=
        std::string::npos);

  for (int i = 0; i < 200; ++i) {
    const auto inst = gen_table_readout_instance(i % 2 ? Difficulty::Hard : Difficulty::Simple, 1000 + i);
    const auto ca = emit_table_cot(inst);
    const auto listed = eval::parse_table_cot(ca.cot + "\n" + ca.answer);
    REQUIRE(listed.has_value());
    std::vector<int> vals;
    for (const auto& l : *listed) vals.push_back(l.value);
    CHECK(vals == inst.path_values());
    const auto ans = eval::parse_table_answer(ca.answer);
    REQUIRE(ans.has_value());
    CHECK(ans->values == inst.path_values());
  }
}

TEST_CASE("instance json round trip") {
  for (int i = 0; i < 20; ++i) {
    const auto inst = gen_consecutive_instance(Difficulty::Medium, 500 + i);
    CHECK(table_from_json(to_json(inst)) == inst);
  }
}

}  // TEST_SUITE
