#include <set>

#include "doctest.h"
#include "s2h/core/error.hpp"
#include "s2h/core/text.hpp"
#include "s2h/render/render.hpp"
#include "support.hpp"

using namespace s2h;
using namespace s2h::render;

namespace {

// Horizontal extent of non-background pixels inside r.
int ink_width(const Image& img, Rect r, Rgb bg) {
  int lo = r.x + r.w, hi = -1;
  for (int y = r.y; y < r.y + r.h; ++y)
    for (int x = r.x; x < r.x + r.w; ++x)
      if (img.at(x, y) != bg) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
  return hi < 0 ? 0 : hi - lo + 1;
}

std::vector<Rgb> crop(const Image& img, Rect r) {
  std::vector<Rgb> out;
  for (int y = r.y; y < r.y + r.h; ++y)
    for (int x = r.x; x < r.x + r.w; ++x) out.push_back(img.at(x, y));
  return out;
}

Rect shrink(Rect r, int k) { return {r.x + k, r.y + k, r.w - 2 * k, r.h - 2 * k}; }

}  // namespace

TEST_SUITE("render") {

TEST_CASE("style file mirrors the defaults") {
  const auto file = load_style(testing::data_path("style.default.txt"));
  CHECK(file == default_style());
  CHECK(parse_style(style_to_text(default_style())) == default_style());
  CHECK(default_style().highlight == Rgb{255, 235, 59});
  CHECK(parse_style("cell_px = 80\n").cell_px == 80);
  CHECK_THROWS_AS(parse_style("cell_size = 80\n"), ParseError);
  CHECK_THROWS_AS(parse_style("highlight_rgb = 1,2\n"), ParseError);
}

TEST_CASE("png encode and decode are inverse") {
  Image img(7, 5, {1, 2, 3});
  img.set(3, 2, {200, 100, 50});
  img.fill_rect(0, 0, 2, 2, {9, 9, 9});
  CHECK(decode_png(encode_png(img)) == img);
  const auto bytes = encode_png(img);
  REQUIRE(bytes.size() > 8);
  CHECK(bytes[1] == 'P');
}

TEST_CASE("table rendering") {
  const auto style = default_style();
  const auto inst = table::gen_table_readout_instance(Difficulty::Simple, 21);
  const auto a = render_table(inst, style);
  CHECK(a == render_table(inst, style));
  const Image img = decode_png(a);
  CHECK(img == rasterize_table(inst, style));

  const auto l = table_layout(inst, style);
  const std::set<Coord> path(inst.path.begin(), inst.path.end());
  for (int r = 1; r <= inst.n_rows; ++r)
    for (int c = 1; c <= inst.n_cols; ++c) {
      const Rgb want = path.count({r, c}) ? style.highlight : style.background;
      CHECK(dominant_color(img, l.cell({r, c}), 2) == want);
    }
  const int regions = count_regions(img, style.highlight, 50);
  CHECK(regions >= 1);
  CHECK(regions <= static_cast<int>(inst.path.size()));

  // Values are drawn as words: the ink of a NINE cell is as wide as the word.
  table::TableInstance nine = inst;
  for (auto& row : nine.values)
    for (int& v : row) v = 9;
  const Image nimg = rasterize_table(nine, style);
  const Coord off{1, 1};
  const Rgb bg = path.count(off) ? style.highlight : style.background;
  const int w = ink_width(nimg, shrink(l.cell(off), 2), bg);
  CHECK(w >= text_width("NINE") - 2);
  CHECK(w > 2 * text_width("9"));
}

TEST_CASE("table rendering errors") {
  const auto inst = table::gen_table_readout_instance(Difficulty::Hard, 5);
  RenderStyle big = default_style();
  big.cell_px = 400;
  CHECK_THROWS_AS(rasterize_table(inst, big), InvalidArgument);
  RenderStyle tiny = default_style();
  tiny.cell_px = 16;
  CHECK_THROWS_AS(rasterize_table(inst, tiny), InvalidArgument);
}

TEST_CASE("grid rendering") {
  const auto style = default_style();
  for (int i = 0; i < 10; ++i) {
    const auto g = grid::gen_grid_instance(Difficulty::Hard, 40 + i);
    const auto bytes = render_grid(g, style);
    CHECK(bytes == render_grid(g, style));
    const Image img = decode_png(bytes);
    const auto l = grid_layout(g, style);
    std::size_t inked = 0;
    for (int r = 1; r <= g.n_rows; ++r)
      for (int c = 1; c <= g.n_cols; ++c) inked += has_ink(img, l.cell({r, c}), style.background, 2);
    CHECK(inked == 2 + g.objects.size() + g.obstacles.size());
  }

  // One row holding each obstacle kind once: five different glyph crops.
  grid::GridInstance row;
  row.n_rows = 1;
  row.n_cols = 7;
  row.start = {1, 1};
  row.end = {1, 7};
  for (int k = 0; k < 5; ++k) row.obstacles.push_back({grid::kObstacleKinds[k], {1, 2 + k}});
  const Image img = rasterize_grid(row, style);
  const auto l = grid_layout(row, style);
  std::set<std::vector<Rgb>> crops;
  for (int k = 0; k < 5; ++k) crops.insert(crop(img, shrink(l.cell({1, 2 + k}), 2)));
  CHECK(crops.size() == 5);
}

TEST_CASE("analogy rendering") {
  const auto style = default_style();
  const auto p = analogy::gen_puzzle(analogy::Variant::Standard, Difficulty::Hard, analogy::default_heldout(), 8);
  const auto bytes = render_analogy(p, style);
  CHECK(bytes == render_analogy(p, style));

  const auto l = analogy_layout(style);
  CHECK(l.panels.size() == 2 * 3 + 2 + 4);
  for (std::size_t i = 0; i < l.panels.size(); ++i)
    for (std::size_t j = i + 1; j < l.panels.size(); ++j) {
      const Rect a = l.panels[i], b = l.panels[j];
      const bool overlap = a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
      CHECK_FALSE(overlap);
    }

  CHECK(gray(0) == Rgb{0, 0, 0});
  CHECK(gray(255) == Rgb{255, 255, 255});
  CHECK(gray(135) == Rgb{135, 135, 135});

  // A lone large shape: its center pixel carries the gray level.
  for (int level : {0, 90, 135, 189, 255}) {
    analogy::AnalogyPuzzle q = p;
    q.examples[0][0] = analogy::Panel{{{0, level, 41, 4}}, {}};
    const Image img = rasterize_analogy(q, style);
    const Rect panel = l.panels[0];
    CHECK(img.at(panel.x + panel.w / 2, panel.y + panel.h / 2) == gray(level));
  }
}

}  // TEST_SUITE
