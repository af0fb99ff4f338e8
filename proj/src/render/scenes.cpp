#include <fmt/format.h>

#include "raster.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/text.hpp"

namespace s2h::render {

using detail::Face;
using detail::Point;

namespace {

void check_budget(int w, int h, const RenderStyle& style) {
  if (w > style.max_image_px || h > style.max_image_px)
    throw InvalidArgument(fmt::format("image {}x{} exceeds the raster budget of {} px", w, h, style.max_image_px));
}

CellLayout make_cell_layout(int n_rows, int n_cols, const RenderStyle& style) {
  if (n_rows < 1 || n_cols < 1) throw InvalidArgument("layout needs at least one cell");
  CellLayout l;
  l.n_rows = n_rows;
  l.n_cols = n_cols;
  l.cell_px = style.cell_px;
  // Lines sit on the top/left pixel of each cell; one more closes the table.
  l.width = (n_cols + 1) * style.cell_px + style.border_px;
  l.height = (n_rows + 1) * style.cell_px + style.border_px;
  check_budget(l.width, l.height, style);
  return l;
}

void fit_text(std::string_view word, const RenderStyle& style) {
  const int w = detail::text_width(Face::Text, word);
  if (w > style.cell_px - 2 * style.text_pad_px)
    throw InvalidArgument(fmt::format("text '{}' ({} px) overflows a {} px cell", word, w, style.cell_px));
}

void fit_symbol(char32_t cp, const RenderStyle& style) {
  const auto& g = detail::glyph(Face::Symbol, cp);
  const int room = style.cell_px - 2 * style.text_pad_px;
  if (g.w > room || g.h > room)
    throw InvalidArgument(fmt::format("symbol U+{:04X} does not fit a {} px cell", static_cast<unsigned>(cp), style.cell_px));
}

// Interior of a cell, excluding the line on its top/left edge.
Rect interior(Rect r, const RenderStyle& style) {
  return {r.x + style.border_px, r.y + style.border_px, r.w - style.border_px, r.h - style.border_px};
}

int center_x(Rect r) { return r.x + r.w / 2; }
int center_y(Rect r) { return r.y + r.h / 2; }

void draw_cell_lines(Image& img, const CellLayout& l, const RenderStyle& style) {
  for (int k = 0; k <= l.n_cols + 1; ++k) img.fill_rect(k * l.cell_px, 0, style.border_px, l.height, style.grid_line);
  for (int k = 0; k <= l.n_rows + 1; ++k) img.fill_rect(0, k * l.cell_px, l.width, style.border_px, style.grid_line);
}

void fill(Image& img, Rect r, Rgb c) { img.fill_rect(r.x, r.y, r.w, r.h, c); }

Image cell_canvas(const CellLayout& l, const RenderStyle& style) {
  Image img(l.width, l.height, style.background);
  fill(img, interior({0, 0, l.cell_px, l.cell_px}, style), style.header_fill);
  for (int r = 1; r <= l.n_rows; ++r) fill(img, interior(l.row_header(r), style), style.header_fill);
  for (int c = 1; c <= l.n_cols; ++c) fill(img, interior(l.col_header(c), style), style.header_fill);
  return img;
}

void header_text(Image& img, Rect r, const std::string& word, const RenderStyle& style) {
  fit_text(word, style);
  const Rect in = interior(r, style);
  detail::draw_text(img, Face::Text, word, center_x(in), center_y(in), style.text);
}

}  // namespace

Rect CellLayout::cell(Coord c) const {
  if (!in_bounds(n_rows, n_cols, c)) throw InvalidArgument("cell outside the layout");
  return {c.col * cell_px, c.row * cell_px, cell_px, cell_px};
}

Rect CellLayout::row_header(int row) const {
  if (row < 1 || row > n_rows) throw InvalidArgument("row header outside the layout");
  return {0, row * cell_px, cell_px, cell_px};
}

Rect CellLayout::col_header(int col) const {
  if (col < 1 || col > n_cols) throw InvalidArgument("column header outside the layout");
  return {col * cell_px, 0, cell_px, cell_px};
}

CellLayout table_layout(const table::TableInstance& inst, const RenderStyle& style) {
  return make_cell_layout(inst.n_rows, inst.n_cols, style);
}

CellLayout grid_layout(const grid::GridInstance& inst, const RenderStyle& style) {
  return make_cell_layout(inst.n_rows, inst.n_cols, style);
}

Image rasterize_table(const table::TableInstance& inst, const RenderStyle& style) {
  const CellLayout l = table_layout(inst, style);
  Image img = cell_canvas(l, style);
  for (Coord c : inst.highlighted()) fill(img, interior(l.cell(c), style), style.highlight);
  for (int r = 1; r <= inst.n_rows; ++r) header_text(img, l.row_header(r), inst.row_names.at(static_cast<std::size_t>(r - 1)), style);
  for (int c = 1; c <= inst.n_cols; ++c) header_text(img, l.col_header(c), inst.col_names.at(static_cast<std::size_t>(c - 1)), style);
  for (int r = 1; r <= inst.n_rows; ++r)
    for (int c = 1; c <= inst.n_cols; ++c)
      header_text(img, l.cell({r, c}), std::string(number_word(inst.value({r, c}))), style);
  draw_cell_lines(img, l, style);
  return img;
}

Image rasterize_grid(const grid::GridInstance& inst, const RenderStyle& style) {
  const CellLayout l = grid_layout(inst, style);
  Image img = cell_canvas(l, style);
  for (int r = 1; r <= inst.n_rows; ++r) header_text(img, l.row_header(r), std::to_string(r), style);
  for (int c = 1; c <= inst.n_cols; ++c) header_text(img, l.col_header(c), std::to_string(c), style);
  auto put = [&](Coord c, char32_t cp) {
    fit_symbol(cp, style);
    const Rect in = interior(l.cell(c), style);
    detail::draw_glyph_centered(img, Face::Symbol, cp, center_x(in), center_y(in), style.text);
  };
  put(inst.start, U'S');
  put(inst.end, U'E');
  for (const auto& o : inst.objects) put(o.pos, o.glyph);
  for (const auto& o : inst.obstacles) put(o.pos, grid::obstacle_glyph(o.kind));
  draw_cell_lines(img, l, style);
  return img;
}

// ---- analogy --------------------------------------------------------------

namespace {

constexpr int kMargin = 20;
constexpr int kGap = 20;
constexpr int kLabel = 24;

// Unit vertices on the circumscribed circle, first vertex pointing up.
const std::vector<Point> kTriangle = {{0, -1}, {0.8660254037844386, 0.5}, {-0.8660254037844386, 0.5}};
const std::vector<Point> kPentagon = {{0, -1},
                                      {0.9510565162951535, -0.3090169943749474},
                                      {0.5877852522924731, 0.8090169943749475},
                                      {-0.5877852522924731, 0.8090169943749475},
                                      {-0.9510565162951535, -0.3090169943749474}};
const std::vector<Point> kHexagon = {{0, -1},   {0.8660254037844386, -0.5}, {0.8660254037844386, 0.5},
                                     {0, 1},    {-0.8660254037844386, 0.5}, {-0.8660254037844386, -0.5}};

std::vector<Point> scaled(const std::vector<Point>& unit, Point c, double r) {
  std::vector<Point> out;
  for (const Point& p : unit) out.push_back({c.x + p.x * r, c.y + p.y * r});
  return out;
}

Rect inner(Rect panel, const RenderStyle& style) {
  const int s = style.stroke_px;
  return {panel.x + s, panel.y + s, panel.w - 2 * s, panel.h - 2 * s};
}

void draw_line(Image& img, const analogy::Line& line, Rect in, const RenderStyle& style) {
  const Rgb c = gray(line.color);
  const double w = style.stroke_px;
  const double inset = 6;
  const double L = in.x + inset, R = in.x + in.w - inset;
  const double T = in.y + inset, B = in.y + in.h - inset;
  const double MX = in.x + in.w / 2.0, MY = in.y + in.h / 2.0;
  auto seg = [&](Point a, Point b) { detail::draw_segment(img, a, b, w, c, in); };
  switch (line.type) {
    case 0: seg({L, T}, {R, B}); break;  // falling diagonal
    case 1: seg({L, B}, {R, T}); break;  // rising diagonal
    case 2: seg({L, MY}, {R, MY}); break;
    case 3: seg({MX, T}, {MX, B}); break;
    case 4:  // diamond through the edge midpoints
      seg({MX, T}, {R, MY});
      seg({R, MY}, {MX, B});
      seg({MX, B}, {L, MY});
      seg({L, MY}, {MX, T});
      break;
    case 5: detail::draw_ring(img, {MX, MY}, (in.w / 2.0) * 0.8, w, c, in); break;
    // V-shapes are named by the side their opening faces.
    case 6: seg({L, T}, {MX, B}); seg({MX, B}, {R, T}); break;
    case 7: seg({L, T}, {R, MY}); seg({R, MY}, {L, B}); break;
    case 8: seg({L, B}, {MX, T}); seg({MX, T}, {R, B}); break;
    case 9: seg({R, T}, {L, MY}); seg({L, MY}, {R, B}); break;
    default: throw InvalidArgument("unknown line type");
  }
}

void draw_shape(Image& img, const analogy::Shape& s, Rect in, const RenderStyle& style) {
  const double slot_w = in.w / 3.0, slot_h = in.h / 3.0;
  const Point c{in.x + (s.position % 3 + 0.5) * slot_w, in.y + (s.position / 3 + 0.5) * slot_h};
  const double size = s.size * (style.panel_px / 160.0);
  const double r = size / 2;
  const Rgb fill_c = gray(s.color);
  const Rgb edge = {0, 0, 0};
  const double outline = 1.5;
  switch (s.type) {
    case 0: detail::draw_disk(img, c, r, fill_c, edge, outline); break;
    case 1:
      detail::draw_polygon(img, {{c.x - r, c.y - r}, {c.x + r, c.y - r}, {c.x + r, c.y + r}, {c.x - r, c.y + r}},
                           fill_c, edge, outline);
      break;
    case 2: detail::draw_polygon(img, scaled(kTriangle, c, r), fill_c, edge, outline); break;
    case 3: detail::draw_polygon(img, scaled(kPentagon, c, r), fill_c, edge, outline); break;
    case 4: detail::draw_polygon(img, scaled(kHexagon, c, r), fill_c, edge, outline); break;
    default: throw InvalidArgument("unknown shape type");
  }
}

void draw_panel(Image& img, const analogy::Panel& p, Rect panel, const RenderStyle& style) {
  if (!analogy::is_valid(p)) throw InvalidArgument("panel violates its invariants");
  detail::draw_frame(img, panel, style.stroke_px, style.grid_line);
  const Rect in = inner(panel, style);
  for (const auto& line : p.lines) draw_line(img, line, in, style);
  for (const auto& shape : p.shapes) draw_shape(img, shape, in, style);
}

}  // namespace

AnalogyLayout analogy_layout(const RenderStyle& style) {
  const int P = style.panel_px;
  AnalogyLayout l;
  l.width = 2 * kMargin + 4 * P + 3 * kGap;
  l.height = 2 * kMargin + 4 * (kLabel + P) + 3 * kGap;
  check_budget(l.width, l.height, style);
  auto panel_at = [&](int row, int col) {
    return Rect{kMargin + col * (P + kGap), kMargin + row * (kLabel + P + kGap) + kLabel, P, P};
  };
  std::size_t k = 0;
  for (int row = 0; row < 2; ++row)
    for (int col = 0; col < 3; ++col) l.panels[k++] = panel_at(row, col);
  l.panels[k++] = panel_at(2, 0);
  l.panels[k++] = panel_at(2, 1);
  l.answer_slot = panel_at(2, 2);
  for (int col = 0; col < 4; ++col) l.panels[k++] = panel_at(3, col);
  return l;
}

Image rasterize_analogy(const analogy::AnalogyPuzzle& p, const RenderStyle& style) {
  const AnalogyLayout l = analogy_layout(style);
  Image img(l.width, l.height, style.background);
  auto label = [&](Rect panel, std::string_view text, bool left) {
    const int w = detail::text_width(Face::Text, text);
    const int cx = left ? panel.x + w / 2 : panel.x + panel.w / 2;
    detail::draw_text(img, Face::Text, text, cx, panel.y - kLabel / 2, style.text);
  };
  label(l.panels[0], "Example 1", true);
  label(l.panels[3], "Example 2", true);
  label(l.panels[6], "Query", true);
  constexpr std::string_view kLetters[] = {"A", "B", "C", "D"};
  for (std::size_t i = 0; i < 4; ++i) label(l.panels[8 + i], kLetters[i], false);

  for (std::size_t e = 0; e < 2; ++e)
    for (std::size_t j = 0; j < 3; ++j) draw_panel(img, p.examples[e][j], l.panels[e * 3 + j], style);
  draw_panel(img, p.query[0], l.panels[6], style);
  draw_panel(img, p.query[1], l.panels[7], style);
  for (std::size_t i = 0; i < 4; ++i) draw_panel(img, p.options[i], l.panels[8 + i], style);

  detail::draw_frame(img, l.answer_slot, style.stroke_px, style.grid_line);
  detail::draw_glyph_centered(img, Face::Symbol, U'?', center_x(l.answer_slot), center_y(l.answer_slot),
                              style.text);
  return img;
}

std::vector<std::uint8_t> render_table(const table::TableInstance& inst, const RenderStyle& style) {
  return encode_png(rasterize_table(inst, style));
}

std::vector<std::uint8_t> render_grid(const grid::GridInstance& inst, const RenderStyle& style) {
  return encode_png(rasterize_grid(inst, style));
}

std::vector<std::uint8_t> render_analogy(const analogy::AnalogyPuzzle& p, const RenderStyle& style) {
  return encode_png(rasterize_analogy(p, style));
}

}  // namespace s2h::render
