#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "s2h/analogygen/analogygen.hpp"
#include "s2h/core/coord.hpp"
#include "s2h/gridgen/gridgen.hpp"
#include "s2h/tablegen/tablegen.hpp"

namespace s2h::render {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  auto operator<=>(const Rgb&) const = default;
};

/// Gray levels map linearly: 0 is black, 255 is white.
constexpr Rgb gray(int level) {
  const auto v = static_cast<std::uint8_t>(level < 0 ? 0 : level > 255 ? 255 : level);
  return {v, v, v};
}

/// Visual constants. Every field has a default mirrored by
/// data/style.default.txt; parse_style accepts a subset and keeps the rest.
struct RenderStyle {
  int version = 1;
  int cell_px = 64;
  int panel_px = 160;
  int border_px = 1;      // table and grid lines
  int stroke_px = 2;      // analogy lines and panel frames
  int text_pad_px = 4;    // minimum horizontal margin around cell text
  int max_image_px = 2048;
  std::string font = "dejavu-sans-bold";
  Rgb background{255, 255, 255};
  Rgb text{0, 0, 0};
  Rgb highlight{255, 235, 59};
  Rgb grid_line{0, 0, 0};
  Rgb header_fill{230, 230, 230};

  bool operator==(const RenderStyle&) const = default;
};

RenderStyle default_style();
/// "key = value" lines, '#' comments. Colors are "r,g,b". Unknown keys and
/// malformed values throw ParseError.
RenderStyle parse_style(std::string_view text);
RenderStyle load_style(const std::string& path);
std::string style_to_text(const RenderStyle& style);

class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill);

  int width() const { return width_; }
  int height() const { return height_; }
  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);  // silently clips
  void fill_rect(int x, int y, int w, int h, Rgb c);
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }
  bool operator==(const Image&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;  // RGB8, row-major
};

/// PNG, RGB8, no interlace, fixed filter and compression settings.
std::vector<std::uint8_t> encode_png(const Image& img);
Image decode_png(const std::vector<std::uint8_t>& bytes);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

struct Rect {
  int x = 0, y = 0, w = 0, h = 0;
  bool contains(int px, int py) const { return px >= x && py >= y && px < x + w && py < y + h; }
  bool operator==(const Rect&) const = default;
};

/// Pixel width of `text` in the text face.
int text_width(std::string_view utf8);
/// Whether a code point exists in the face used for cells (text or symbol).
bool has_glyph(char32_t cp, bool symbol_face);

/// Header row and column first, then one cell_px square per table cell.
struct CellLayout {
  int n_rows = 0, n_cols = 0;
  int cell_px = 0;
  int width = 0, height = 0;
  Rect cell(Coord c) const;       // 1-indexed body cell
  Rect row_header(int row) const;
  Rect col_header(int col) const;
};

CellLayout table_layout(const table::TableInstance& inst, const RenderStyle& style);
CellLayout grid_layout(const grid::GridInstance& inst, const RenderStyle& style);

/// Twelve panel regions: example 1 (3), example 2 (3), query (2), options A-D.
/// The blank answer slot next to the query is not a panel region.
struct AnalogyLayout {
  int width = 0, height = 0;
  std::array<Rect, 12> panels;
  Rect answer_slot;
};
AnalogyLayout analogy_layout(const RenderStyle& style);

/// Throws InvalidArgument when the image would exceed the style's raster
/// budget or a word does not fit its cell.
Image rasterize_table(const table::TableInstance& inst, const RenderStyle& style);
Image rasterize_grid(const grid::GridInstance& inst, const RenderStyle& style);
Image rasterize_analogy(const analogy::AnalogyPuzzle& p, const RenderStyle& style);

std::vector<std::uint8_t> render_table(const table::TableInstance& inst, const RenderStyle& style);
std::vector<std::uint8_t> render_grid(const grid::GridInstance& inst, const RenderStyle& style);
std::vector<std::uint8_t> render_analogy(const analogy::AnalogyPuzzle& p, const RenderStyle& style);

/// Most frequent color inside `r` shrunk by `inset` pixels per side; ties go
/// to the smaller color. Used by pixel-probe checks.
Rgb dominant_color(const Image& img, Rect r, int inset = 0);
/// Number of 4-connected regions of exactly color `c` holding at least
/// `min_area` pixels. A minimum filters out the counters of letters drawn
/// on a fill.
int count_regions(const Image& img, Rgb c, int min_area = 1);
/// Whether any pixel in `r` (shrunk by `inset`) differs from `c`.
bool has_ink(const Image& img, Rect r, Rgb c, int inset = 0);

}  // namespace s2h::render
