#pragma once

// Drawing primitives shared by the scene renderers. Geometry uses only
// +, -, *, / and sqrt on doubles so results are bit-stable wherever IEEE
// arithmetic is honored (the library is built with -ffp-contract=off).

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "s2h/render/render.hpp"

namespace s2h::render::detail {

struct GlyphRecord {
  char32_t cp;
  int advance, w, h, xoff, yoff;
  std::size_t offset;
};

struct FaceRecord {
  const char* id;
  int px, ascent, descent;
  const GlyphRecord* glyphs;
  std::size_t n_glyphs;
  const unsigned char* bits;
};

enum class Face { Text, Symbol };

const FaceRecord& face(Face f);
/// Throws InvalidArgument for code points missing from the face.
const GlyphRecord& glyph(Face f, char32_t cp);
int text_width(Face f, std::string_view utf8);

/// Draw a line of text with its line box centered on (cx, cy).
void draw_text(Image& img, Face f, std::string_view utf8, int cx, int cy, Rgb c);
/// Draw one glyph with its bitmap centered on (cx, cy).
void draw_glyph_centered(Image& img, Face f, char32_t cp, int cx, int cy, Rgb c);

struct Point {
  double x, y;
};

/// Pixels whose centers lie within `width / 2` of the segment, inside `clip`.
void draw_segment(Image& img, Point a, Point b, double width, Rgb c, Rect clip);
void draw_ring(Image& img, Point center, double radius, double width, Rgb c, Rect clip);
/// Filled disk with an outline band of `outline` pixels.
void draw_disk(Image& img, Point center, double radius, Rgb fill, Rgb edge, double outline);
/// Filled convex polygon with an outline band of `outline` pixels.
void draw_polygon(Image& img, const std::vector<Point>& pts, Rgb fill, Rgb edge, double outline);
void draw_frame(Image& img, Rect r, int width, Rgb c);

}  // namespace s2h::render::detail
