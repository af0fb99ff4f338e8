#include "raster.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>

#include "s2h/core/error.hpp"
#include "s2h/core/text.hpp"

namespace s2h::render {

namespace detail {
#include "font_data.inc"
}  // namespace detail

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw InvalidArgument("image dimensions must be positive");
  pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  fill_rect(0, 0, width, height, fill);
}

Rgb Image::at(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) throw InvalidArgument("pixel outside the image");
  const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
  return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
}

void Image::set(int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
  pixels_[i] = c.r;
  pixels_[i + 1] = c.g;
  pixels_[i + 2] = c.b;
}

void Image::fill_rect(int x, int y, int w, int h, Rgb c) {
  for (int yy = std::max(0, y); yy < std::min(height_, y + h); ++yy)
    for (int xx = std::max(0, x); xx < std::min(width_, x + w); ++xx) set(xx, yy, c);
}

// ---- PNG ----------------------------------------------------------------

namespace {

struct PngBuffer {
  std::vector<std::uint8_t>* out;
};

void png_write_cb(png_structp png, png_bytep data, png_size_t len) {
  auto* buf = static_cast<PngBuffer*>(png_get_io_ptr(png));
  buf->out->insert(buf->out->end(), data, data + len);
}

void png_flush_cb(png_structp) {}

[[noreturn]] void png_error_cb(png_structp, png_const_charp msg) { throw IoError(std::string("png: ") + msg); }

void png_warning_cb(png_structp, png_const_charp) {}

struct PngReader {
  const std::vector<std::uint8_t>* in;
  std::size_t pos = 0;
};

void png_read_cb(png_structp png, png_bytep data, png_size_t len) {
  auto* r = static_cast<PngReader*>(png_get_io_ptr(png));
  if (r->pos + len > r->in->size()) png_error(png, "truncated stream");
  std::memcpy(data, r->in->data() + r->pos, len);
  r->pos += len;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& img) {
  std::vector<std::uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_cb, png_warning_cb);
  if (!png) throw IoError("png: cannot create writer");
  png_infop info = png_create_info_struct(png);
  try {
    if (!info) throw IoError("png: cannot create info");
    PngBuffer buf{&out};
    png_set_write_fn(png, &buf, png_write_cb, png_flush_cb);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    // Pin every encoder knob so output bytes depend only on the pixels.
    png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_SUB);
    png_set_compression_level(png, 6);
    png_set_compression_strategy(png, 0);
    png_set_compression_window_bits(png, 15);
    png_set_compression_mem_level(png, 8);
    png_write_info(png, info);
    const auto row_bytes = static_cast<std::size_t>(img.width()) * 3;
    for (int y = 0; y < img.height(); ++y) {
      auto* row = const_cast<png_bytep>(img.pixels().data() + static_cast<std::size_t>(y) * row_bytes);
      png_write_row(png, row);
    }
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
  return out;
}

Image decode_png(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) throw ParseError("png: bad signature");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_cb, png_warning_cb);
  if (!png) throw IoError("png: cannot create reader");
  png_infop info = png_create_info_struct(png);
  Image img;
  try {
    if (!info) throw IoError("png: cannot create info");
    PngReader reader{&bytes};
    png_set_read_fn(png, &reader, png_read_cb);
    png_read_info(png, info);
    if (png_get_color_type(png, info) != PNG_COLOR_TYPE_RGB || png_get_bit_depth(png, info) != 8)
      throw ParseError("png: only RGB8 is supported");
    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    img = Image(w, h, {});
    std::vector<std::uint8_t> row(static_cast<std::size_t>(w) * 3);
    for (int y = 0; y < h; ++y) {
      png_read_row(png, row.data(), nullptr);
      for (int x = 0; x < w; ++x) {
        const auto i = static_cast<std::size_t>(x) * 3;
        img.set(x, y, {row[i], row[i + 1], row[i + 2]});
      }
    }
    png_read_end(png, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path);
}

// ---- fonts and primitives -----------------------------------------------

namespace detail {

const FaceRecord& face(Face f) { return f == Face::Text ? kTextFace : kSymbolFace; }

const GlyphRecord& glyph(Face f, char32_t cp) {
  const FaceRecord& fr = face(f);
  const GlyphRecord* end = fr.glyphs + fr.n_glyphs;
  const GlyphRecord* it =
      std::lower_bound(fr.glyphs, end, cp, [](const GlyphRecord& g, char32_t c) { return g.cp < c; });
  if (it == end || it->cp != cp)
    throw InvalidArgument("no glyph for U+" + std::to_string(static_cast<unsigned long>(cp)) +
                          " in the embedded font " + fr.id);
  return *it;
}

int text_width(Face f, std::string_view utf8) {
  int w = 0;
  for (char32_t cp : decode_utf8(utf8)) w += glyph(f, cp).advance;
  return w;
}

namespace {

void blit(Image& img, const FaceRecord& fr, const GlyphRecord& g, int ox, int oy, Rgb c) {
  const int stride = (g.w + 7) / 8;
  for (int y = 0; y < g.h; ++y)
    for (int x = 0; x < g.w; ++x) {
      const unsigned char byte = fr.bits[g.offset + static_cast<std::size_t>(y * stride + x / 8)];
      if (byte & (0x80 >> (x % 8))) img.set(ox + x, oy + y, c);
    }
}

}  // namespace

void draw_text(Image& img, Face f, std::string_view utf8, int cx, int cy, Rgb c) {
  const FaceRecord& fr = face(f);
  int x = cx - text_width(f, utf8) / 2;
  const int top = cy - (fr.ascent + fr.descent) / 2;
  for (char32_t cp : decode_utf8(utf8)) {
    const GlyphRecord& g = glyph(f, cp);
    blit(img, fr, g, x + g.xoff, top + g.yoff, c);
    x += g.advance;
  }
}

void draw_glyph_centered(Image& img, Face f, char32_t cp, int cx, int cy, Rgb c) {
  const GlyphRecord& g = glyph(f, cp);
  blit(img, face(f), g, cx - g.w / 2, cy - g.h / 2, c);
}

namespace {

double segment_distance(Point p, Point a, Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = a.x + t * dx - p.x, ey = a.y + t * dy - p.y;
  return std::sqrt(ex * ex + ey * ey);
}

Point pixel_center(int x, int y) { return {x + 0.5, y + 0.5}; }

}  // namespace

void draw_segment(Image& img, Point a, Point b, double width, Rgb c, Rect clip) {
  const double half = width / 2;
  const int x0 = static_cast<int>(std::floor(std::min(a.x, b.x) - half)) - 1;
  const int x1 = static_cast<int>(std::ceil(std::max(a.x, b.x) + half)) + 1;
  const int y0 = static_cast<int>(std::floor(std::min(a.y, b.y) - half)) - 1;
  const int y1 = static_cast<int>(std::ceil(std::max(a.y, b.y) + half)) + 1;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (clip.contains(x, y) && segment_distance(pixel_center(x, y), a, b) <= half) img.set(x, y, c);
}

void draw_ring(Image& img, Point center, double radius, double width, Rgb c, Rect clip) {
  const double half = width / 2;
  for (int y = clip.y; y < clip.y + clip.h; ++y)
    for (int x = clip.x; x < clip.x + clip.w; ++x) {
      const Point p = pixel_center(x, y);
      const double d = std::sqrt((p.x - center.x) * (p.x - center.x) + (p.y - center.y) * (p.y - center.y));
      if (std::abs(d - radius) <= half) img.set(x, y, c);
    }
}

void draw_disk(Image& img, Point center, double radius, Rgb fill, Rgb edge, double outline) {
  const int x0 = static_cast<int>(std::floor(center.x - radius)) - 1;
  const int x1 = static_cast<int>(std::ceil(center.x + radius)) + 1;
  const int y0 = static_cast<int>(std::floor(center.y - radius)) - 1;
  const int y1 = static_cast<int>(std::ceil(center.y + radius)) + 1;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      const Point p = pixel_center(x, y);
      const double d = std::sqrt((p.x - center.x) * (p.x - center.x) + (p.y - center.y) * (p.y - center.y));
      if (d <= radius) img.set(x, y, d > radius - outline ? edge : fill);
    }
}

void draw_polygon(Image& img, const std::vector<Point>& pts, Rgb fill, Rgb edge, double outline) {
  if (pts.size() < 3) throw InvalidArgument("polygon needs three points");
  double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
  for (const Point& p : pts) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const std::size_t n = pts.size();
  for (int y = static_cast<int>(std::floor(miny)); y <= static_cast<int>(std::ceil(maxy)); ++y)
    for (int x = static_cast<int>(std::floor(minx)); x <= static_cast<int>(std::ceil(maxx)); ++x) {
      const Point p = pixel_center(x, y);
      // Convex polygon: inside when on the same side of every edge.
      bool pos = false, neg = false;
      double edge_d = 1e300;
      for (std::size_t i = 0; i < n; ++i) {
        const Point a = pts[i], b = pts[(i + 1) % n];
        const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        pos = pos || cross > 0;
        neg = neg || cross < 0;
        edge_d = std::min(edge_d, segment_distance(p, a, b));
      }
      if (pos && neg) continue;
      img.set(x, y, edge_d < outline ? edge : fill);
    }
}

void draw_frame(Image& img, Rect r, int width, Rgb c) {
  img.fill_rect(r.x, r.y, r.w, width, c);
  img.fill_rect(r.x, r.y + r.h - width, r.w, width, c);
  img.fill_rect(r.x, r.y, width, r.h, c);
  img.fill_rect(r.x + r.w - width, r.y, width, r.h, c);
}

}  // namespace detail

int text_width(std::string_view utf8) { return detail::text_width(detail::Face::Text, utf8); }

bool has_glyph(char32_t cp, bool symbol_face) {
  try {
    detail::glyph(symbol_face ? detail::Face::Symbol : detail::Face::Text, cp);
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

// ---- probes -------------------------------------------------------------

Rgb dominant_color(const Image& img, Rect r, int inset) {
  std::map<Rgb, int> counts;
  for (int y = r.y + inset; y < r.y + r.h - inset; ++y)
    for (int x = r.x + inset; x < r.x + r.w - inset; ++x) ++counts[img.at(x, y)];
  if (counts.empty()) throw InvalidArgument("probe region is empty");
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it)
    if (it->second > best->second) best = it;
  return best->first;
}

int count_regions(const Image& img, Rgb c, int min_area) {
  const int w = img.width(), h = img.height();
  std::vector<char> seen(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  auto idx = [&](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x); };
  int regions = 0;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (seen[idx(x, y)] || img.at(x, y) != c) continue;
      int area = 0;
      stack.push_back({x, y});
      seen[idx(x, y)] = 1;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        ++area;
        const int nx[4] = {cx + 1, cx - 1, cx, cx};
        const int ny[4] = {cy, cy, cy + 1, cy - 1};
        for (int k = 0; k < 4; ++k) {
          if (nx[k] < 0 || ny[k] < 0 || nx[k] >= w || ny[k] >= h) continue;
          if (seen[idx(nx[k], ny[k])] || img.at(nx[k], ny[k]) != c) continue;
          seen[idx(nx[k], ny[k])] = 1;
          stack.push_back({nx[k], ny[k]});
        }
      }
      if (area >= min_area) ++regions;
    }
  return regions;
}

bool has_ink(const Image& img, Rect r, Rgb c, int inset) {
  for (int y = r.y + inset; y < r.y + r.h - inset; ++y)
    for (int x = r.x + inset; x < r.x + r.w - inset; ++x)
      if (img.at(x, y) != c) return true;
  return false;
}

}  // namespace s2h::render
