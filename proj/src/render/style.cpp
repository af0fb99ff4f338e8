#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "s2h/core/error.hpp"
#include "s2h/core/text.hpp"
#include "s2h/render/render.hpp"

namespace s2h::render {

namespace {

int parse_int(std::string_view key, std::string_view v, int lo, int hi) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || out < lo || out > hi)
    throw ParseError(fmt::format("style: {} must be an integer in [{}, {}], got '{}'", key, lo, hi, v));
  return out;
}

Rgb parse_rgb(std::string_view key, std::string_view v) {
  auto parts = split(v, ",");
  if (parts.size() != 3) throw ParseError(fmt::format("style: {} must be r,g,b", key));
  auto ch = [&](std::string_view p) { return static_cast<std::uint8_t>(parse_int(key, trim(p), 0, 255)); };
  return {ch(parts[0]), ch(parts[1]), ch(parts[2])};
}

std::string rgb_text(Rgb c) { return fmt::format("{},{},{}", c.r, c.g, c.b); }

}  // namespace

RenderStyle default_style() { return {}; }

RenderStyle parse_style(std::string_view text) {
  RenderStyle s;
  for (std::string_view raw : split_lines(text)) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("style: expected key = value: " + std::string(raw));
    std::string_view key = trim(line.substr(0, eq));
    std::string_view v = trim(line.substr(eq + 1));
    if (key == "version") {
      s.version = parse_int(key, v, 1, 1);
    } else if (key == "cell_px") {
      s.cell_px = parse_int(key, v, 16, 512);
    } else if (key == "panel_px") {
      s.panel_px = parse_int(key, v, 60, 1024);
    } else if (key == "border_px") {
      s.border_px = parse_int(key, v, 1, 8);
    } else if (key == "stroke_px") {
      s.stroke_px = parse_int(key, v, 1, 8);
    } else if (key == "text_pad_px") {
      s.text_pad_px = parse_int(key, v, 0, 64);
    } else if (key == "max_image_px") {
      s.max_image_px = parse_int(key, v, 64, 16384);
    } else if (key == "font") {
      if (v != "dejavu-sans-bold") throw ParseError("style: only the embedded font dejavu-sans-bold exists");
      s.font = std::string(v);
    } else if (key == "background_rgb") {
      s.background = parse_rgb(key, v);
    } else if (key == "text_rgb") {
      s.text = parse_rgb(key, v);
    } else if (key == "highlight_rgb") {
      s.highlight = parse_rgb(key, v);
    } else if (key == "grid_line_rgb") {
      s.grid_line = parse_rgb(key, v);
    } else if (key == "header_fill_rgb") {
      s.header_fill = parse_rgb(key, v);
    } else {
      throw ParseError("style: unknown key " + std::string(key));
    }
  }
  return s;
}

RenderStyle load_style(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read style file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_style(ss.str());
}

std::string style_to_text(const RenderStyle& s) {
  std::string out;
  out += fmt::format("version = {}\n", s.version);
  out += fmt::format("cell_px = {}\n", s.cell_px);
  out += fmt::format("panel_px = {}\n", s.panel_px);
  out += fmt::format("border_px = {}\n", s.border_px);
  out += fmt::format("stroke_px = {}\n", s.stroke_px);
  out += fmt::format("text_pad_px = {}\n", s.text_pad_px);
  out += fmt::format("max_image_px = {}\n", s.max_image_px);
  out += fmt::format("font = {}\n", s.font);
  out += fmt::format("background_rgb = {}\n", rgb_text(s.background));
  out += fmt::format("text_rgb = {}\n", rgb_text(s.text));
  out += fmt::format("highlight_rgb = {}\n", rgb_text(s.highlight));
  out += fmt::format("grid_line_rgb = {}\n", rgb_text(s.grid_line));
  out += fmt::format("header_fill_rgb = {}\n", rgb_text(s.header_fill));
  return out;
}

}  // namespace s2h::render
