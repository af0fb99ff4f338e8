#include "s2h/gridgen/gridgen.hpp"

namespace s2h::grid {

// Mirrors data/glyphs.tsv; a unit test keeps the two in sync.
const std::vector<GlyphEntry>& object_glyphs() {
  static const std::vector<GlyphEntry> table = {
      {"heart", 0x2665},    {"crown", 0x2654},   {"flag", 0x2691},     {"star", 0x2605},
      {"flower", 0x273F},   {"umbrella", 0x2602}, {"plane", 0x2708},   {"phone", 0x260E},
      {"spark", 0x26A1},    {"diamond", 0x2666}, {"queen", 0x265B},    {"hammer", 0x2692},
      {"club", 0x2663},     {"gear", 0x2699},    {"arrow", 0x2794},    {"sun", 0x2600},
      {"bishop", 0x265D},   {"note", 0x266A},    {"coffee", 0x2615},   {"anchor", 0x2693},
      {"cloud", 0x2601},    {"pawn", 0x265F},    {"castle", 0x265C},   {"horse", 0x265E},
      {"infinity", 0x221E}, {"moon", 0x263E},    {"null", 0x2205},     {"approx", 0x2248},
      {"integral", 0x222B}, {"product", 0x220F}, {"sum", 0x2211},
  };
  return table;
}

std::optional<char32_t> object_glyph(std::string_view name) {
  for (const auto& g : object_glyphs())
    if (g.name == name) return g.codepoint;
  return std::nullopt;
}

std::string_view to_string(ObstacleKind k) {
  switch (k) {
    case ObstacleKind::Dot: return "dot";
    case ObstacleKind::Cross: return "cross";
    case ObstacleKind::Square: return "square";
    case ObstacleKind::Triangle: return "triangle";
    case ObstacleKind::Plus: return "plus";
  }
  return "?";
}

char32_t obstacle_glyph(ObstacleKind k) {
  switch (k) {
    case ObstacleKind::Dot: return 0x2022;
    case ObstacleKind::Cross: return 0x2716;
    case ObstacleKind::Square: return 0x25A0;
    case ObstacleKind::Triangle: return 0x25B2;
    case ObstacleKind::Plus: return 0x271A;
  }
  return 0;
}

bool GridInstance::has_obstacle(Coord c) const {
  for (const auto& o : obstacles)
    if (o.pos == c) return true;
  return false;
}

std::optional<std::size_t> GridInstance::object_at(Coord c) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].pos == c) return i;
  return std::nullopt;
}

int GridInstance::obstacle_kind_count() const {
  bool seen[5] = {};
  for (const auto& o : obstacles) seen[static_cast<int>(o.kind)] = true;
  int n = 0;
  for (bool b : seen) n += b;
  return n;
}

}  // namespace s2h::grid
