#include <fmt/format.h>

#include "json.hpp"
#include "s2h/analogygen/analogygen.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/record.hpp"
#include "s2h/core/text.hpp"

namespace s2h::analogy {

namespace {

constexpr std::array<std::string_view, 5> kShapeNames = {"circle", "rectangle", "triangle", "pentagon", "hexagon"};
constexpr std::array<std::string_view, 5> kShapeCodes = {"CIR", "RECT", "TRI", "PENT", "HEX"};
constexpr std::array<std::string_view, 9> kPositionNames = {
    "top-left",    "top-center", "top-right",   "middle-left",  "center",
    "middle-right", "bottom-left", "bottom-center", "bottom-right"};
constexpr std::array<std::string_view, 9> kPositionCodes = {"TL", "TC", "TR", "ML", "MC",
                                                            "MR", "BL", "BC", "BR"};
constexpr std::array<std::string_view, 10> kLineNames = {
    "falling diagonal line", "rising diagonal line", "horizontal line",    "vertical line",
    "diamond lines",         "circular line",        "V-shape facing up",  "V-shape facing left",
    "V-shape facing down",   "V-shape facing right"};
constexpr std::array<std::string_view, 10> kLineCodes = {"FALL", "RISE", "HOR",   "VER",  "DIAM",
                                                         "CIRC", "VUP",  "VLEFT", "VDOWN", "VRIGHT"};
constexpr std::array<char, 4> kOptionLetters = {'A', 'B', 'C', 'D'};

template <std::size_t N>
std::string lookup(const std::array<std::string_view, N>& table, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= N) throw InvalidArgument("attribute index out of range");
  return std::string(table[static_cast<std::size_t>(i)]);
}

std::string join_numbers(const ValueSet& v) {
  std::vector<std::string> parts;
  for (int x : v) parts.push_back(std::to_string(x));
  return join(parts, ",");
}

// Attribute lines of the lossy form, as (key, values) pairs.
std::vector<std::pair<std::string, std::string>> lossy_fields(const Panel& p) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!p.shapes.empty()) {
    out.push_back({"type", format_values(Domain::ShapeType, values(p, Domain::ShapeType))});
    out.push_back({"color", format_values(Domain::ShapeColor, values(p, Domain::ShapeColor))});
    out.push_back({"size", format_values(Domain::ShapeSize, values(p, Domain::ShapeSize))});
    out.push_back({"quantity", format_values(Domain::ShapeQuantity, values(p, Domain::ShapeQuantity))});
    out.push_back({"position", format_values(Domain::ShapePosition, values(p, Domain::ShapePosition))});
  }
  if (!p.lines.empty()) {
    out.push_back({"line type", format_values(Domain::LineType, values(p, Domain::LineType))});
    out.push_back({"line color", format_values(Domain::LineColor, values(p, Domain::LineColor))});
  }
  return out;
}

std::string panel_inline(const Panel& p) {
  auto fields = lossy_fields(p);
  if (fields.empty()) return "empty";
  std::vector<std::string> parts;
  for (const auto& [k, v] : fields) parts.push_back(k + ": " + v);
  return join(parts, " | ");
}

std::string domain_line(const std::string& label, Domain d, const Panel& a, const Panel& b, const Panel& c,
                        const std::string& verdict) {
  return fmt::format("{}, {}: {} / {} / {} -> {}.", label, to_string(d), format_values(d, values(a, d)),
                     format_values(d, values(b, d)), format_values(d, values(c, d)), verdict);
}

std::string verdict_for(Domain d, const Panel& a, const Panel& b, const Panel& c) {
  for (Relation r : kRelations)
    if (pattern_holds({d, r}, a, b, c)) return std::string(to_string(r));
  return "no pattern";
}

}  // namespace

std::string shape_name(int type) { return lookup(kShapeNames, type); }
std::string position_name(int position) { return lookup(kPositionNames, position); }
std::string line_name(int type) { return lookup(kLineNames, type); }
std::string shape_code(int type) { return lookup(kShapeCodes, type); }
std::string position_code(int position) { return lookup(kPositionCodes, position); }
std::string line_code(int type) { return lookup(kLineCodes, type); }

std::string_view to_string(TextMode m) { return m == TextMode::Lossy ? "lossy" : "lossless"; }

std::string format_values(Domain d, const ValueSet& v) {
  if (v.empty()) return "none";
  std::vector<std::string> parts;
  switch (d) {
    case Domain::LineType:
      for (int x : v) parts.push_back(line_name(x));
      return join(parts, ", ");
    case Domain::ShapeType:
      for (int x : v) parts.push_back(shape_name(x));
      return join(parts, ", ");
    case Domain::ShapePosition:
      for (int x : v) parts.push_back(position_name(x));
      return join(parts, ", ");
    default:
      return join_numbers(v);
  }
}

std::string emit_panel_text(const Panel& p, TextMode mode) {
  if (mode == TextMode::Lossy) {
    auto fields = lossy_fields(p);
    if (fields.empty()) return "empty";
    std::vector<std::string> lines;
    for (const auto& [k, v] : fields) lines.push_back(k + ": " + v);
    return join(lines, "\n");
  }
  std::vector<std::string> codes;
  for (const Shape& s : p.shapes)
    codes.push_back(fmt::format("{}-{}-{}-{}", shape_code(s.type), s.color, s.size, position_code(s.position)));
  for (const Line& l : p.lines) codes.push_back(fmt::format("LINE-{}-{}", line_code(l.type), l.color));
  return codes.empty() ? "EMPTY" : join(codes, ";");
}

std::string emit_analogy_text(const AnalogyPuzzle& p, TextMode mode) {
  std::vector<std::string> blocks;
  auto add = [&](const std::string& label, const Panel& panel) {
    const std::string body = emit_panel_text(panel, mode);
    blocks.push_back(mode == TextMode::Lossy ? label + ":\n" + body : label + ": " + body);
  };
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < 3; ++i)
      add(fmt::format("Example {}, panel {}", e + 1, i + 1), p.examples[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)]);
  for (int i = 0; i < 2; ++i) add(fmt::format("Query, panel {}", i + 1), p.query[static_cast<std::size_t>(i)]);
  for (int i = 0; i < 4; ++i) add(fmt::format("Option {}", kOptionLetters[static_cast<std::size_t>(i)]), p.options[static_cast<std::size_t>(i)]);
  return join(blocks, "\n");
}

std::string lossless_legend() {
  std::string out =
      "Each object is written as a code; objects are separated by ';' and EMPTY marks an empty "
      "panel. A shape is TYPE-COLOR-SIZE-POSITION and a line is LINE-TYPE-COLOR. Colors are gray "
      "levels from 0 (black) to 255 (white); sizes are in pixels.";
  std::vector<std::string> parts;
  for (int i = 0; i < 5; ++i) parts.push_back(shape_code(i) + " = " + shape_name(i));
  out += "\nShape types: " + join(parts, ", ") + ".";
  parts.clear();
  for (int i = 0; i < 9; ++i) parts.push_back(position_code(i) + " = " + position_name(i));
  out += "\nPositions: " + join(parts, ", ") + ".";
  parts.clear();
  for (int i = 0; i < 10; ++i) parts.push_back(line_code(i) + " = " + line_name(i));
  out += "\nLine types: " + join(parts, ", ") + ".";
  return out;
}

std::string analogy_prompt(const AnalogyPuzzle& p, TextMode mode, bool with_text) {
  std::string out =
      "The puzzle shows two examples of three panels each, a query of two panels and four options "
      "A to D. In each example, the values of one attribute domain in the third panel follow from "
      "applying a relation (XOR, OR, AND or Progression) to the values in the first two panels. "
      "Both examples and the query share the same relation, possibly along different domains. The "
      "domains are line type, line color, shape type, shape color, shape size, shape quantity and "
      "shape position. Identify the pattern of each example and choose the option that completes "
      "the query.";
  if (with_text) {
    if (mode == TextMode::Lossless) out += "\n\n" + lossless_legend();
    out += "\n\n" + emit_analogy_text(p, mode);
  }
  return out;
}

CotAnswer emit_analogy_cot(const AnalogyPuzzle& p) {
  std::vector<std::string> lines{std::string(kCotHeader)};
  const std::array<Pattern, 2> ex_patterns = {p.latent.example1, p.latent.example2};
  for (int e = 0; e < 2; ++e) {
    const auto& t = p.examples[static_cast<std::size_t>(e)];
    const std::string label = fmt::format("Example {}", e + 1);
    for (int i = 0; i < 3; ++i)
      lines.push_back(fmt::format("{}, panel {}: {}", label, i + 1, panel_inline(t[static_cast<std::size_t>(i)])));
    for (Domain d : kDomains) lines.push_back(domain_line(label, d, t[0], t[1], t[2], verdict_for(d, t[0], t[1], t[2])));
    lines.push_back(fmt::format("{} follows {}.", label, to_string(ex_patterns[static_cast<std::size_t>(e)])));
  }
  const Relation r = p.latent.query.relation;
  lines.push_back(fmt::format("The examples use {} and share the relation {}.",
                              p.latent.example1.domain == p.latent.example2.domain ? "the same domain"
                                                                                   : "different domains",
                              to_string(r)));
  for (int i = 0; i < 2; ++i)
    lines.push_back(fmt::format("Query, panel {}: {}", i + 1, panel_inline(p.query[static_cast<std::size_t>(i)])));
  const auto opts = p.option_patterns();
  std::vector<std::string> summary;
  for (int i = 0; i < 4; ++i) {
    const Panel& o = p.options[static_cast<std::size_t>(i)];
    const Pattern& op = opts[static_cast<std::size_t>(i)];
    const std::string label = fmt::format("Option {}", kOptionLetters[static_cast<std::size_t>(i)]);
    lines.push_back(fmt::format("{}: {}", label, panel_inline(o)));
    lines.push_back(domain_line(label, op.domain, p.query[0], p.query[1], o, std::string(to_string(op.relation))));
    lines.push_back(fmt::format("{} follows {}, which {} {}.", label, to_string(op),
                                op.relation == r ? "matches" : "does not match", to_string(r)));
    summary.push_back(fmt::format("{}: {}.", label, to_string(op)));
  }
  const char letter = kOptionLetters[static_cast<std::size_t>(p.answer_index)];
  lines.push_back(fmt::format("The answer is {}.", letter));
  std::string answer = fmt::format("{} Example 1: {}. Example 2: {}. {} The answer is {}.", kAnswerHeader,
                                   to_string(p.latent.example1), to_string(p.latent.example2),
                                   join(summary, " "), letter);
  return {join(lines, "\n"), std::move(answer)};
}

namespace {

nlohmann::ordered_json panel_json(const Panel& p) {
  nlohmann::ordered_json j;
  auto shapes = nlohmann::ordered_json::array();
  for (const Shape& s : p.shapes) shapes.push_back({s.type, s.color, s.size, s.position});
  auto lines = nlohmann::ordered_json::array();
  for (const Line& l : p.lines) lines.push_back({l.type, l.color});
  j["shapes"] = std::move(shapes);
  j["lines"] = std::move(lines);
  return j;
}

Panel panel_from(const nlohmann::json& j) {
  Panel p;
  for (const auto& s : j.at("shapes"))
    p.shapes.push_back({s.at(0).get<int>(), s.at(1).get<int>(), s.at(2).get<int>(), s.at(3).get<int>()});
  for (const auto& l : j.at("lines")) p.lines.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
  if (!is_valid(p)) throw ParseError("analogy panel violates attribute constraints");
  return p;
}

nlohmann::ordered_json pattern_json(const Pattern& p) {
  return nlohmann::ordered_json::array({to_string(p.domain), to_string(p.relation)});
}

Pattern pattern_from(const nlohmann::json& j) {
  return {parse_domain(j.at(0).get<std::string>()), parse_relation(j.at(1).get<std::string>())};
}

}  // namespace

std::string to_json(const AnalogyPuzzle& p) {
  nlohmann::ordered_json j;
  j["variant"] = to_string(p.variant);
  j["difficulty"] = to_string(p.difficulty);
  auto ex = nlohmann::ordered_json::array();
  for (const auto& t : p.examples) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& panel : t) row.push_back(panel_json(panel));
    ex.push_back(std::move(row));
  }
  j["examples"] = std::move(ex);
  j["query"] = nlohmann::ordered_json::array({panel_json(p.query[0]), panel_json(p.query[1])});
  auto opts = nlohmann::ordered_json::array();
  for (const auto& o : p.options) opts.push_back(panel_json(o));
  j["options"] = std::move(opts);
  j["answer_index"] = p.answer_index;
  j["latent"] = nlohmann::ordered_json::array(
      {pattern_json(p.latent.example1), pattern_json(p.latent.example2), pattern_json(p.latent.query)});
  j["confounders"] = nlohmann::ordered_json::array(
      {pattern_json(p.confounders[0]), pattern_json(p.confounders[1]), pattern_json(p.confounders[2])});
  auto held = nlohmann::ordered_json::array();
  for (const auto& h : p.heldout) held.push_back(pattern_json(h));
  j["heldout"] = std::move(held);
  return j.dump();
}

AnalogyPuzzle analogy_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    AnalogyPuzzle p;
    p.variant = parse_variant(j.at("variant").get<std::string>());
    p.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
    for (std::size_t e = 0; e < 2; ++e)
      for (std::size_t i = 0; i < 3; ++i) p.examples[e][i] = panel_from(j.at("examples").at(e).at(i));
    for (std::size_t i = 0; i < 2; ++i) p.query[i] = panel_from(j.at("query").at(i));
    for (std::size_t i = 0; i < 4; ++i) p.options[i] = panel_from(j.at("options").at(i));
    p.answer_index = j.at("answer_index").get<int>();
    p.latent = {pattern_from(j.at("latent").at(0)), pattern_from(j.at("latent").at(1)),
                pattern_from(j.at("latent").at(2))};
    for (std::size_t i = 0; i < 3; ++i) p.confounders[i] = pattern_from(j.at("confounders").at(i));
    for (const auto& h : j.at("heldout")) p.heldout.insert(pattern_from(h));
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("analogy puzzle: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("analogy puzzle: ") + e.what());
  }
}

}  // namespace s2h::analogy
