#include <fmt/format.h>

#include "json.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/record.hpp"
#include "s2h/core/text.hpp"
#include "s2h/gridgen/gridgen.hpp"

namespace s2h::grid {

namespace {

std::string pos(Coord c) { return fmt::format("({}, {})", c.row, c.col); }

std::string_view verdict_phrase(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::Ok: return "which is available and not visited yet";
    case CandidateStatus::Obstacle: return "but it has an obstacle";
    case CandidateStatus::Visited: return "but it has already been visited";
    case CandidateStatus::OutOfBounds: return "but it is outside the grid";
  }
  return "";
}

}  // namespace

std::string grid_prompt(const GridInstance& inst, bool with_grid) {
  std::vector<std::string> objects;
  for (const auto& o : inst.objects) objects.push_back(fmt::format("{} ({})", o.name, encode_utf8(o.glyph)));
  std::vector<std::string> obstacles;
  for (ObstacleKind k : kObstacleKinds) {
    bool present = false;
    for (const auto& o : inst.obstacles) present = present || o.kind == k;
    if (present) obstacles.push_back(fmt::format("{} ({})", to_string(k), encode_utf8(obstacle_glyph(k))));
  }
  std::string p = fmt::format(
      "The grid has {} rows and {} columns. Rows are numbered from top to bottom and columns from "
      "left to right. The start cell is marked S and the destination is marked E. Find a path from "
      "S to E that collects every object and never enters a cell with an obstacle. Objects: {}. "
      "Obstacles: {}. Each move goes one cell left, right, up or down. Give the sequence of moves.",
      inst.n_rows, inst.n_cols, join(objects, ", "), obstacles.empty() ? "none" : join(obstacles, ", "));
  if (with_grid) {
    p += "\n\n";
    p += emit_grid_text(inst);
  }
  return p;
}

std::string emit_grid_text(const GridInstance& inst) {
  std::string out = "\\begin{tabular}{|c|";
  for (int c = 0; c < inst.n_cols; ++c) out += "c|";
  out += "}\n\\hline\n";
  for (int c = 1; c <= inst.n_cols; ++c) out += fmt::format(" & {}", c);
  out += " \\\\\n\\hline\n";
  for (int r = 1; r <= inst.n_rows; ++r) {
    out += std::to_string(r);
    for (int c = 1; c <= inst.n_cols; ++c) {
      const Coord cell{r, c};
      out += " & ";
      if (cell == inst.start) out += "S";
      else if (cell == inst.end) out += "E";
      else if (auto idx = inst.object_at(cell)) out += encode_utf8(inst.objects[*idx].glyph);
      else
        for (const auto& o : inst.obstacles)
          if (o.pos == cell) out += encode_utf8(obstacle_glyph(o.kind));
    }
    out += " \\\\\n\\hline\n";
  }
  out += "\\end{tabular}";
  return out;
}

CotAnswer emit_grid_cot(const GridInstance& inst, const DfsTrace& trace) {
  std::string cot(kCotHeader);
  cot += fmt::format("\nStart: {}. Destination: {}.", pos(inst.start), pos(inst.end));
  std::vector<std::string> objects;
  for (const auto& o : inst.objects) objects.push_back(fmt::format("{} at {}", o.name, pos(o.pos)));
  cot += fmt::format("\nObjects to collect: {}.", join(objects, ", "));
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    std::vector<std::string> parts;
    for (const Candidate& c : s.considered)
      parts.push_back(fmt::format("{} would lead to {} {}", to_string(c.dir), pos(c.target),
                                  verdict_phrase(c.status)));
    cot += fmt::format("\nStep {}. Current cell: {}: {}", i + 1, pos(s.cell), join(parts, "; "));
    if (s.backtrack) {
      cot += fmt::format("; we have no more action left, so we backtrack to {}.", pos(s.next));
    } else {
      cot += fmt::format(", so we can move {}.", to_string(s.move));
      if (s.collected)
        cot += fmt::format(" We collect the {} at {}.", inst.objects[*s.collected].name, pos(s.next));
    }
  }
  cot += fmt::format("\nWe reached the destination {} with all objects collected.", pos(inst.end));
  std::vector<std::string> dirs;
  for (Direction d : trace.final_actions) dirs.emplace_back(to_string(d));
  return {std::move(cot), fmt::format("{} {}", kAnswerHeader, join(dirs, ", "))};
}

std::string to_json(const GridInstance& inst) {
  using ojson = nlohmann::ordered_json;
  ojson j;
  j["difficulty"] = to_string(inst.difficulty);
  j["n_rows"] = inst.n_rows;
  j["n_cols"] = inst.n_cols;
  j["start"] = {inst.start.row, inst.start.col};
  j["end"] = {inst.end.row, inst.end.col};
  auto objs = ojson::array();
  for (const auto& o : inst.objects) objs.push_back({{"name", o.name}, {"pos", {o.pos.row, o.pos.col}}});
  j["objects"] = std::move(objs);
  auto obs = ojson::array();
  for (const auto& o : inst.obstacles)
    obs.push_back({{"kind", to_string(o.kind)}, {"pos", {o.pos.row, o.pos.col}}});
  j["obstacles"] = std::move(obs);
  j["dfs_steps"] = inst.dfs_steps;
  return j.dump();
}

GridInstance grid_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    auto coord = [](const nlohmann::json& c) { return Coord{c.at(0).get<int>(), c.at(1).get<int>()}; };
    GridInstance inst;
    inst.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
    inst.n_rows = j.at("n_rows").get<int>();
    inst.n_cols = j.at("n_cols").get<int>();
    inst.start = coord(j.at("start"));
    inst.end = coord(j.at("end"));
    for (const auto& o : j.at("objects")) {
      std::string name = o.at("name").get<std::string>();
      auto glyph = object_glyph(name);
      if (!glyph) throw ParseError("grid instance: unknown object " + name);
      inst.objects.push_back({name, *glyph, coord(o.at("pos"))});
    }
    for (const auto& o : j.at("obstacles")) {
      std::string kind = o.at("kind").get<std::string>();
      std::optional<ObstacleKind> k;
      for (ObstacleKind cand : kObstacleKinds)
        if (to_string(cand) == kind) k = cand;
      if (!k) throw ParseError("grid instance: unknown obstacle " + kind);
      inst.obstacles.push_back({*k, coord(o.at("pos"))});
    }
    inst.dfs_steps = j.at("dfs_steps").get<int>();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("grid instance: ") + e.what());
  }
}

}  // namespace s2h::grid
