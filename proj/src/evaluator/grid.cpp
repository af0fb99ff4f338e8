#include <fmt/format.h>

#include "cursor.hpp"
#include "s2h/core/record.hpp"
#include "s2h/core/text.hpp"
#include "s2h/evaluator/evaluator.hpp"

namespace s2h::eval {

std::optional<std::vector<Direction>> parse_grid_answer(const std::string& text, std::string* error) {
  auto fail = [&](std::string msg) -> std::optional<std::vector<Direction>> {
    if (error) *error = std::move(msg);
    return std::nullopt;
  };
  const Sections s = split_sections(text);
  if (!s.answer) return fail("no final-answer line");
  detail::Cursor c{trim(*s.answer)};
  if (!c.lit(kAnswerHeader)) return fail("no final-answer line");
  std::vector<Direction> moves;
  const std::string_view rest = trim(c.s);
  if (rest.empty()) return moves;
  for (std::string_view tok : split(rest, ",")) {
    const auto d = grid::parse_direction(trim(tok));
    if (!d) return fail(fmt::format("unknown direction '{}'", trim(tok)));
    moves.push_back(*d);
  }
  return moves;
}

Verdict eval_grid(const Generation& gen, const grid::GridInstance& gold) {
  Verdict v;
  v.channel = Channel::Simulated;
  std::string err;
  const auto moves = parse_grid_answer(gen.text, &err);
  const std::size_t n_objects = gold.objects.size();
  if (!moves) {
    v.parse_error = err;
    v.details["reached_end"] = 0;
    v.details["objects_frac"] = n_objects ? 0.0 : 1.0;
    v.details["obstacles_hit"] = 0;
    return v;
  }
  const grid::SimulationResult sim = grid::simulate(gold, *moves);
  const double frac = n_objects ? static_cast<double>(sim.objects_collected) / static_cast<double>(n_objects) : 1.0;
  v.details["reached_end"] = sim.reached_end;
  v.details["left_grid"] = sim.left_grid;
  v.details["objects_frac"] = frac;
  v.details["obstacles_hit"] = sim.obstacles_hit;
  v.details["moves"] = static_cast<double>(moves->size());
  v.correct = sim.reached_end && static_cast<std::size_t>(sim.objects_collected) == n_objects && sim.obstacles_hit == 0;
  return v;
}

namespace {

// "Start: (r, c). Destination: (r, c)."
bool src_dst_correct(const std::string& text, const grid::GridInstance& gold) {
  const Sections s = split_sections(text);
  if (!s.cot) return false;
  for (std::string_view line : split_lines(*s.cot)) {
    detail::Cursor c{trim(line)};
    if (!c.lit("Start: (")) continue;
    const auto sr = c.integer();
    if (!sr || !c.lit(", ")) return false;
    const auto sc = c.integer();
    if (!sc || !c.lit("). Destination: (")) return false;
    const auto er = c.integer();
    if (!er || !c.lit(", ")) return false;
    const auto ec = c.integer();
    if (!ec || !c.lit(").") || !c.done()) return false;
    return Coord{int(*sr), int(*sc)} == gold.start && Coord{int(*er), int(*ec)} == gold.end;
  }
  return false;
}

}  // namespace

GridSubtaskMetrics grid_subtask_metrics(const std::vector<std::pair<Generation, grid::GridInstance>>& batch) {
  GridSubtaskMetrics m;
  m.n = batch.size();
  if (batch.empty()) return m;
  double src = 0, reach = 0, objects = 0, obstacles = 0;
  for (const auto& [gen, gold] : batch) {
    if (src_dst_correct(gen.text, gold)) src += 1;
    const Verdict v = eval_grid(gen, gold);
    reach += v.details.at("reached_end");
    objects += v.details.at("objects_frac");
    obstacles += v.details.at("obstacles_hit");
  }
  const double n = static_cast<double>(batch.size());
  m.src_dst_parse_acc = src / n;
  m.reaches_destination_frac = reach / n;
  m.objects_collected_frac = objects / n;
  m.obstacles_passed_mean = obstacles / n;
  return m;
}

}  // namespace s2h::eval
