#include "s2h/tasks/tasks.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "s2h/core/error.hpp"

namespace s2h::tasks {

std::string_view to_string(Form f) {
  switch (f) {
    case Form::Text: return "text";
    case Form::Image: return "image";
    case Form::ImageViaText: return "image-via-text";
  }
  return "?";
}

Form parse_form(std::string_view s) {
  if (s == "text") return Form::Text;
  if (s == "image") return Form::Image;
  if (s == "image-via-text" || s == "ivt") return Form::ImageViaText;
  throw InvalidArgument("unknown form: " + std::string(s));
}

namespace {

analogy::Variant variant_for(TaskKind task) {
  return task == TaskKind::PatternHeldoutVisualAnalogy ? analogy::Variant::PatternHeldout
                                                       : analogy::Variant::Standard;
}

std::string join_patterns(const std::vector<analogy::Pattern>& ps) {
  std::vector<std::string> parts;
  for (const auto& p : ps) parts.push_back(analogy::to_string(p));
  return fmt::format("{}", fmt::join(parts, "; "));
}

Metadata task_metadata(const Instance& inst, const Options& opts) {
  Metadata m;
  m["seed"] = std::to_string(inst.seed);
  switch (inst.task) {
    case TaskKind::ConsecutiveTableReadout:
    case TaskKind::TableReadout: {
      const auto& t = inst.table();
      m["length"] = std::to_string(t.path.size());
      m["segments"] = std::to_string(t.pattern_meta.segments);
      std::vector<std::string> pats;
      for (auto p : t.pattern_meta.patterns) pats.emplace_back(table::to_string(p));
      m["patterns"] = fmt::format("{}", fmt::join(pats, ","));
      const auto hl = render::RenderStyle{}.highlight;
      m["highlight_rgb"] = fmt::format("{},{},{}", hl.r, hl.g, hl.b);
      break;
    }
    case TaskKind::GridNavigation: {
      const auto& g = inst.grid().instance;
      m["dfs_steps"] = std::to_string(g.dfs_steps);
      m["objects"] = std::to_string(g.objects.size());
      m["obstacle_kinds"] = std::to_string(g.obstacle_kind_count());
      break;
    }
    case TaskKind::VisualAnalogy:
    case TaskKind::PatternHeldoutVisualAnalogy: {
      const auto& p = inst.analogy();
      m["variant"] = std::string(analogy::to_string(p.variant));
      m["text_mode"] = std::string(analogy::to_string(opts.text_mode));
      m["patterns"] = join_patterns({p.latent.example1, p.latent.example2, p.latent.query});
      m["confounders"] = join_patterns({p.confounders.begin(), p.confounders.end()});
      m["answer"] = std::string(1, static_cast<char>('A' + p.answer_index));
      break;
    }
  }
  m["instance"] = instance_json(inst);
  return m;
}

}  // namespace

Instance generate(TaskKind task, Difficulty difficulty, std::uint64_t seed, const Options& opts) {
  require_difficulty_valid(task, difficulty);
  Instance inst;
  inst.task = task;
  inst.difficulty = difficulty;
  inst.seed = seed;
  switch (task) {
    case TaskKind::ConsecutiveTableReadout:
      inst.data = table::gen_consecutive_instance(difficulty, seed);
      break;
    case TaskKind::TableReadout:
      inst.data = table::gen_table_readout_instance(difficulty, seed);
      break;
    case TaskKind::GridNavigation: {
      GridData g;
      g.instance = grid::gen_grid_instance(difficulty, seed, &g.trace);
      inst.data = std::move(g);
      break;
    }
    case TaskKind::VisualAnalogy:
    case TaskKind::PatternHeldoutVisualAnalogy:
      inst.data = analogy::gen_puzzle(variant_for(task), difficulty, opts.heldout, seed);
      break;
  }
  return inst;
}

std::string instance_json(const Instance& inst) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, GridData>) return grid::to_json(d.instance);
        else if constexpr (std::is_same_v<T, table::TableInstance>) return table::to_json(d);
        else return analogy::to_json(d);
      },
      inst.data);
}

Instance instance_from_json(TaskKind task, const std::string& json) {
  Instance inst;
  inst.task = task;
  if (is_table_task(task)) {
    auto t = table::table_from_json(json);
    if (t.task != task) throw ParseError("instance task does not match the record task");
    inst.difficulty = t.difficulty;
    inst.data = std::move(t);
  } else if (task == TaskKind::GridNavigation) {
    GridData g;
    g.instance = grid::grid_from_json(json);
    g.trace = grid::dfs_solve(g.instance);
    inst.difficulty = g.instance.difficulty;
    inst.data = std::move(g);
  } else {
    auto p = analogy::analogy_from_json(json);
    if (variant_for(task) != p.variant) throw ParseError("instance variant does not match the record task");
    inst.difficulty = p.difficulty;
    inst.data = std::move(p);
  }
  return inst;
}

Instance instance_from_record(const SupervisedRecord& rec) {
  auto it = rec.metadata().find("instance");
  if (it == rec.metadata().end()) throw ParseError("record " + rec.id() + " has no instance metadata");
  Instance inst = instance_from_json(rec.task(), it->second);
  if (auto s = rec.metadata().find("seed"); s != rec.metadata().end()) inst.seed = std::stoull(s->second);
  return inst;
}

std::string text_form(const Instance& inst, const Options& opts) {
  if (is_table_task(inst.task)) return table::emit_table_text(inst.table());
  if (inst.task == TaskKind::GridNavigation) return grid::emit_grid_text(inst.grid().instance);
  return analogy::emit_analogy_text(inst.analogy(), opts.text_mode);
}

std::string prompt(const Instance& inst, bool text_input, const Options& opts) {
  if (is_table_task(inst.task)) return table::table_prompt(inst.table(), text_input);
  if (inst.task == TaskKind::GridNavigation) return grid::grid_prompt(inst.grid().instance, text_input);
  return analogy::analogy_prompt(inst.analogy(), opts.text_mode, text_input);
}

Gold gold(const Instance& inst) {
  if (is_table_task(inst.task)) {
    auto c = table::emit_table_cot(inst.table());
    return {c.cot, c.answer};
  }
  if (inst.task == TaskKind::GridNavigation) {
    auto c = grid::emit_grid_cot(inst.grid().instance, inst.grid().trace);
    return {c.cot, c.answer};
  }
  auto c = analogy::emit_analogy_cot(inst.analogy());
  return {c.cot, c.answer};
}

std::string image_name(const Instance& inst) {
  return fmt::format("images/{}-{}-{:016x}.png", to_string(inst.task), to_string(inst.difficulty), inst.seed);
}

SupervisedRecord make_record(const Instance& inst, Form form, const Options& opts) {
  const bool text_input = form == Form::Text;
  const Gold g = gold(inst);
  std::vector<Segment> segs;
  segs.push_back({SegmentKind::Prompt, prompt(inst, text_input, opts), false});
  if (form == Form::ImageViaText) {
    segs.push_back({SegmentKind::ConvertPrompt, std::string(convert_prompt()), true});
    segs.push_back({SegmentKind::ConvertedText, text_form(inst, opts), true});
  }
  segs.push_back({SegmentKind::Cot, g.cot, true});
  segs.push_back({SegmentKind::Answer, g.answer, true});
  Metadata meta = task_metadata(inst, opts);
  meta["form"] = std::string(to_string(form));
  std::optional<std::string> image;
  if (!text_input) image = image_name(inst);
  return SupervisedRecord(inst.task, inst.difficulty, text_input ? Modality::TextInput : Modality::ImageInput,
                          std::move(image), std::move(segs), std::move(meta));
}

std::vector<std::uint8_t> render(const Instance& inst, const render::RenderStyle& style) {
  if (is_table_task(inst.task)) return render::render_table(inst.table(), style);
  if (inst.task == TaskKind::GridNavigation) return render::render_grid(inst.grid().instance, style);
  return render::render_analogy(inst.analogy(), style);
}

}  // namespace s2h::tasks
