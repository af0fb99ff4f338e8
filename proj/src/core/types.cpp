#include "s2h/core/types.hpp"

#include <string>

#include "s2h/core/error.hpp"

namespace s2h {

std::string_view to_string(Difficulty d) {
  switch (d) {
    case Difficulty::Simple: return "simple";
    case Difficulty::Medium: return "medium";
    case Difficulty::Hard: return "hard";
  }
  return "?";
}

std::string_view to_string(TaskKind t) {
  switch (t) {
    case TaskKind::ConsecutiveTableReadout: return "consecutive-table-readout";
    case TaskKind::TableReadout: return "table-readout";
    case TaskKind::GridNavigation: return "grid-navigation";
    case TaskKind::VisualAnalogy: return "visual-analogy";
    case TaskKind::PatternHeldoutVisualAnalogy: return "pattern-heldout-visual-analogy";
  }
  return "?";
}

std::string_view to_string(SupervisionKind s) {
  switch (s) {
    case SupervisionKind::Text: return "text";
    case SupervisionKind::Image: return "image";
    case SupervisionKind::ImageViaText: return "image-via-text";
    case SupervisionKind::TextPlusImage: return "text+image";
    case SupervisionKind::Mix: return "mix";
    case SupervisionKind::ImageViaTextPlus: return "image-via-text+";
    case SupervisionKind::MixPlus: return "mix+";
    case SupervisionKind::Align: return "align";
    case SupervisionKind::TextWarmup: return "text-warmup";
  }
  return "?";
}

std::string_view to_string(SegmentKind k) {
  switch (k) {
    case SegmentKind::Prompt: return "prompt";
    case SegmentKind::ConvertPrompt: return "convert_prompt";
    case SegmentKind::ConvertedText: return "converted_text";
    case SegmentKind::Cot: return "cot";
    case SegmentKind::Answer: return "answer";
  }
  return "?";
}

std::string_view to_string(Modality m) {
  return m == Modality::TextInput ? "text" : "image";
}

Difficulty parse_difficulty(std::string_view s) {
  if (s == "simple") return Difficulty::Simple;
  if (s == "medium") return Difficulty::Medium;
  if (s == "hard") return Difficulty::Hard;
  throw InvalidArgument("unknown difficulty: " + std::string(s));
}

TaskKind parse_task(std::string_view s) {
  for (TaskKind t : kAllTasks)
    if (s == to_string(t)) return t;
  if (s == "ctr" || s == "consecutive") return TaskKind::ConsecutiveTableReadout;
  if (s == "table" || s == "tr") return TaskKind::TableReadout;
  if (s == "grid") return TaskKind::GridNavigation;
  if (s == "analogy") return TaskKind::VisualAnalogy;
  if (s == "pattern-heldout" || s == "pattern-heldout-analogy")
    return TaskKind::PatternHeldoutVisualAnalogy;
  throw InvalidArgument("unknown task: " + std::string(s));
}

SupervisionKind parse_supervision(std::string_view s) {
  for (SupervisionKind k : kAllSupervisionKinds)
    if (s == to_string(k)) return k;
  if (s == "ivt") return SupervisionKind::ImageViaText;
  if (s == "ivt+") return SupervisionKind::ImageViaTextPlus;
  if (s == "tw") return SupervisionKind::TextWarmup;
  throw InvalidArgument("unknown supervision kind: " + std::string(s));
}

SegmentKind parse_segment_kind(std::string_view s) {
  for (SegmentKind k : {SegmentKind::Prompt, SegmentKind::ConvertPrompt, SegmentKind::ConvertedText,
                        SegmentKind::Cot, SegmentKind::Answer})
    if (s == to_string(k)) return k;
  throw InvalidArgument("unknown segment kind: " + std::string(s));
}

Modality parse_modality(std::string_view s) {
  if (s == "text") return Modality::TextInput;
  if (s == "image") return Modality::ImageInput;
  throw InvalidArgument("unknown modality: " + std::string(s));
}

bool difficulty_valid_for(TaskKind task, Difficulty d) {
  return d != Difficulty::Medium || task == TaskKind::ConsecutiveTableReadout;
}

void require_difficulty_valid(TaskKind task, Difficulty d) {
  if (!difficulty_valid_for(task, d))
    throw InvalidArgument(std::string("difficulty ") + std::string(to_string(d)) +
                          " is not defined for task " + std::string(to_string(task)));
}

}  // namespace s2h
