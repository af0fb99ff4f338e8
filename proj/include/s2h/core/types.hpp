#pragma once

#include <array>
#include <string>
#include <string_view>

namespace s2h {

enum class Difficulty { Simple, Medium, Hard };

enum class TaskKind {
  ConsecutiveTableReadout,
  TableReadout,
  GridNavigation,
  VisualAnalogy,
  PatternHeldoutVisualAnalogy,
};

enum class SupervisionKind {
  Text,
  Image,
  ImageViaText,
  TextPlusImage,
  Mix,
  ImageViaTextPlus,
  MixPlus,
  Align,
  TextWarmup,
};

enum class SegmentKind { Prompt, ConvertPrompt, ConvertedText, Cot, Answer };

enum class Modality { TextInput, ImageInput };

inline constexpr std::array kAllTasks = {
    TaskKind::ConsecutiveTableReadout, TaskKind::TableReadout, TaskKind::GridNavigation,
    TaskKind::VisualAnalogy, TaskKind::PatternHeldoutVisualAnalogy};

inline constexpr std::array kAllSupervisionKinds = {
    SupervisionKind::Text,    SupervisionKind::Image,           SupervisionKind::ImageViaText,
    SupervisionKind::TextPlusImage, SupervisionKind::Mix,       SupervisionKind::ImageViaTextPlus,
    SupervisionKind::MixPlus, SupervisionKind::Align,           SupervisionKind::TextWarmup};

std::string_view to_string(Difficulty d);
std::string_view to_string(TaskKind t);
std::string_view to_string(SupervisionKind s);
std::string_view to_string(SegmentKind k);
std::string_view to_string(Modality m);

// Parsers accept the canonical names above plus a few short aliases
// ("grid", "table", "mix+"...). They throw InvalidArgument otherwise.
Difficulty parse_difficulty(std::string_view s);
TaskKind parse_task(std::string_view s);
SupervisionKind parse_supervision(std::string_view s);
SegmentKind parse_segment_kind(std::string_view s);
Modality parse_modality(std::string_view s);

/// Medium exists only for the consecutive readout task.
bool difficulty_valid_for(TaskKind task, Difficulty d);
void require_difficulty_valid(TaskKind task, Difficulty d);

/// "+" kinds add hard-text records to the simple mixture.
constexpr bool includes_hard_text(SupervisionKind s) {
  return s == SupervisionKind::ImageViaTextPlus || s == SupervisionKind::MixPlus ||
         s == SupervisionKind::TextWarmup;
}

constexpr bool is_table_task(TaskKind t) {
  return t == TaskKind::ConsecutiveTableReadout || t == TaskKind::TableReadout;
}

constexpr bool is_analogy_task(TaskKind t) {
  return t == TaskKind::VisualAnalogy || t == TaskKind::PatternHeldoutVisualAnalogy;
}

}  // namespace s2h
