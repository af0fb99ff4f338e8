#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "s2h/core/types.hpp"

namespace s2h {

/// The fixed conversion prompt inserted before converted text.
std::string_view convert_prompt();

/// Marker lines that open the reasoning trace and the final answer in every
/// task template; evaluator parsers anchor on them.
inline constexpr std::string_view kCotHeader = "Step-by-step reasoning:";
inline constexpr std::string_view kAnswerHeader = "Final answer:";

struct Segment {
  SegmentKind kind;
  std::string text;
  bool supervised = false;

  bool operator==(const Segment&) const = default;
};

/// Non-prompt segments with content carry loss; prompts never do.
constexpr bool is_supervised(SegmentKind kind, bool empty) {
  return kind != SegmentKind::Prompt && !empty;
}

using Metadata = std::map<std::string, std::string>;

/// One training example. Immutable: the constructor validates segment order,
/// the conversion prompt, modality/image consistency, recomputes the
/// supervised mask and derives the id from the canonical serialization.
class SupervisedRecord {
 public:
  SupervisedRecord(TaskKind task, Difficulty difficulty, Modality modality,
                   std::optional<std::string> image_path, std::vector<Segment> segments,
                   Metadata metadata);

  const std::string& id() const { return id_; }
  TaskKind task() const { return task_; }
  Difficulty difficulty() const { return difficulty_; }
  Modality modality() const { return modality_; }
  const std::optional<std::string>& image_path() const { return image_path_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const Metadata& metadata() const { return metadata_; }

  const Segment* find(SegmentKind kind) const;
  std::string meta(const std::string& key, std::string fallback = {}) const;

  /// Concatenation of the supervised segments: the gold model output.
  std::string output_text() const;

  /// One JSONL line (no trailing newline), keys in canonical order.
  std::string to_jsonl() const;

  bool operator==(const SupervisedRecord& o) const { return to_jsonl() == o.to_jsonl(); }

 private:
  std::string canonical_body() const;

  std::string id_;
  TaskKind task_;
  Difficulty difficulty_;
  Modality modality_;
  std::optional<std::string> image_path_;
  std::vector<Segment> segments_;
  Metadata metadata_;
};

/// Parse one JSONL line; throws ParseError on schema violations, including
/// an id that does not match the content.
SupervisedRecord parse_record(std::string_view line);

std::vector<SupervisedRecord> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<SupervisedRecord>& records);
std::string to_jsonl(const std::vector<SupervisedRecord>& records);

}  // namespace s2h
