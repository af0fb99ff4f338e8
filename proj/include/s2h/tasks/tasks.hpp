#pragma once

// Task-agnostic front end over the three generators: one instance type,
// prompts, gold outputs, records in each supervision form, and images.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "s2h/analogygen/analogygen.hpp"
#include "s2h/core/record.hpp"
#include "s2h/gridgen/gridgen.hpp"
#include "s2h/render/render.hpp"
#include "s2h/tablegen/tablegen.hpp"

namespace s2h::tasks {

/// How one instance is presented: text input, image input, or image input
/// whose gold output first converts the image to text.
enum class Form { Text, Image, ImageViaText };
std::string_view to_string(Form f);
Form parse_form(std::string_view s);

struct GridData {
  grid::GridInstance instance;
  grid::DfsTrace trace;
  bool operator==(const GridData&) const = default;
};

struct Instance {
  TaskKind task = TaskKind::TableReadout;
  Difficulty difficulty = Difficulty::Simple;
  std::uint64_t seed = 0;
  std::variant<table::TableInstance, GridData, analogy::AnalogyPuzzle> data;

  const table::TableInstance& table() const { return std::get<table::TableInstance>(data); }
  const GridData& grid() const { return std::get<GridData>(data); }
  const analogy::AnalogyPuzzle& analogy() const { return std::get<analogy::AnalogyPuzzle>(data); }
  bool operator==(const Instance&) const = default;
};

struct Options {
  analogy::HeldoutSet heldout = analogy::default_heldout();
  analogy::TextMode text_mode = analogy::TextMode::Lossy;
};

Instance generate(TaskKind task, Difficulty difficulty, std::uint64_t seed, const Options& opts = {});

/// Gold generator instance as JSON; stored in record metadata under "instance".
std::string instance_json(const Instance& inst);
Instance instance_from_json(TaskKind task, const std::string& json);
/// Rebuild the instance a gold record was made from.
Instance instance_from_record(const SupervisedRecord& rec);

/// x_t: the LaTeX table/grid or the analogy description.
std::string text_form(const Instance& inst, const Options& opts = {});
std::string prompt(const Instance& inst, bool text_input, const Options& opts = {});

struct Gold {
  std::string cot;
  std::string answer;
};
Gold gold(const Instance& inst);

/// Image path relative to the dataset root, unique per instance.
std::string image_name(const Instance& inst);

SupervisedRecord make_record(const Instance& inst, Form form, const Options& opts = {});

std::vector<std::uint8_t> render(const Instance& inst, const render::RenderStyle& style);

}  // namespace s2h::tasks
