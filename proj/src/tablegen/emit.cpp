#include <fmt/format.h>

#include <numeric>
#include <set>

#include "json.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/record.hpp"
#include "s2h/core/text.hpp"
#include "s2h/tablegen/tablegen.hpp"

namespace s2h::table {

namespace {

std::string cell_ref(const TableInstance& inst, Coord c) {
  return fmt::format("row {}, column {} (row name {}, column name {})", c.row, c.col,
                     inst.row_names.at(c.row - 1), inst.col_names.at(c.col - 1));
}

}  // namespace

std::string table_prompt(const TableInstance& inst, bool with_table) {
  const Coord s = inst.path.front();
  const Coord e = inst.path.back();
  std::string p;
  if (inst.task == TaskKind::ConsecutiveTableReadout) {
    p = fmt::format(
        "The table has {} rows and {} columns, with two highlighted cells. Read every number from "
        "the start cell at {} to the end cell at {}. If the end cell is in a lower row, move left "
        "to right within each row and continue at the first column of the next row. If it is in a "
        "higher row, move right to left within each row and continue at the last column of the "
        "row above. If both cells share a row, move directly along that row. List the numbers in "
        "order and give their sum.",
        inst.n_rows, inst.n_cols, cell_ref(inst, s), cell_ref(inst, e));
  } else {
    p = fmt::format(
        "The table has {} rows and {} columns. A path of highlighted cells starts at {} and ends "
        "at {}. Read the numbers along the highlighted path from start to end. List the numbers "
        "in order and give their sum.",
        inst.n_rows, inst.n_cols, cell_ref(inst, s), cell_ref(inst, e));
  }
  if (with_table) {
    p += "\n\n";
    p += emit_table_text(inst);
  }
  return p;
}

std::string emit_table_text(const TableInstance& inst) {
  const auto hl = inst.highlighted();
  const std::set<Coord> marked(hl.begin(), hl.end());
  std::string out = "\\begin{tabular}{|c|";
  for (int c = 0; c < inst.n_cols; ++c) out += "c|";
  out += "}\n\\hline\n";
  for (int c = 0; c < inst.n_cols; ++c) out += " & " + inst.col_names[static_cast<std::size_t>(c)];
  out += " \\\\\n\\hline\n";
  for (int r = 1; r <= inst.n_rows; ++r) {
    out += inst.row_names[static_cast<std::size_t>(r - 1)];
    for (int c = 1; c <= inst.n_cols; ++c) {
      std::string word(number_word(inst.value({r, c})));
      out += " & ";
      out += marked.contains({r, c}) ? "\\hl{" + word + "}" : word;
    }
    out += " \\\\\n\\hline\n";
  }
  out += "\\end{tabular}";
  return out;
}

CotAnswer emit_table_cot(const TableInstance& inst) {
  std::string cot(kCotHeader);
  std::vector<std::string> words;
  for (std::size_t i = 0; i < inst.path.size(); ++i) {
    const Coord c = inst.path[i];
    std::string word(number_word(inst.value(c)));
    cot += fmt::format("\nStep {}: {} has value {}.", i + 1, cell_ref(inst, c), word);
    words.push_back(std::move(word));
  }
  const auto vals = inst.path_values();
  const int sum = std::accumulate(vals.begin(), vals.end(), 0);
  std::string answer =
      fmt::format("{} The numbers are {}. Their sum is {}.", kAnswerHeader, join(words, ", "), sum);
  return {std::move(cot), std::move(answer)};
}

std::string to_json(const TableInstance& inst) {
  nlohmann::ordered_json j;
  j["task"] = to_string(inst.task);
  j["difficulty"] = to_string(inst.difficulty);
  j["n_rows"] = inst.n_rows;
  j["n_cols"] = inst.n_cols;
  j["row_names"] = inst.row_names;
  j["col_names"] = inst.col_names;
  j["values"] = inst.values;
  auto path = nlohmann::ordered_json::array();
  for (Coord c : inst.path) path.push_back({c.row, c.col});
  j["path"] = std::move(path);
  j["segments"] = inst.pattern_meta.segments;
  auto pats = nlohmann::ordered_json::array();
  for (PathPattern p : inst.pattern_meta.patterns) pats.push_back(to_string(p));
  j["patterns"] = std::move(pats);
  return j.dump();
}

TableInstance table_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    TableInstance inst;
    inst.task = parse_task(j.at("task").get<std::string>());
    inst.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
    inst.n_rows = j.at("n_rows").get<int>();
    inst.n_cols = j.at("n_cols").get<int>();
    inst.row_names = j.at("row_names").get<std::vector<std::string>>();
    inst.col_names = j.at("col_names").get<std::vector<std::string>>();
    inst.values = j.at("values").get<std::vector<std::vector<int>>>();
    for (const auto& c : j.at("path")) inst.path.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
    inst.pattern_meta.segments = j.at("segments").get<int>();
    for (const auto& p : j.at("patterns"))
      inst.pattern_meta.patterns.push_back(p.get<std::string>() == "spiral" ? PathPattern::Spiral
                                                                            : PathPattern::Sinusoidal);
    if (static_cast<int>(inst.values.size()) != inst.n_rows || inst.path.empty())
      throw ParseError("table instance: inconsistent shape");
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("table instance: ") + e.what());
  }
}

}  // namespace s2h::table
