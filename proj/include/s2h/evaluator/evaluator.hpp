#pragma once

// Scores model generations against the generator's own instances. Parsers are
// anchored to the CoT and answer templates the generators emit.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "s2h/tasks/tasks.hpp"

namespace s2h::eval {

struct Generation {
  std::string id;  // id of the gold record
  std::string text;
};

enum class Channel { FromCot, FromAnswer, Simulated, Pattern };
std::string_view to_string(Channel c);

struct Verdict {
  bool correct = false;
  Channel channel = Channel::FromAnswer;
  std::map<std::string, double> details;
  std::optional<std::string> parse_error;
};

/// The parts of a generation the parsers look at. `cot` runs from the CoT
/// header to the final-answer header; `answer` from the last answer header
/// to the end.
struct Sections {
  std::optional<std::string> converted;
  std::optional<std::string> cot;
  std::optional<std::string> answer;
};
Sections split_sections(const std::string& text);

// Table readout ---------------------------------------------------------

struct ListedCell {
  Coord cell;
  int value = 0;
  bool operator==(const ListedCell&) const = default;
};

/// Step lines of the CoT, in order. Lines that do not follow the template
/// are skipped; nullopt when there is no CoT section at all.
std::optional<std::vector<ListedCell>> parse_table_cot(const std::string& text);

struct TableAnswer {
  std::vector<int> values;
  long long sum = 0;
};
std::optional<TableAnswer> parse_table_answer(const std::string& text);

/// Best of two channels: the CoT value sequence, or the answer list together
/// with its stated sum. Consecutive readout is scored on the CoT only.
Verdict eval_table(const Generation& gen, const table::TableInstance& gold);

struct TableFailureMetrics {
  double precision = 0;
  double recall = 0;
  double mean_first_error_index = 0;  // over incorrect generations
  double frac_early_error = 0;        // over incorrect generations
  double frac_early_error_overall = 0;
  std::size_t n = 0;
  std::size_t n_incorrect = 0;
  std::size_t listed = 0;
  std::size_t correctly_listed = 0;
  std::size_t highlighted = 0;
};

/// Values read correctly before the first wrong one.
std::size_t first_error_index(const std::vector<int>& gold, const std::vector<int>& gen);

/// Correctly listed cells: (row, column, value) triples matched once each
/// against the path when the CoT parses, otherwise a multiset match of the
/// answer values. An error is early when the first wrong value falls within
/// the first `early_threshold` numbers. Throws InvalidArgument on an empty batch.
TableFailureMetrics table_failure_metrics(const std::vector<std::pair<Generation, table::TableInstance>>& batch,
                                          std::size_t early_threshold = 12);

// Grid navigation -------------------------------------------------------

std::optional<std::vector<Direction>> parse_grid_answer(const std::string& text, std::string* error = nullptr);

/// Simulate the answer moves: correct iff the walk ends on the destination
/// with every object collected and no obstacle entered.
Verdict eval_grid(const Generation& gen, const grid::GridInstance& gold);

struct GridSubtaskMetrics {
  double src_dst_parse_acc = 0;
  double reaches_destination_frac = 0;
  double objects_collected_frac = 0;
  double obstacles_passed_mean = 0;
  std::size_t n = 0;
};
GridSubtaskMetrics grid_subtask_metrics(const std::vector<std::pair<Generation, grid::GridInstance>>& batch);

// Visual analogy --------------------------------------------------------

struct AnalogyAnswer {
  std::optional<std::string> example1, example2;  // "(domain, relation)"
  std::array<std::optional<std::string>, 4> options;
  std::optional<char> letter;
};
std::optional<AnalogyAnswer> parse_analogy_answer(const std::string& text);

/// Strict: both example patterns, the four option patterns and the letter
/// must match. details["lenient_correct"] scores the letter alone.
Verdict eval_analogy(const Generation& gen, const analogy::AnalogyPuzzle& gold);

/// Error flags for the reasoning steps of an analogy CoT; true marks an error.
struct AnalogyAudit {
  std::map<std::string, bool> flags;
};
/// Flag names in report order.
const std::vector<std::string>& analogy_audit_flags();
AnalogyAudit analogy_cot_audit(const Generation& gen, const analogy::AnalogyPuzzle& gold);

// Conversion ------------------------------------------------------------

/// The converted span between the echoed conversion prompt and the CoT
/// header matches the gold text up to whitespace runs.
bool conversion_accuracy(const Generation& gen, const std::string& gold_text);

// Batches ---------------------------------------------------------------

Verdict evaluate(const Generation& gen, const tasks::Instance& gold);

std::vector<Generation> read_generations(const std::string& path);
std::vector<Generation> parse_generations(std::string_view jsonl);

struct ExampleResult {
  Generation gen;
  tasks::Instance instance;
  Verdict verdict;
  std::optional<bool> conversion_correct;  // gold record has a converted-text segment
  std::optional<AnalogyAudit> audit;       // analogy tasks only
};

/// Everything the batch report needs for one generation. Throws
/// InvalidArgument when the ids differ.
ExampleResult evaluate_example(const Generation& gen, const SupervisedRecord& gold);

/// Per-example verdict line: id, task, difficulty, correct, channel, details.
std::string verdict_jsonl(const ExampleResult& r);

/// Aggregate metrics grouped by task. Table groups add the failure metrics,
/// grid groups the subtask metrics, analogy groups lenient accuracy and the
/// audit error rates.
std::string aggregate_json(const std::vector<ExampleResult>& results);

}  // namespace s2h::eval
