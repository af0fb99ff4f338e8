#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "s2h/core/error.hpp"
#include "s2h/core/text.hpp"
#include "s2h/evaluator/evaluator.hpp"

namespace s2h::eval {

using nlohmann::ordered_json;

Verdict evaluate(const Generation& gen, const tasks::Instance& gold) {
  if (is_table_task(gold.task)) return eval_table(gen, gold.table());
  if (gold.task == TaskKind::GridNavigation) return eval_grid(gen, gold.grid().instance);
  return eval_analogy(gen, gold.analogy());
}

std::vector<Generation> parse_generations(std::string_view jsonl) {
  std::vector<Generation> out;
  std::size_t lineno = 0;
  for (std::string_view line : split_lines(jsonl)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({j.at("id").get<std::string>(), j.at("text").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(fmt::format("generations line {}: {}", lineno, e.what()));
    }
  }
  return out;
}

std::vector<Generation> read_generations(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_generations(ss.str());
}

ExampleResult evaluate_example(const Generation& gen, const SupervisedRecord& gold) {
  if (gen.id != gold.id()) throw InvalidArgument(fmt::format("generation id {} does not match gold {}", gen.id, gold.id()));
  ExampleResult r;
  r.gen = gen;
  r.instance = tasks::instance_from_record(gold);
  r.verdict = evaluate(gen, r.instance);
  if (const Segment* conv = gold.find(SegmentKind::ConvertedText)) r.conversion_correct = conversion_accuracy(gen, conv->text);
  if (is_analogy_task(gold.task())) r.audit = analogy_cot_audit(gen, r.instance.analogy());
  return r;
}

std::string verdict_jsonl(const ExampleResult& r) {
  ordered_json j;
  j["id"] = r.gen.id;
  j["task"] = to_string(r.instance.task);
  j["difficulty"] = to_string(r.instance.difficulty);
  j["correct"] = r.verdict.correct;
  j["channel"] = to_string(r.verdict.channel);
  ordered_json d = ordered_json::object();
  for (const auto& [k, v] : r.verdict.details) d[k] = v;
  j["details"] = std::move(d);
  if (r.verdict.parse_error) j["parse_error"] = *r.verdict.parse_error;
  if (r.conversion_correct) j["conversion_correct"] = *r.conversion_correct;
  if (r.audit) {
    ordered_json a = ordered_json::object();
    for (const auto& name : analogy_audit_flags()) a[name] = r.audit->flags.at(name);
    j["audit"] = std::move(a);
  }
  return j.dump();
}

namespace {

double ratio(std::size_t a, std::size_t b) { return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0; }

ordered_json task_summary(TaskKind task, const std::vector<const ExampleResult*>& rs) {
  ordered_json j;
  std::size_t correct = 0, conv_n = 0, conv_ok = 0;
  std::map<Difficulty, std::pair<std::size_t, std::size_t>> by_diff;
  for (const ExampleResult* r : rs) {
    correct += r->verdict.correct;
    auto& [n, c] = by_diff[r->instance.difficulty];
    ++n;
    c += r->verdict.correct;
    if (r->conversion_correct) {
      ++conv_n;
      conv_ok += *r->conversion_correct;
    }
  }
  j["n"] = rs.size();
  j["accuracy"] = ratio(correct, rs.size());
  ordered_json diffs = ordered_json::object();
  for (const auto& [d, nc] : by_diff) diffs[std::string(to_string(d))] = {{"n", nc.first}, {"accuracy", ratio(nc.second, nc.first)}};
  j["by_difficulty"] = std::move(diffs);
  if (conv_n) j["conversion_accuracy"] = ratio(conv_ok, conv_n);

  if (is_table_task(task)) {
    std::vector<std::pair<Generation, table::TableInstance>> batch;
    for (const ExampleResult* r : rs) batch.emplace_back(r->gen, r->instance.table());
    const TableFailureMetrics m = table_failure_metrics(batch);
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["mean_first_error_index"] = m.mean_first_error_index;
    j["frac_early_error"] = m.frac_early_error;
    j["frac_early_error_overall"] = m.frac_early_error_overall;
  } else if (task == TaskKind::GridNavigation) {
    std::vector<std::pair<Generation, grid::GridInstance>> batch;
    for (const ExampleResult* r : rs) batch.emplace_back(r->gen, r->instance.grid().instance);
    const GridSubtaskMetrics m = grid_subtask_metrics(batch);
    j["src_dst_parse_acc"] = m.src_dst_parse_acc;
    j["reaches_destination_frac"] = m.reaches_destination_frac;
    j["objects_collected_frac"] = m.objects_collected_frac;
    j["obstacles_passed_mean"] = m.obstacles_passed_mean;
  } else {
    std::size_t lenient = 0;
    std::map<std::string, std::size_t> errors;
    for (const ExampleResult* r : rs) {
      lenient += r->verdict.details.at("lenient_correct") != 0;
      if (r->audit)
        for (const auto& [k, v] : r->audit->flags) errors[k] += v;
    }
    j["lenient_accuracy"] = ratio(lenient, rs.size());
    ordered_json rates = ordered_json::object();
    for (const auto& name : analogy_audit_flags()) rates[name] = ratio(errors[name], rs.size());
    j["audit_error_rates"] = std::move(rates);
  }
  return j;
}

}  // namespace

std::string aggregate_json(const std::vector<ExampleResult>& results) {
  std::map<TaskKind, std::vector<const ExampleResult*>> groups;
  std::size_t correct = 0;
  for (const auto& r : results) {
    groups[r.instance.task].push_back(&r);
    correct += r.verdict.correct;
  }
  ordered_json j;
  j["n"] = results.size();
  j["accuracy"] = ratio(correct, results.size());
  ordered_json tasks = ordered_json::object();
  for (const auto& [task, rs] : groups) tasks[std::string(to_string(task))] = task_summary(task, rs);
  j["tasks"] = std::move(tasks);
  return j.dump(2);
}

}  // namespace s2h::eval
