#include <map>
#include <numeric>

#include "cursor.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/record.hpp"
#include "s2h/core/text.hpp"
#include "s2h/evaluator/evaluator.hpp"

namespace s2h::eval {

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::FromCot: return "cot";
    case Channel::FromAnswer: return "answer";
    case Channel::Simulated: return "simulated";
    case Channel::Pattern: return "pattern";
  }
  return "?";
}

Sections split_sections(const std::string& text) {
  Sections out;
  const auto cot = text.find(kCotHeader);
  const auto ans = text.rfind(kAnswerHeader);
  if (ans != std::string::npos) out.answer = text.substr(ans);
  if (cot != std::string::npos) {
    const auto begin = cot + kCotHeader.size();
    const auto end = ans != std::string::npos && ans > cot ? ans : text.size();
    out.cot = text.substr(begin, end - begin);
  }
  const auto conv = text.find(convert_prompt());
  if (conv != std::string::npos) {
    const auto begin = conv + convert_prompt().size();
    const auto end = cot != std::string::npos && cot >= begin ? cot : std::string::npos;
    if (end != std::string::npos) out.converted = text.substr(begin, end - begin);
  }
  return out;
}

bool conversion_accuracy(const Generation& gen, const std::string& gold_text) {
  const Sections s = split_sections(gen.text);
  if (!s.converted) return false;
  return normalize_whitespace(*s.converted) == normalize_whitespace(gold_text);
}

namespace {

// "Step i: row r, column c (row name X, column name Y) has value WORD."
std::optional<ListedCell> parse_step(std::string_view line) {
  detail::Cursor c{trim(line)};
  if (!c.lit("Step ") || !c.integer() || !c.lit(": row ")) return std::nullopt;
  const auto r = c.integer();
  if (!r || !c.lit(", column ")) return std::nullopt;
  const auto col = c.integer();
  if (!col || !c.lit(" (row name ") || !c.until(", column name ") || !c.until(") has value ")) return std::nullopt;
  const auto word = c.until(".");
  if (!word || !c.done()) return std::nullopt;
  const auto v = parse_number_word(*word);
  if (!v) return std::nullopt;
  return ListedCell{{static_cast<int>(*r), static_cast<int>(*col)}, *v};
}

std::vector<int> values_of(const std::vector<ListedCell>& cells) {
  std::vector<int> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back(c.value);
  return out;
}

}  // namespace

std::optional<std::vector<ListedCell>> parse_table_cot(const std::string& text) {
  const Sections s = split_sections(text);
  if (!s.cot) return std::nullopt;
  std::vector<ListedCell> out;
  for (std::string_view line : split_lines(*s.cot))
    if (auto cell = parse_step(line)) out.push_back(*cell);
  return out;
}

std::optional<TableAnswer> parse_table_answer(const std::string& text) {
  const Sections s = split_sections(text);
  if (!s.answer) return std::nullopt;
  detail::Cursor c{trim(*s.answer)};
  if (!c.lit(kAnswerHeader) || !c.lit(" The numbers are ")) return std::nullopt;
  const auto list = c.until(". Their sum is ");
  if (!list) return std::nullopt;
  TableAnswer out;
  for (std::string_view w : split(*list, ", ")) {
    const auto v = parse_number_word(w);
    if (!v) return std::nullopt;
    out.values.push_back(*v);
  }
  const auto sum = c.integer();
  if (!sum || !c.lit(".") || !c.done()) return std::nullopt;
  out.sum = *sum;
  return out;
}

Verdict eval_table(const Generation& gen, const table::TableInstance& gold) {
  const std::vector<int> want = gold.path_values();
  const long long want_sum = std::accumulate(want.begin(), want.end(), 0LL);
  const auto cot = parse_table_cot(gen.text);
  const auto ans = parse_table_answer(gen.text);
  const bool cot_ok = cot && values_of(*cot) == want;
  const bool ans_ok = ans && ans->values == want && ans->sum == want_sum;

  Verdict v;
  v.details["cot_correct"] = cot_ok;
  v.details["answer_correct"] = ans_ok;
  v.details["listed"] = cot ? static_cast<double>(cot->size()) : 0.0;
  if (gold.task == TaskKind::ConsecutiveTableReadout) {
    v.correct = cot_ok;
    v.channel = Channel::FromCot;
  } else {
    v.correct = cot_ok || ans_ok;
    v.channel = cot_ok ? Channel::FromCot : Channel::FromAnswer;
  }
  if ((!cot || cot->empty()) && !ans) v.parse_error = "no CoT step and no final-answer line follow the template";
  return v;
}

std::size_t first_error_index(const std::vector<int>& gold, const std::vector<int>& gen) {
  std::size_t i = 0;
  while (i < gold.size() && i < gen.size() && gold[i] == gen[i]) ++i;
  return i;
}

TableFailureMetrics table_failure_metrics(const std::vector<std::pair<Generation, table::TableInstance>>& batch,
                                          std::size_t early_threshold) {
  if (batch.empty()) throw InvalidArgument("table failure metrics need at least one generation");
  TableFailureMetrics m;
  std::size_t early = 0, fei_sum = 0;
  for (const auto& [gen, gold] : batch) {
    ++m.n;
    m.highlighted += gold.path.size();
    const std::vector<int> want = gold.path_values();
    std::vector<int> listed_values;
    const auto cot = parse_table_cot(gen.text);
    if (cot && !cot->empty()) {
      std::map<Coord, std::size_t> index;
      for (std::size_t j = 0; j < gold.path.size(); ++j) index.emplace(gold.path[j], j);
      std::vector<bool> used(gold.path.size(), false);
      for (const ListedCell& c : *cot) {
        auto it = index.find(c.cell);
        if (it == index.end() || used[it->second] || want[it->second] != c.value) continue;
        used[it->second] = true;
        ++m.correctly_listed;
      }
      listed_values = values_of(*cot);
    } else if (const auto ans = parse_table_answer(gen.text)) {
      std::map<int, std::size_t> remaining;
      for (int x : want) ++remaining[x];
      for (int x : ans->values)
        if (remaining[x] > 0) {
          --remaining[x];
          ++m.correctly_listed;
        }
      listed_values = ans->values;
    }
    m.listed += listed_values.size();
    if (!eval_table(gen, gold).correct) {
      ++m.n_incorrect;
      const std::size_t fei = first_error_index(want, listed_values);
      fei_sum += fei;
      if (fei < early_threshold) ++early;
    }
  }
  m.precision = m.listed ? static_cast<double>(m.correctly_listed) / static_cast<double>(m.listed) : 0.0;
  m.recall = static_cast<double>(m.correctly_listed) / static_cast<double>(m.highlighted);
  if (m.n_incorrect) {
    m.mean_first_error_index = static_cast<double>(fei_sum) / static_cast<double>(m.n_incorrect);
    m.frac_early_error = static_cast<double>(early) / static_cast<double>(m.n_incorrect);
  }
  m.frac_early_error_overall = static_cast<double>(early) / static_cast<double>(m.n);
  return m;
}

}  // namespace s2h::eval
