#include <fmt/format.h>

#include "cursor.hpp"
#include "s2h/core/record.hpp"
#include "s2h/core/text.hpp"
#include "s2h/evaluator/evaluator.hpp"

namespace s2h::eval {

namespace {

constexpr std::string_view kLetters = "ABCD";

std::string option_label(std::size_t i) { return fmt::format("Option {}", kLetters[i]); }

// Everything the CoT template states, keyed by line label.
struct ParsedCot {
  using Fields = std::map<std::string, std::string>;
  std::map<std::string, Fields> panels;             // "Example 1, panel 2", "Query, panel 1", "Option A"
  std::map<std::string, std::string> domain_values;  // "Example 1|shape type" -> "a / b / c"
  std::map<std::string, std::string> domain_verdicts;
  std::map<std::string, std::string> follows;  // label -> "(domain, relation)"
  std::map<std::string, std::string> matches;  // option label -> "matches" | "does not match"
  std::optional<std::string> domains;          // "the same domain" | "different domains"
  std::optional<std::string> relation;
  std::optional<char> letter;
  bool operator==(const ParsedCot&) const = default;
};

std::optional<std::string> read_label(detail::Cursor& c) {
  for (std::string_view head : {"Example 1", "Example 2"})
    if (c.lit(head)) return std::string(head);
  if (c.lit("Query")) return std::string("Query");
  for (std::size_t i = 0; i < 4; ++i)
    if (c.lit(option_label(i))) return option_label(i);
  return std::nullopt;
}

ParsedCot::Fields parse_fields(std::string_view body) {
  ParsedCot::Fields f;
  if (body == "empty") return f;
  for (std::string_view part : split(body, " | ")) {
    const auto colon = part.find(": ");
    if (colon == std::string_view::npos) continue;
    f[std::string(part.substr(0, colon))] = std::string(part.substr(colon + 2));
  }
  return f;
}

void parse_line(std::string_view line, ParsedCot& out) {
  detail::Cursor c{trim(line)};
  if (c.lit("The answer is ")) {
    if (c.s.size() == 2 && c.s[1] == '.' && kLetters.find(c.s[0]) != std::string_view::npos) out.letter = c.s[0];
    return;
  }
  if (c.lit("The examples use ")) {
    const auto dom = c.until(" and share the relation ");
    const auto rel = c.until(".");
    if (dom && rel && c.done()) {
      out.domains = std::string(*dom);
      out.relation = std::string(*rel);
    }
    return;
  }
  const auto label = read_label(c);
  if (!label) return;
  if (c.lit(" follows ")) {
    const auto pat = c.group();
    if (!pat) return;
    if (c.lit(".") && c.done()) {
      out.follows[*label] = std::string(*pat);
    } else if (c.lit(", which ")) {
      std::string verdict;
      if (c.lit("matches ")) verdict = "matches";
      else if (c.lit("does not match ")) verdict = "does not match";
      else return;
      if (!c.until(".") || !c.done()) return;
      out.follows[*label] = std::string(*pat);
      out.matches[*label] = verdict;
    }
    return;
  }
  if (*label == "Query" || label->starts_with("Example")) {
    if (c.lit(", panel ")) {
      const auto i = c.integer();
      if (!i || !c.lit(": ")) return;
      out.panels[fmt::format("{}, panel {}", *label, *i)] = parse_fields(c.s);
      return;
    }
  } else if (c.lit(": ")) {
    out.panels[*label] = parse_fields(c.s);
    return;
  }
  if (!c.lit(", ")) return;
  const auto domain = c.until(": ");
  if (!domain) return;
  const auto vals = c.until(" -> ");
  if (!vals || !c.s.ends_with('.')) return;
  const std::string key = *label + "|" + std::string(*domain);
  out.domain_values[key] = std::string(*vals);
  out.domain_verdicts[key] = std::string(c.s.substr(0, c.s.size() - 1));
}

ParsedCot parse_cot(const std::string& text) {
  ParsedCot out;
  const Sections s = split_sections(text);
  if (!s.cot) return out;
  for (std::string_view line : split_lines(*s.cot)) parse_line(line, out);
  return out;
}

ParsedCot gold_cot(const analogy::AnalogyPuzzle& gold) {
  return parse_cot(analogy::emit_analogy_cot(gold).cot);
}

std::string_view domain_of(std::string_view pattern) {
  detail::Cursor c{pattern};
  if (!c.lit("(")) return {};
  return c.until(", ").value_or(std::string_view{});
}

std::string_view relation_of(std::string_view pattern) {
  const auto comma = pattern.find(", ");
  if (comma == std::string_view::npos || !pattern.ends_with(')')) return {};
  return pattern.substr(comma + 2, pattern.size() - comma - 3);
}

struct Expected {
  std::string example1, example2;
  std::array<std::string, 4> options;
  char letter;
};

Expected expected(const analogy::AnalogyPuzzle& gold) {
  Expected e;
  e.example1 = analogy::to_string(gold.latent.example1);
  e.example2 = analogy::to_string(gold.latent.example2);
  const auto ops = gold.option_patterns();
  for (std::size_t i = 0; i < 4; ++i) e.options[i] = analogy::to_string(ops[i]);
  e.letter = kLetters[static_cast<std::size_t>(gold.answer_index)];
  return e;
}

bool strict_match(const AnalogyAnswer& a, const Expected& e) {
  if (a.example1 != e.example1 || a.example2 != e.example2 || a.letter != e.letter) return false;
  for (std::size_t i = 0; i < 4; ++i)
    if (a.options[i] != e.options[i]) return false;
  return true;
}

AnalogyAnswer answer_from_cot(const ParsedCot& p) {
  AnalogyAnswer a;
  auto get = [&](const std::string& k) -> std::optional<std::string> {
    auto it = p.follows.find(k);
    return it == p.follows.end() ? std::nullopt : std::optional(it->second);
  };
  a.example1 = get("Example 1");
  a.example2 = get("Example 2");
  for (std::size_t i = 0; i < 4; ++i) a.options[i] = get(option_label(i));
  a.letter = p.letter;
  return a;
}

// Attribute keys of the inline panel form, grouped as in the failure table:
// shape and line type count as "type", shape and line color as "color".
std::string_view attribute_group(std::string_view key) {
  if (key == "type" || key == "line type") return "type";
  if (key == "color" || key == "line color") return "color";
  if (key == "size" || key == "quantity" || key == "position") return key;
  return {};
}

constexpr std::array<std::string_view, 5> kAttributes = {"type", "color", "size", "quantity", "position"};

void audit_panels(const ParsedCot& gen, const ParsedCot& gold, std::string_view prefix, std::string_view scope,
                  std::map<std::string, bool>& flags) {
  for (const auto& [label, want] : gold.panels) {
    if (!label.starts_with(prefix)) continue;
    auto it = gen.panels.find(label);
    if (it == gen.panels.end()) {
      if (want.empty()) flags[fmt::format("{}_type", scope)] = true;
      for (const auto& [k, v] : want)
        if (auto g = attribute_group(k); !g.empty()) flags[fmt::format("{}_{}", scope, g)] = true;
      continue;
    }
    const auto& got = it->second;
    auto check = [&](const std::string& k) {
      auto a = want.find(k);
      auto b = got.find(k);
      const bool same = a != want.end() && b != got.end() ? a->second == b->second : a == want.end() && b == got.end();
      if (!same)
        if (auto g = attribute_group(k); !g.empty()) flags[fmt::format("{}_{}", scope, g)] = true;
    };
    for (const auto& kv : want) check(kv.first);
    for (const auto& kv : got) check(kv.first);
  }
}

}  // namespace

std::optional<AnalogyAnswer> parse_analogy_answer(const std::string& text) {
  const Sections s = split_sections(text);
  if (!s.answer) return std::nullopt;
  detail::Cursor c{trim(*s.answer)};
  if (!c.lit(kAnswerHeader)) return std::nullopt;
  AnalogyAnswer a;
  auto pattern = [&](std::string_view head) -> std::optional<std::string> {
    if (!c.lit(head)) return std::nullopt;
    auto g = c.group();
    if (!g || !c.lit(".")) return std::nullopt;
    return std::string(*g);
  };
  if (!(a.example1 = pattern(" Example 1: "))) return std::nullopt;
  if (!(a.example2 = pattern(" Example 2: "))) return std::nullopt;
  for (std::size_t i = 0; i < 4; ++i)
    if (!(a.options[i] = pattern(" " + option_label(i) + ": "))) return std::nullopt;
  if (!c.lit(" The answer is ") || c.s.size() != 2 || c.s[1] != '.' ||
      kLetters.find(c.s[0]) == std::string_view::npos)
    return std::nullopt;
  a.letter = c.s[0];
  return a;
}

Verdict eval_analogy(const Generation& gen, const analogy::AnalogyPuzzle& gold) {
  const Expected e = expected(gold);
  const auto ans = parse_analogy_answer(gen.text);
  const AnalogyAnswer from_cot = answer_from_cot(parse_cot(gen.text));
  const bool ans_ok = ans && strict_match(*ans, e);
  const bool cot_ok = strict_match(from_cot, e);
  const std::optional<char> letter = ans ? ans->letter : from_cot.letter;

  Verdict v;
  v.channel = Channel::Pattern;
  v.correct = ans_ok || cot_ok;
  v.details["answer_correct"] = ans_ok;
  v.details["cot_correct"] = cot_ok;
  v.details["lenient_correct"] = letter == e.letter;
  if (!ans && !from_cot.letter) v.parse_error = "no final answer follows the template";
  return v;
}

const std::vector<std::string>& analogy_audit_flags() {
  static const std::vector<std::string> names = {
      "examples_type",   "examples_color",    "examples_size",    "examples_quantity", "examples_position",
      "examples_pattern", "examples_distinct_domains", "examples_relation",
      "query_type",      "query_color",       "query_size",       "query_quantity",    "query_position",
      "options_domain",  "options_values",    "options_relation", "options_solution",
      "cot",             "exact_match"};
  return names;
}

AnalogyAudit analogy_cot_audit(const Generation& gen, const analogy::AnalogyPuzzle& gold) {
  AnalogyAudit out;
  for (const auto& n : analogy_audit_flags()) out.flags[n] = false;
  auto& f = out.flags;
  const ParsedCot g = parse_cot(gen.text);
  const ParsedCot want = gold_cot(gold);

  audit_panels(g, want, "Example", "examples", f);
  audit_panels(g, want, "Query", "query", f);
  for (const char* label : {"Example 1", "Example 2"}) {
    auto it = g.follows.find(label);
    if (it == g.follows.end() || it->second != want.follows.at(label)) f["examples_pattern"] = true;
  }
  f["examples_distinct_domains"] = g.domains != want.domains;
  f["examples_relation"] = g.relation != want.relation;

  for (std::size_t i = 0; i < 4; ++i) {
    const std::string label = option_label(i);
    const std::string& pat = want.follows.at(label);
    auto it = g.follows.find(label);
    if (it == g.follows.end()) {
      f["options_domain"] = f["options_relation"] = f["options_solution"] = true;
    } else {
      if (domain_of(it->second) != domain_of(pat)) f["options_domain"] = true;
      if (relation_of(it->second) != relation_of(pat)) f["options_relation"] = true;
    }
    // Values of the gold domain for this option; a wrong domain leaves them unstated.
    const std::string key = label + "|" + std::string(domain_of(pat));
    auto v = g.domain_values.find(key);
    if (v == g.domain_values.end() || v->second != want.domain_values.at(key)) f["options_values"] = true;
    auto m = g.matches.find(label);
    if (m == g.matches.end() || m->second != want.matches.at(label)) f["options_solution"] = true;
  }
  if (g.letter != want.letter) f["options_solution"] = true;

  f["cot"] = !(g == want);
  f["exact_match"] = !eval_analogy(gen, gold).correct;
  return out;
}

}  // namespace s2h::eval
