#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "s2h/analogygen/analogygen.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/text.hpp"

namespace s2h::analogy {

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::LineType: return "line type";
    case Domain::LineColor: return "line color";
    case Domain::ShapeType: return "shape type";
    case Domain::ShapeColor: return "shape color";
    case Domain::ShapeSize: return "shape size";
    case Domain::ShapeQuantity: return "shape quantity";
    case Domain::ShapePosition: return "shape position";
  }
  return "?";
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::XOR: return "XOR";
    case Relation::OR: return "OR";
    case Relation::AND: return "AND";
    case Relation::Progression: return "Progression";
  }
  return "?";
}

Domain parse_domain(std::string_view s) {
  std::string norm(trim(s));
  std::replace(norm.begin(), norm.end(), '_', ' ');
  for (Domain d : kDomains)
    if (norm == to_string(d)) return d;
  throw InvalidArgument("unknown analogy domain: " + std::string(s));
}

Relation parse_relation(std::string_view s) {
  std::string norm(trim(s));
  for (Relation r : kRelations) {
    std::string name(to_string(r));
    std::string upper = name, lower = name;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
    if (norm == name || norm == upper || norm == lower) return r;
  }
  throw InvalidArgument("unknown analogy relation: " + std::string(s));
}

std::string to_string(const Pattern& p) {
  return "(" + std::string(to_string(p.domain)) + ", " + std::string(to_string(p.relation)) + ")";
}

std::vector<Pattern> all_patterns() {
  std::vector<Pattern> out;
  for (Domain d : kDomains)
    for (Relation r : kRelations) out.push_back({d, r});
  return out;
}

const std::vector<int>& domain_values(Domain d) {
  static const std::vector<int> line_types = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  static const std::vector<int> line_colors = {0, 90, 135, 189};
  static const std::vector<int> shape_types = {0, 1, 2, 3, 4};
  static const std::vector<int> shape_colors = {0, 90, 135, 189, 255};
  static const std::vector<int> sizes = {20, 27, 34, 41};
  static const std::vector<int> quantities = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  static const std::vector<int> positions = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  switch (d) {
    case Domain::LineType: return line_types;
    case Domain::LineColor: return line_colors;
    case Domain::ShapeType: return shape_types;
    case Domain::ShapeColor: return shape_colors;
    case Domain::ShapeSize: return sizes;
    case Domain::ShapeQuantity: return quantities;
    case Domain::ShapePosition: return positions;
  }
  return line_types;
}

bool is_ordered(Domain d) { return d != Domain::LineType && d != Domain::ShapeType; }

bool is_feasible(const Pattern& p) {
  if (p.relation != Relation::Progression) return true;
  return is_ordered(p.domain) && p.domain != Domain::ShapePosition;
}

bool is_valid(const Panel& p) {
  auto member = [](Domain d, int v) {
    const auto& vals = domain_values(d);
    return std::find(vals.begin(), vals.end(), v) != vals.end();
  };
  std::set<int> positions, line_types;
  for (const Shape& s : p.shapes) {
    if (!member(Domain::ShapeType, s.type) || !member(Domain::ShapeColor, s.color) ||
        !member(Domain::ShapeSize, s.size) || !member(Domain::ShapePosition, s.position))
      return false;
    if (!positions.insert(s.position).second) return false;
  }
  for (const Line& l : p.lines) {
    if (!member(Domain::LineType, l.type) || !member(Domain::LineColor, l.color)) return false;
    if (!line_types.insert(l.type).second) return false;
  }
  return true;
}

ValueSet values(const Panel& p, Domain d) {
  ValueSet out;
  switch (d) {
    case Domain::LineType:
      for (const Line& l : p.lines) out.insert(l.type);
      break;
    case Domain::LineColor:
      for (const Line& l : p.lines) out.insert(l.color);
      break;
    case Domain::ShapeType:
      for (const Shape& s : p.shapes) out.insert(s.type);
      break;
    case Domain::ShapeColor:
      for (const Shape& s : p.shapes) out.insert(s.color);
      break;
    case Domain::ShapeSize:
      for (const Shape& s : p.shapes) out.insert(s.size);
      break;
    case Domain::ShapeQuantity: {
      std::map<int, int> counts;
      for (const Shape& s : p.shapes) ++counts[s.type];
      for (const auto& [type, n] : counts) out.insert(n);
      break;
    }
    case Domain::ShapePosition:
      for (const Shape& s : p.shapes) out.insert(s.position);
      break;
  }
  return out;
}

namespace {

// Non-throwing core shared by both entry points; `why` names the failure.
std::optional<ValueSet> apply_relation(Relation r, Domain d, const ValueSet& a, const ValueSet& b,
                                       const char** why) {
  auto fail = [&](const char* msg) -> std::optional<ValueSet> {
    if (why) *why = msg;
    return std::nullopt;
  };
  if (a.empty() || b.empty()) return fail("relation inputs must be nonempty");
  ValueSet out;
  switch (r) {
    case Relation::OR:
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
      break;
    case Relation::AND:
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
      break;
    case Relation::XOR:
      std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                    std::inserter(out, out.end()));
      break;
    case Relation::Progression: {
      if (!is_ordered(d)) return fail("progression needs an ordered domain");
      if (a.size() != 1 || b.size() != 1) return fail("progression needs single values");
      const auto& vals = domain_values(d);
      auto ia = std::find(vals.begin(), vals.end(), *a.begin()) - vals.begin();
      auto ib = std::find(vals.begin(), vals.end(), *b.begin()) - vals.begin();
      if (ia == static_cast<long>(vals.size()) || ib == static_cast<long>(vals.size()))
        return fail("progression value outside the domain");
      if (ia == ib) return fail("progression needs a nonzero step");
      const long ic = 2 * ib - ia;
      if (ic < 0 || ic >= static_cast<long>(vals.size())) return fail("progression steps outside the domain");
      out.insert(vals[static_cast<std::size_t>(ic)]);
      break;
    }
  }
  if (out.empty()) return fail("relation result is empty");
  return out;
}

}  // namespace

ValueSet relation_apply(Relation r, Domain d, const ValueSet& a, const ValueSet& b) {
  const char* why = nullptr;
  auto out = apply_relation(r, d, a, b, &why);
  if (!out) throw InvalidArgument(why);
  return *out;
}

std::optional<ValueSet> try_relation_apply(Relation r, Domain d, const ValueSet& a, const ValueSet& b) {
  return apply_relation(r, d, a, b, nullptr);
}

bool pattern_holds(const Pattern& p, const Panel& p1, const Panel& p2, const Panel& p3) {
  auto expected = try_relation_apply(p.relation, p.domain, values(p1, p.domain), values(p2, p.domain));
  return expected && *expected == values(p3, p.domain);
}

std::vector<Pattern> consistent_patterns(const Panel& p1, const Panel& p2, const Panel& p3) {
  std::vector<Pattern> out;
  for (Domain d : kDomains) {
    const ValueSet a = values(p1, d), b = values(p2, d);
    if (a.empty() || b.empty()) continue;
    const ValueSet c = values(p3, d);
    for (Relation r : kRelations) {
      auto expected = try_relation_apply(r, d, a, b);
      if (expected && *expected == c) out.push_back({d, r});
    }
  }
  return out;
}

HeldoutSet default_heldout() {
  return {{Domain::LineType, Relation::XOR},        {Domain::LineColor, Relation::OR},
          {Domain::ShapeType, Relation::AND},       {Domain::ShapeSize, Relation::XOR},
          {Domain::ShapeColor, Relation::Progression}, {Domain::ShapePosition, Relation::OR},
          {Domain::LineType, Relation::AND},        {Domain::LineColor, Relation::Progression}};
}

HeldoutSet parse_heldout(std::string_view text) {
  HeldoutSet out;
  for (std::string_view raw : split_lines(text)) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '(' && line.back() == ')') line = line.substr(1, line.size() - 2);
    auto comma = line.rfind(',');
    if (comma == std::string_view::npos) throw ParseError("heldout line without comma: " + std::string(raw));
    try {
      out.insert({parse_domain(line.substr(0, comma)), parse_relation(line.substr(comma + 1))});
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string("heldout: ") + e.what());
    }
  }
  if (out.empty()) throw ParseError("heldout set is empty");
  return out;
}

HeldoutSet load_heldout(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_heldout(ss.str());
}

std::string_view to_string(Variant v) {
  return v == Variant::Standard ? "standard" : "pattern-heldout";
}

Variant parse_variant(std::string_view s) {
  if (s == "standard") return Variant::Standard;
  if (s == "pattern-heldout") return Variant::PatternHeldout;
  throw InvalidArgument("unknown analogy variant: " + std::string(s));
}

}  // namespace s2h::analogy
