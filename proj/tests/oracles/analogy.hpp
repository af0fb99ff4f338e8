#pragma once

// Brute-force pattern scan written from the relation definitions alone:
// union, intersection, symmetric difference, and an arithmetic step over the
// ordered value list. Panels are read attribute by attribute.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "s2h/analogygen/analogygen.hpp"

namespace oracle {

using Values = std::set<int>;

inline Values read(const s2h::analogy::Panel& p, const std::string& domain) {
  Values v;
  if (domain == "line type")
    for (const auto& l : p.lines) v.insert(l.type);
  if (domain == "line color")
    for (const auto& l : p.lines) v.insert(l.color);
  if (domain == "shape type")
    for (const auto& s : p.shapes) v.insert(s.type);
  if (domain == "shape color")
    for (const auto& s : p.shapes) v.insert(s.color);
  if (domain == "shape size")
    for (const auto& s : p.shapes) v.insert(s.size);
  if (domain == "shape position")
    for (const auto& s : p.shapes) v.insert(s.position);
  if (domain == "shape quantity") {
    std::map<int, int> per_type;
    for (const auto& s : p.shapes) per_type[s.type] += 1;
    for (const auto& kv : per_type) v.insert(kv.second);
  }
  return v;
}

inline const std::vector<std::string>& domains() {
  static const std::vector<std::string> d = {"line type",  "line color",     "shape type",    "shape color",
                                             "shape size", "shape quantity", "shape position"};
  return d;
}

inline const std::vector<std::string>& relations() {
  static const std::vector<std::string> r = {"XOR", "OR", "AND", "Progression"};
  return r;
}

inline std::vector<int> ordered_values(const std::string& domain) {
  if (domain == "line color") return {0, 90, 135, 189};
  if (domain == "shape color") return {0, 90, 135, 189, 255};
  if (domain == "shape size") return {20, 27, 34, 41};
  if (domain == "shape quantity") return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  if (domain == "shape position") return {0, 1, 2, 3, 4, 5, 6, 7, 8};
  return {};  // types carry no order
}

inline bool holds(const std::string& rel, const std::string& domain, const Values& a, const Values& b, const Values& c) {
  if (a.empty() || b.empty() || c.empty()) return false;
  Values expect;
  if (rel == "OR") {
    expect = a;
    expect.insert(b.begin(), b.end());
  } else if (rel == "AND") {
    for (int x : a)
      if (b.count(x)) expect.insert(x);
  } else if (rel == "XOR") {
    for (int x : a)
      if (!b.count(x)) expect.insert(x);
    for (int x : b)
      if (!a.count(x)) expect.insert(x);
  } else {
    auto order = ordered_values(domain);
    if (order.empty() || a.size() != 1 || b.size() != 1) return false;
    long ia = std::find(order.begin(), order.end(), *a.begin()) - order.begin();
    long ib = std::find(order.begin(), order.end(), *b.begin()) - order.begin();
    long n = static_cast<long>(order.size());
    if (ia >= n || ib >= n || ia == ib) return false;
    long ic = ib + (ib - ia);
    if (ic < 0 || ic >= n) return false;
    expect = {order[static_cast<std::size_t>(ic)]};
  }
  return !expect.empty() && expect == c;
}

// Every (domain, relation) name pair the triple satisfies.
inline std::vector<std::pair<std::string, std::string>> scan(const s2h::analogy::Panel& p1,
                                                             const s2h::analogy::Panel& p2,
                                                             const s2h::analogy::Panel& p3) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& d : domains())
    for (const auto& r : relations())
      if (holds(r, d, read(p1, d), read(p2, d), read(p3, d))) out.push_back({d, r});
  return out;
}

inline std::pair<std::string, std::string> names(const s2h::analogy::Pattern& p) {
  return {std::string(s2h::analogy::to_string(p.domain)), std::string(s2h::analogy::to_string(p.relation))};
}

struct UniquenessReport {
  bool examples_unique = true;      // each example triple has exactly its latent pattern
  bool answer_unique = true;        // query + answer has exactly the query pattern
  bool confounders_unique = true;   // each wrong option has exactly one pattern
  bool confounder_relation = true;  // and its relation differs from the query relation
};

inline UniquenessReport check_puzzle(const s2h::analogy::AnalogyPuzzle& p) {
  UniquenessReport r;
  const s2h::analogy::Pattern lat[2] = {p.latent.example1, p.latent.example2};
  for (int e = 0; e < 2; ++e) {
    auto found = scan(p.examples[e][0], p.examples[e][1], p.examples[e][2]);
    if (found.size() != 1 || found[0] != names(lat[e])) r.examples_unique = false;
  }
  const std::string q_rel(s2h::analogy::to_string(p.latent.query.relation));
  for (int o = 0; o < 4; ++o) {
    auto found = scan(p.query[0], p.query[1], p.options[o]);
    if (o == p.answer_index) {
      if (found.size() != 1 || found[0] != names(p.latent.query)) r.answer_unique = false;
    } else {
      if (found.size() != 1) r.confounders_unique = false;
      else if (found[0].second == q_rel) r.confounder_relation = false;
    }
  }
  return r;
}

}  // namespace oracle
