#include <algorithm>
#include <numeric>

#include "s2h/analogygen/analogygen.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/rng.hpp"

namespace s2h::analogy {

namespace {

constexpr int kLineTypes = 10;
constexpr int kPositions = 9;
constexpr int kTripleAttempts = 400;
constexpr int kPuzzleAttempts = 200;

int pick_value(Rng& rng, Domain d) {
  const auto& v = domain_values(d);
  return v[rng.below(v.size())];
}

Shape random_shape(Rng& rng, int position) {
  return {pick_value(rng, Domain::ShapeType), pick_value(rng, Domain::ShapeColor),
          pick_value(rng, Domain::ShapeSize), position};
}

std::vector<int> free_positions(const Panel& p) {
  std::vector<int> out;
  for (int pos = 0; pos < kPositions; ++pos)
    if (std::none_of(p.shapes.begin(), p.shapes.end(), [&](const Shape& s) { return s.position == pos; }))
      out.push_back(pos);
  return out;
}

std::vector<int> free_line_types(const Panel& p) {
  std::vector<int> out;
  for (int t = 0; t < kLineTypes; ++t)
    if (std::none_of(p.lines.begin(), p.lines.end(), [&](const Line& l) { return l.type == t; }))
      out.push_back(t);
  return out;
}

Panel random_panel(Rng& rng) {
  Panel p;
  const int n_lines = rng.uniform_int(0, 2);
  for (int i = 0; i < n_lines; ++i) {
    auto types = free_line_types(p);
    p.lines.push_back({types[rng.below(types.size())], pick_value(rng, Domain::LineColor)});
  }
  const int n_shapes = rng.uniform_int(0, 4);
  for (int i = 0; i < n_shapes; ++i) {
    auto pos = free_positions(p);
    p.shapes.push_back(random_shape(rng, pos[rng.below(pos.size())]));
  }
  return p;
}

void add_shapes_up_to(Panel& p, std::size_t n, Rng& rng) {
  while (p.shapes.size() < n) {
    auto pos = free_positions(p);
    if (pos.empty()) throw InvalidArgument("panel has no free position");
    p.shapes.push_back(random_shape(rng, pos[rng.below(pos.size())]));
  }
}

void add_lines_up_to(Panel& p, std::size_t n, Rng& rng) {
  while (p.lines.size() < n) {
    auto types = free_line_types(p);
    if (types.empty()) throw InvalidArgument("panel has no free line type");
    p.lines.push_back({types[rng.below(types.size())], pick_value(rng, Domain::LineColor)});
  }
}

// Spread the values of `v` over `n` slots: every value at least once, the
// remaining slots drawn from `v`, order shuffled.
std::vector<int> cover(const ValueSet& v, std::size_t n, Rng& rng) {
  std::vector<int> out(v.begin(), v.end());
  std::vector<int> pool(v.begin(), v.end());
  while (out.size() < n) out.push_back(pool[rng.below(pool.size())]);
  rng.shuffle(out);
  return out;
}

void sort_panel(Panel& p) {
  std::sort(p.shapes.begin(), p.shapes.end(),
            [](const Shape& a, const Shape& b) { return a.position < b.position; });
  std::sort(p.lines.begin(), p.lines.end(),
            [](const Line& a, const Line& b) { return a.type < b.type; });
}

}  // namespace

void impose(Panel& p, Domain d, const ValueSet& v, Rng& rng) {
  switch (d) {
    case Domain::LineType: {
      std::vector<int> colors;
      for (const Line& l : p.lines) colors.push_back(l.color);
      p.lines.clear();
      std::size_t i = 0;
      for (int t : v) {
        int c = colors.empty() ? pick_value(rng, Domain::LineColor) : colors[i % colors.size()];
        p.lines.push_back({t, c});
        ++i;
      }
      break;
    }
    case Domain::LineColor: {
      if (v.empty()) {
        p.lines.clear();
        break;
      }
      add_lines_up_to(p, v.size(), rng);
      auto colors = cover(v, p.lines.size(), rng);
      for (std::size_t i = 0; i < p.lines.size(); ++i) p.lines[i].color = colors[i];
      break;
    }
    case Domain::ShapeType:
    case Domain::ShapeColor:
    case Domain::ShapeSize: {
      if (v.empty()) {
        p.shapes.clear();
        break;
      }
      add_shapes_up_to(p, v.size(), rng);
      auto vals = cover(v, p.shapes.size(), rng);
      for (std::size_t i = 0; i < p.shapes.size(); ++i) {
        if (d == Domain::ShapeType) p.shapes[i].type = vals[i];
        else if (d == Domain::ShapeColor) p.shapes[i].color = vals[i];
        else p.shapes[i].size = vals[i];
      }
      break;
    }
    case Domain::ShapePosition: {
      std::vector<Shape> old = p.shapes;
      p.shapes.clear();
      std::size_t i = 0;
      for (int pos : v) {
        Shape s = old.empty() ? random_shape(rng, pos) : old[i % old.size()];
        s.position = pos;
        p.shapes.push_back(s);
        ++i;
      }
      break;
    }
    case Domain::ShapeQuantity: {
      const int total = std::accumulate(v.begin(), v.end(), 0);
      if (v.count(0) || total > kPositions || v.size() > domain_values(Domain::ShapeType).size())
        throw InvalidArgument("quantity set cannot be realized in one panel");
      std::vector<int> types;
      for (const Shape& s : p.shapes)
        if (std::find(types.begin(), types.end(), s.type) == types.end()) types.push_back(s.type);
      std::vector<int> others;
      for (int t : domain_values(Domain::ShapeType))
        if (std::find(types.begin(), types.end(), t) == types.end()) others.push_back(t);
      rng.shuffle(others);
      types.insert(types.end(), others.begin(), others.end());
      std::vector<Shape> old = p.shapes;
      std::vector<int> positions(kPositions);
      std::iota(positions.begin(), positions.end(), 0);
      rng.shuffle(positions);
      p.shapes.clear();
      std::size_t k = 0, slot = 0;
      for (int count : v) {
        for (int j = 0; j < count; ++j) {
          Shape s = old.empty() ? random_shape(rng, 0) : old[slot % old.size()];
          s.type = types[k];
          s.position = positions[slot];
          p.shapes.push_back(s);
          ++slot;
        }
        ++k;
      }
      break;
    }
  }
  sort_panel(p);
}

namespace {

ValueSet random_subset(Rng& rng, const std::vector<int>& universe, int max_size) {
  std::vector<int> u = universe;
  rng.shuffle(u);
  const int n = rng.uniform_int(1, std::min<int>(max_size, static_cast<int>(u.size())));
  return ValueSet(u.begin(), u.begin() + n);
}

std::vector<int> realizable_values(Domain d) {
  std::vector<int> v = domain_values(d);
  if (d == Domain::ShapeQuantity) v.erase(std::remove(v.begin(), v.end(), 0), v.end());
  return v;
}

// Value sets (a, b, c) for one triple. Set relations use overlapping,
// unequal inputs so that no other relation holds along the same domain.
std::array<ValueSet, 3> sample_sets(const Pattern& pat, Rng& rng) {
  const auto universe = realizable_values(pat.domain);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    if (pat.relation == Relation::Progression) {
      const auto& vals = domain_values(pat.domain);
      const int n = static_cast<int>(vals.size());
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && 2 * j - i >= 0 && 2 * j - i < n) pairs.push_back({i, j});
      auto [i, j] = pairs[rng.below(pairs.size())];
      ValueSet a{vals[static_cast<std::size_t>(i)]}, b{vals[static_cast<std::size_t>(j)]};
      ValueSet c{vals[static_cast<std::size_t>(2 * j - i)]};
      if (pat.domain == Domain::ShapeQuantity && (a.count(0) || b.count(0) || c.count(0))) continue;
      return {a, b, c};
    }
    ValueSet a = random_subset(rng, universe, 3);
    ValueSet b = random_subset(rng, universe, 3);
    if (a == b) continue;
    ValueSet common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(common, common.end()));
    if (common.empty()) continue;
    auto c = try_relation_apply(pat.relation, pat.domain, a, b);
    if (!c) continue;
    return {a, b, *c};
  }
  throw SamplingExhausted("no value sets for pattern " + to_string(pat));
}

std::array<Panel, 3> make_triple(const Pattern& pat, Rng& rng) {
  for (int attempt = 0; attempt < kTripleAttempts; ++attempt) {
    auto sets = sample_sets(pat, rng);
    std::array<Panel, 3> panels;
    try {
      for (int i = 0; i < 3; ++i) {
        panels[static_cast<std::size_t>(i)] = random_panel(rng);
        impose(panels[static_cast<std::size_t>(i)], pat.domain, sets[static_cast<std::size_t>(i)], rng);
      }
    } catch (const InvalidArgument&) {
      continue;
    }
    auto found = consistent_patterns(panels[0], panels[1], panels[2]);
    if (found.size() == 1 && found[0] == pat) return panels;
  }
  throw SamplingExhausted("no unambiguous panels for pattern " + to_string(pat));
}

std::vector<Pattern> feasible_patterns() {
  std::vector<Pattern> out;
  for (const Pattern& p : all_patterns())
    if (is_feasible(p)) out.push_back(p);
  return out;
}

// Build a wrong option realizing `target` with the query panels, starting
// from the correct option so that options look alike.
std::optional<Panel> make_confounder(const std::array<Panel, 2>& query, const Panel& correct,
                                     const Pattern& query_pattern, const Pattern& target, Rng& rng) {
  auto result = try_relation_apply(target.relation, target.domain, values(query[0], target.domain),
                                   values(query[1], target.domain));
  if (!result) return std::nullopt;
  for (int attempt = 0; attempt < 40; ++attempt) {
    Panel o = attempt < 20 ? correct : random_panel(rng);
    try {
      impose(o, target.domain, *result, rng);
      if (attempt % 2 == 1 && target.domain != query_pattern.domain) {
        // Knock the query pattern out by replacing its values.
        auto universe = realizable_values(query_pattern.domain);
        impose(o, query_pattern.domain, random_subset(rng, universe, 3), rng);
        impose(o, target.domain, *result, rng);
      }
    } catch (const InvalidArgument&) {
      continue;
    }
    auto found = consistent_patterns(query[0], query[1], o);
    if (found.size() == 1 && found[0] == target) return o;
  }
  return std::nullopt;
}

}  // namespace

Latent sample_latent(Variant variant, Difficulty difficulty, const HeldoutSet& heldout,
                     std::uint64_t seed) {
  if (difficulty == Difficulty::Medium) throw InvalidArgument("visual analogy has no medium difficulty");
  if (heldout.empty()) throw InvalidArgument("held-out set must not be empty");
  Rng rng(seed);
  const auto feasible = feasible_patterns();
  const bool hard = difficulty == Difficulty::Hard;

  if (variant == Variant::PatternHeldout || !hard) {
    std::vector<Pattern> pool;
    for (const Pattern& p : feasible)
      if (heldout.contains(p) == hard) pool.push_back(p);
    if (pool.empty()) throw InvalidArgument("no feasible pattern satisfies the held-out constraint");
    const Pattern p = pool[rng.below(pool.size())];
    return {p, p, p};
  }

  std::vector<Relation> relations;
  for (Relation r : kRelations) {
    int n = 0;
    for (const Pattern& p : heldout) n += p.relation == r && is_feasible(p);
    if (n >= 2) relations.push_back(r);
  }
  if (relations.empty())
    throw InvalidArgument("held-out set has no relation with two feasible domains");
  const Relation r = relations[rng.below(relations.size())];
  std::vector<Domain> domains;
  for (const Pattern& p : heldout)
    if (p.relation == r && is_feasible(p)) domains.push_back(p.domain);
  rng.shuffle(domains);
  const Domain d1 = domains[0], d2 = domains[1];
  // A third held-out domain for the query when one exists; otherwise the
  // query reuses one of the example domains.
  const Domain dq = domains.size() > 2 ? domains[2 + rng.below(domains.size() - 2)]
                                       : domains[rng.below(2)];
  return {{d1, r}, {d2, r}, {dq, r}};
}

AnalogyPuzzle gen_puzzle(Variant variant, Difficulty difficulty, const HeldoutSet& heldout,
                         std::uint64_t seed) {
  Rng rng(seed);
  AnalogyPuzzle p;
  p.variant = variant;
  p.difficulty = difficulty;
  p.heldout = heldout;
  p.latent = sample_latent(variant, difficulty, heldout, rng.next_u64());
  const Pattern q = p.latent.query;

  std::vector<Pattern> confounder_pool;
  for (const Pattern& c : feasible_patterns()) {
    if (c.relation == q.relation) continue;
    if (difficulty == Difficulty::Simple && heldout.contains(c)) continue;
    confounder_pool.push_back(c);
  }

  for (int attempt = 0; attempt < kPuzzleAttempts; ++attempt) {
    p.examples[0] = make_triple(p.latent.example1, rng);
    p.examples[1] = make_triple(p.latent.example2, rng);
    auto qt = make_triple(q, rng);
    p.query = {qt[0], qt[1]};
    const Panel correct = qt[2];

    auto pool = confounder_pool;
    rng.shuffle(pool);
    std::vector<std::pair<Pattern, Panel>> wrong;
    for (const Pattern& c : pool) {
      if (wrong.size() == 3) break;
      auto o = make_confounder(p.query, correct, q, c, rng);
      if (!o || *o == correct) continue;
      if (std::any_of(wrong.begin(), wrong.end(), [&](const auto& w) { return w.second == *o; })) continue;
      wrong.push_back({c, *o});
    }
    if (wrong.size() < 3) continue;

    p.answer_index = static_cast<int>(rng.below(4));
    std::size_t w = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == p.answer_index) {
        p.options[static_cast<std::size_t>(i)] = correct;
      } else {
        p.options[static_cast<std::size_t>(i)] = wrong[w].second;
        p.confounders[w] = wrong[w].first;
        ++w;
      }
    }
    return p;
  }
  throw SamplingExhausted("visual analogy: no puzzle after " + std::to_string(kPuzzleAttempts) +
                          " attempts");
}

std::array<Pattern, 4> AnalogyPuzzle::option_patterns() const {
  std::array<Pattern, 4> out;
  std::size_t w = 0;
  for (int i = 0; i < 4; ++i)
    out[static_cast<std::size_t>(i)] = i == answer_index ? latent.query : confounders[w++];
  return out;
}

bool VerifyReport::all() const { return failures().empty(); }

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  if (!shared_relation) out.push_back("shared relation");
  for (int i = 0; i < 2; ++i)
    if (!example_unique[static_cast<std::size_t>(i)]) out.push_back("example " + std::to_string(i + 1) + " pattern");
  if (!query_unique) out.push_back("correct option pattern");
  for (int i = 0; i < 3; ++i)
    if (!confounders_unique[static_cast<std::size_t>(i)]) out.push_back("confounder " + std::to_string(i + 1) + " pattern");
  if (!domain_constraints) out.push_back("domain distinctness");
  if (!heldout_constraints) out.push_back("held-out membership");
  if (!answer_in_range) out.push_back("answer index");
  return out;
}

VerifyReport verify_puzzle(const AnalogyPuzzle& p) {
  VerifyReport rep;
  const Latent& L = p.latent;
  auto unique_is = [](const std::vector<Pattern>& found, const Pattern& want) {
    return found.size() == 1 && found[0] == want;
  };
  rep.shared_relation = L.example1.relation == L.example2.relation && L.example2.relation == L.query.relation;
  rep.example_unique[0] = unique_is(consistent_patterns(p.examples[0][0], p.examples[0][1], p.examples[0][2]), L.example1);
  rep.example_unique[1] = unique_is(consistent_patterns(p.examples[1][0], p.examples[1][1], p.examples[1][2]), L.example2);
  rep.answer_in_range = p.answer_index >= 0 && p.answer_index < 4;
  if (rep.answer_in_range) {
    rep.query_unique = unique_is(
        consistent_patterns(p.query[0], p.query[1], p.options[static_cast<std::size_t>(p.answer_index)]), L.query);
    std::size_t w = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == p.answer_index) continue;
      const Pattern& c = p.confounders[w];
      rep.confounders_unique[w] =
          c.relation != L.query.relation &&
          unique_is(consistent_patterns(p.query[0], p.query[1], p.options[static_cast<std::size_t>(i)]), c);
      ++w;
    }
  }

  const bool hard = p.difficulty == Difficulty::Hard;
  if (p.variant == Variant::Standard && hard) {
    bool ok = L.example1.domain != L.example2.domain;
    // The query domain must be new whenever the held-out set offers one.
    bool third_available = false;
    for (const Pattern& h : p.heldout)
      third_available = third_available || (h.relation == L.query.relation && is_feasible(h) &&
                                             h.domain != L.example1.domain && h.domain != L.example2.domain);
    if (third_available)
      ok = ok && L.query.domain != L.example1.domain && L.query.domain != L.example2.domain;
    rep.domain_constraints = ok;
    rep.heldout_constraints = p.heldout.contains(L.example1) && p.heldout.contains(L.example2) &&
                              p.heldout.contains(L.query);
  } else {
    rep.domain_constraints = L.example1.domain == L.example2.domain && L.example2.domain == L.query.domain;
    const bool in = p.heldout.contains(L.query);
    rep.heldout_constraints = hard ? in : !in;
  }
  if (!hard)
    for (const Pattern& c : p.confounders) rep.heldout_constraints = rep.heldout_constraints && !p.heldout.contains(c);
  return rep;
}

}  // namespace s2h::analogy
