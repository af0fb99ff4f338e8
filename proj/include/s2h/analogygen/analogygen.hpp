#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "s2h/core/rng.hpp"
#include "s2h/core/types.hpp"

namespace s2h::analogy {

enum class Domain { LineType, LineColor, ShapeType, ShapeColor, ShapeSize, ShapeQuantity, ShapePosition };
enum class Relation { XOR, OR, AND, Progression };

inline constexpr std::array kDomains = {Domain::LineType,  Domain::LineColor,     Domain::ShapeType,
                                        Domain::ShapeColor, Domain::ShapeSize,    Domain::ShapeQuantity,
                                        Domain::ShapePosition};
inline constexpr std::array kRelations = {Relation::XOR, Relation::OR, Relation::AND, Relation::Progression};

std::string_view to_string(Domain d);
std::string_view to_string(Relation r);
Domain parse_domain(std::string_view s);
Relation parse_relation(std::string_view s);

/// A (domain, relation) combination; 28 exist.
struct Pattern {
  Domain domain = Domain::LineType;
  Relation relation = Relation::XOR;
  auto operator<=>(const Pattern&) const = default;
};
std::string to_string(const Pattern& p);  // "(line type, XOR)"
std::vector<Pattern> all_patterns();

using ValueSet = std::set<int>;

/// Canonical ordered values of a domain. Types and positions are indices;
/// colors and sizes are the literal gray levels and pixel sizes; quantities
/// are per-shape-type counts.
const std::vector<int>& domain_values(Domain d);
/// Progression needs an order; line and shape types have none.
bool is_ordered(Domain d);
/// Combinations that can be realized with a unique pattern. Progression on
/// positions is excluded: single-position panels always hold one shape, which
/// makes the quantity domain satisfy OR and AND as well.
bool is_feasible(const Pattern& p);

struct Shape {
  int type = 0;      // index into circle, rectangle, triangle, pentagon, hexagon
  int color = 0;     // gray level
  int size = 20;     // pixels
  int position = 0;  // 0..8, row-major in a 3x3 layout
  auto operator<=>(const Shape&) const = default;
};

struct Line {
  int type = 0;   // index into the ten line types
  int color = 0;  // gray level
  auto operator<=>(const Line&) const = default;
};

struct Panel {
  std::vector<Shape> shapes;
  std::vector<Line> lines;
  bool operator==(const Panel&) const = default;
};

/// Panel invariants: distinct positions, distinct line types, values drawn
/// from the domain lists.
bool is_valid(const Panel& p);
ValueSet values(const Panel& p, Domain d);

/// Set semantics: OR union, AND intersection, XOR symmetric difference;
/// Progression maps singletons {x}, {y} to {2y - x} by index in the domain
/// order. Throws InvalidArgument for empty inputs, empty AND/XOR results,
/// non-singleton or unordered Progression, or a step leaving the range.
ValueSet relation_apply(Relation r, Domain d, const ValueSet& a, const ValueSet& b);
std::optional<ValueSet> try_relation_apply(Relation r, Domain d, const ValueSet& a, const ValueSet& b);

/// Rewrite a panel so its value set along `d` equals `v`, keeping other
/// attributes where possible. Throws InvalidArgument when one panel cannot
/// hold the set (e.g. quantities summing past nine).
void impose(Panel& p, Domain d, const ValueSet& v, Rng& rng);

bool pattern_holds(const Pattern& p, const Panel& p1, const Panel& p2, const Panel& p3);
/// Every pattern the triple is consistent with (brute force over all 28).
std::vector<Pattern> consistent_patterns(const Panel& p1, const Panel& p2, const Panel& p3);

using HeldoutSet = std::set<Pattern>;
HeldoutSet default_heldout();
/// One "domain, relation" pair per line; '#' comments and blank lines skipped.
HeldoutSet parse_heldout(std::string_view text);
HeldoutSet load_heldout(const std::string& path);

enum class Variant { Standard, PatternHeldout };
std::string_view to_string(Variant v);
Variant parse_variant(std::string_view s);

struct Latent {
  Pattern example1;
  Pattern example2;
  Pattern query;
  auto operator<=>(const Latent&) const = default;
};

struct AnalogyPuzzle {
  Variant variant = Variant::Standard;
  Difficulty difficulty = Difficulty::Simple;
  std::array<std::array<Panel, 3>, 2> examples;
  std::array<Panel, 2> query;
  std::array<Panel, 4> options;
  int answer_index = 0;
  Latent latent;
  std::array<Pattern, 3> confounders;  // patterns of the wrong options, in option order
  HeldoutSet heldout;

  /// Pattern realized by each option combined with the query.
  std::array<Pattern, 4> option_patterns() const;
  bool operator==(const AnalogyPuzzle&) const = default;
};

Latent sample_latent(Variant variant, Difficulty difficulty, const HeldoutSet& heldout,
                     std::uint64_t seed);

AnalogyPuzzle gen_puzzle(Variant variant, Difficulty difficulty, const HeldoutSet& heldout,
                         std::uint64_t seed);

struct VerifyReport {
  bool shared_relation = false;
  std::array<bool, 2> example_unique{};
  bool query_unique = false;       // query + correct option realizes exactly the query pattern
  std::array<bool, 3> confounders_unique{};  // exactly one pattern each, relation differs
  bool domain_constraints = false;  // same/distinct domains per variant and difficulty
  bool heldout_constraints = false;
  bool answer_in_range = false;

  bool all() const;
  std::vector<std::string> failures() const;
};

VerifyReport verify_puzzle(const AnalogyPuzzle& p);

enum class TextMode { Lossy, Lossless };
std::string_view to_string(TextMode m);

std::string shape_name(int type);
std::string position_name(int position);
std::string line_name(int type);
std::string shape_code(int type);
std::string position_code(int position);
std::string line_code(int type);

/// Lossy: unique values per attribute. Lossless: one code per object.
std::string emit_panel_text(const Panel& p, TextMode mode);
std::string emit_analogy_text(const AnalogyPuzzle& p, TextMode mode);
/// Values of one domain as they appear in lossy text ("0,90", "circle, rectangle", "none").
std::string format_values(Domain d, const ValueSet& v);
std::string analogy_prompt(const AnalogyPuzzle& p, TextMode mode, bool with_text);
/// Abbreviations used by the lossless form, one per line.
std::string lossless_legend();

struct CotAnswer {
  std::string cot;
  std::string answer;
};
CotAnswer emit_analogy_cot(const AnalogyPuzzle& p);

std::string to_json(const AnalogyPuzzle& p);
AnalogyPuzzle analogy_from_json(const std::string& text);

}  // namespace s2h::analogy
