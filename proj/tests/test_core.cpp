#include <set>

#include "doctest.h"
#include "s2h/core/digest.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/record.hpp"
#include "s2h/core/rng.hpp"
#include "s2h/core/text.hpp"
#include "s2h/core/types.hpp"

using namespace s2h;

namespace {

SupervisedRecord make(Modality m, bool convert, std::string cot = "Step-by-step reasoning:\nStep 1.",
                      Metadata meta = {{"seed", "3"}}) {
  std::vector<Segment> segs{{SegmentKind::Prompt, "Read the table.", true}};
  if (convert) {
    segs.push_back({SegmentKind::ConvertPrompt, std::string(convert_prompt()), false});
    segs.push_back({SegmentKind::ConvertedText, "\\begin{tabular}{|c|}\\end{tabular}", false});
  }
  segs.push_back({SegmentKind::Cot, std::move(cot), false});
  segs.push_back({SegmentKind::Answer, "Final answer: ONE.", false});
  std::optional<std::string> img;
  if (m == Modality::ImageInput) img = "images/x.png";
  return SupervisedRecord(TaskKind::TableReadout, Difficulty::Simple, m, img, std::move(segs), std::move(meta));
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("derive_seed is pure and sensitive to every input") {
  const auto v = derive_seed(7, TaskKind::TableReadout, "gen", 0);
  CHECK(derive_seed(7, TaskKind::TableReadout, "gen", 0) == v);
  CHECK(derive_seed(7, TaskKind::TableReadout, "gen", 1) != v);
  CHECK(derive_seed(8, TaskKind::TableReadout, "gen", 0) != v);
  CHECK(derive_seed(7, TaskKind::GridNavigation, "gen", 0) != v);
  CHECK(derive_seed(7, TaskKind::TableReadout, "mix", 0) != v);

  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(7, TaskKind::TableReadout, "gen", i));
  CHECK(seen.size() == 10000);
}

TEST_CASE("rng streams replay and stay in range") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng r(1);
  int counts[5] = {};
  for (int i = 0; i < 50000; ++i) {
    const int x = r.uniform_int(0, 4);
    REQUIRE(x >= 0);
    REQUIRE(x <= 4);
    ++counts[x];
  }
  for (int c : counts) CHECK(c == doctest::Approx(10000).epsilon(0.05));
  Rng s(9);
  Rng child = s.split("x");
  Rng child2 = s.split("x");
  CHECK(child.next_u64() == child2.next_u64());
}

TEST_CASE("conversion prompt is one fixed string") {
  CHECK(convert_prompt() == "Convert the provided image to text.");
  CHECK(convert_prompt().data() == convert_prompt().data());
  CHECK(convert_prompt().substr(0, 7) == "Convert");
}

TEST_CASE("enum names round trip and medium is consecutive-only") {
  for (TaskKind t : kAllTasks) CHECK(parse_task(to_string(t)) == t);
  for (SupervisionKind s : kAllSupervisionKinds) CHECK(parse_supervision(to_string(s)) == s);
  CHECK(parse_supervision("mix+") == SupervisionKind::MixPlus);
  CHECK(parse_task("grid") == TaskKind::GridNavigation);
  CHECK_THROWS_AS(parse_task("maze"), InvalidArgument);
  CHECK(difficulty_valid_for(TaskKind::ConsecutiveTableReadout, Difficulty::Medium));
  CHECK_FALSE(difficulty_valid_for(TaskKind::TableReadout, Difficulty::Medium));
  CHECK_FALSE(difficulty_valid_for(TaskKind::GridNavigation, Difficulty::Medium));
  CHECK(includes_hard_text(SupervisionKind::MixPlus));
  CHECK(includes_hard_text(SupervisionKind::ImageViaTextPlus));
  CHECK_FALSE(includes_hard_text(SupervisionKind::Mix));
}

TEST_CASE("record invariants") {
  SUBCASE("image input needs a path, text input must not have one") {
    CHECK_THROWS_AS(SupervisedRecord(TaskKind::TableReadout, Difficulty::Simple, Modality::ImageInput, std::nullopt,
                                     make(Modality::TextInput, false).segments(), {}),
                    InvalidArgument);
    CHECK_THROWS_AS(SupervisedRecord(TaskKind::TableReadout, Difficulty::Simple, Modality::TextInput,
                                     std::string("a.png"), make(Modality::TextInput, false).segments(), {}),
                    InvalidArgument);
  }
  SUBCASE("segment order") {
    auto segs = make(Modality::ImageInput, true).segments();
    std::swap(segs[3], segs[4]);
    CHECK_THROWS_AS(SupervisedRecord(TaskKind::TableReadout, Difficulty::Simple, Modality::ImageInput,
                                     std::string("a.png"), segs, {}),
                    InvalidArgument);
  }
  SUBCASE("conversion prompt text is fixed and followed by converted text") {
    auto segs = make(Modality::ImageInput, true).segments();
    segs[1].text = "Convert the image to text";
    CHECK_THROWS_AS(SupervisedRecord(TaskKind::TableReadout, Difficulty::Simple, Modality::ImageInput,
                                     std::string("a.png"), segs, {}),
                    InvalidArgument);
    segs = make(Modality::ImageInput, true).segments();
    segs.erase(segs.begin() + 2);
    CHECK_THROWS_AS(SupervisedRecord(TaskKind::TableReadout, Difficulty::Simple, Modality::ImageInput,
                                     std::string("a.png"), segs, {}),
                    InvalidArgument);
  }
  SUBCASE("medium outside consecutive readout") {
    CHECK_THROWS_AS(SupervisedRecord(TaskKind::GridNavigation, Difficulty::Medium, Modality::TextInput, std::nullopt,
                                     make(Modality::TextInput, false).segments(), {}),
                    InvalidArgument);
  }
}

TEST_CASE("supervised mask is recomputed from segment kinds") {
  // Mask flags passed in are deliberately wrong; the constructor fixes them.
  for (bool convert : {false, true}) {
    for (bool empty_cot : {false, true}) {
      const auto r = make(convert ? Modality::ImageInput : Modality::TextInput, convert, empty_cot ? "" : "x");
      for (const Segment& s : r.segments()) {
        const bool expect = s.kind != SegmentKind::Prompt && !s.text.empty();
        CHECK(s.supervised == expect);
      }
    }
  }
  const auto r = make(Modality::ImageInput, true);
  CHECK(r.output_text() ==
        "Convert the provided image to text.\n\\begin{tabular}{|c|}\\end{tabular}\nStep-by-step reasoning:\nStep "
        "1.\nFinal answer: ONE.");
}

TEST_CASE("record serialization round-trips byte for byte") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Metadata meta;
    const int n_meta = rng.uniform_int(0, 4);
    for (int k = 0; k < n_meta; ++k) meta["k" + std::to_string(rng.uniform_int(0, 9))] = "v\"\n\t" + std::to_string(i);
    std::string cot = rng.bernoulli(0.2) ? "" : "Step-by-step reasoning:\n♥ é " + std::to_string(rng.next_u64());
    const bool convert = rng.bernoulli(0.5);
    const auto r = make(convert || rng.bernoulli(0.5) ? Modality::ImageInput : Modality::TextInput, convert, cot, meta);
    const std::string line = r.to_jsonl();
    const auto back = parse_record(line);
    CHECK(back.to_jsonl() == line);
    CHECK(back.id() == r.id());
  }
}

TEST_CASE("jsonl keys come in canonical order and ids are content digests") {
  const auto r = make(Modality::ImageInput, false);
  const std::string line = r.to_jsonl();
  std::size_t last = 0;
  for (const char* key : {"\"id\"", "\"task\"", "\"difficulty\"", "\"modality\"", "\"image_path\"", "\"segments\"",
                          "\"metadata\""}) {
    const auto at = line.find(key);
    REQUIRE(at != std::string::npos);
    CHECK(at >= last);
    last = at;
  }
  CHECK(r.id().size() == 16);
  CHECK(make(Modality::ImageInput, false, "other").id() != r.id());

  std::string tampered = line;
  tampered.replace(tampered.find("Read the table."), 4, "Skim");
  CHECK_THROWS_AS(parse_record(tampered), ParseError);
  CHECK_THROWS_AS(parse_record("{not json"), ParseError);
}

TEST_CASE("text helpers") {
  CHECK(number_word(9) == "NINE");
  CHECK(number_word(0) == "ZERO");
  CHECK(parse_number_word("SEVEN") == 7);
  CHECK_FALSE(parse_number_word("7").has_value());
  CHECK(normalize_whitespace("  a \n\t b  ") == "a b");
  CHECK(utf8_length("♥ab") == 3);
  CHECK(utf8_prefix("♥ab", 2) == "♥a");
  CHECK(encode_utf8(0x2665) == "♥");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // TEST_SUITE
