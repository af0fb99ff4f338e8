#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "doctest.h"
#include "json.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/text.hpp"
#include "s2h/mixer/mixer.hpp"
#include "s2h/tasks/tasks.hpp"

using namespace s2h;
using namespace s2h::mix;

namespace {

// Cheap stand-in for the generators: one record per form, labelled with
// everything a count check needs.
InstanceForms fake(TaskKind task, Difficulty d, std::uint64_t seed, std::size_t index) {
  const std::string tag = fmt::format("{}/{}/{}/{}", to_string(task), to_string(d), seed, index);
  auto rec = [&](const char* form, bool convert) {
    std::vector<Segment> segs{{SegmentKind::Prompt, "prompt " + tag, false}};
    if (convert) {
      segs.push_back({SegmentKind::ConvertPrompt, std::string(convert_prompt()), false});
      segs.push_back({SegmentKind::ConvertedText, "text " + tag, false});
    }
    segs.push_back({SegmentKind::Cot, std::string(kCotHeader) + "\n" + std::string(200, 'x'), false});
    segs.push_back({SegmentKind::Answer, "Final answer: 1", false});
    const bool text = std::string(form) == "text";
    return SupervisedRecord(task, d, text ? Modality::TextInput : Modality::ImageInput,
                            text ? std::nullopt : std::optional<std::string>("img/" + tag + ".png"), segs,
                            {{"form", form}, {"unique", tag}});
  };
  return {rec("text", false), rec("image", false), rec("image-via-text", true)};
}

struct Tally {
  std::size_t simple = 0, hard = 0;
  std::map<std::string, std::size_t> forms;  // simple records only
  std::map<std::string, std::size_t> per_unique;
  std::map<TaskKind, std::size_t> per_task;
};

Tally tally(const Mixture& m) {
  Tally t;
  for (const auto& r : m.records) {
    ++t.per_task[r.task()];
    if (r.difficulty() == Difficulty::Simple) {
      ++t.simple;
      ++t.forms[r.meta("form")];
      ++t.per_unique[r.meta("unique")];
    } else {
      ++t.hard;
      CHECK(r.modality() == Modality::TextInput);
      CHECK(r.find(SegmentKind::Cot) != nullptr);
      CHECK(r.find(SegmentKind::Answer) != nullptr);
    }
  }
  return t;
}

}  // namespace

TEST_SUITE("mixer") {

TEST_CASE("hand-applied examples") {
  MixturePlan p;
  p.supervision = SupervisionKind::MixPlus;
  p.n = 12;
  p.seed = 7;
  auto m = build_mixture(p, fake);
  auto t = tally(m);
  CHECK(m.records.size() == 12);
  CHECK(t.simple == 6);
  CHECK(t.hard == 6);
  CHECK(t.per_unique.size() == 2);
  CHECK(m.counts.epochs == 1.0);
  CHECK(t.forms["text"] == 2);
  CHECK(t.forms["image"] == 2);
  CHECK(t.forms["image-via-text"] == 2);

  p.supervision = SupervisionKind::Mix;
  p.n = 6;
  m = build_mixture(p, fake);
  t = tally(m);
  CHECK(t.simple == 6);
  CHECK(t.hard == 0);
  CHECK(t.per_unique.size() == 2);
  CHECK(m.counts.epochs == 1.0);

  p.supervision = SupervisionKind::Align;
  p.n = 4;
  m = build_mixture(p, fake);
  t = tally(m);
  CHECK(m.records.size() == 4);
  CHECK(t.per_unique.size() == 2);
  CHECK(t.forms["text"] == 2);
  CHECK(t.forms["image-via-text"] == 2);
  CHECK(t.forms.count("image") == 0);
}

TEST_CASE("closed-form counts for every supervision kind") {
  // n_simple, n_hard and n_unique as fractions of N; forms per instance.
  struct Row {
    SupervisionKind s;
    double simple, hard, unique;
    int forms;
  };
  const Row rows[] = {
      {SupervisionKind::Text, 1, 0, 1, 1},          {SupervisionKind::Image, 1, 0, 1, 1},
      {SupervisionKind::TextPlusImage, 1, 0, 1.0 / 3, 2}, {SupervisionKind::ImageViaText, 1, 0, 1.0 / 3, 1},
      {SupervisionKind::Mix, 1, 0, 1.0 / 3, 3},     {SupervisionKind::ImageViaTextPlus, 0.5, 0.5, 1.0 / 6, 1},
      {SupervisionKind::MixPlus, 0.5, 0.5, 1.0 / 6, 3}, {SupervisionKind::Align, 1, 0, 0.5, 2},
      {SupervisionKind::TextWarmup, 0.5, 0.5, 0.5, 1},
  };
  for (const Row& row : rows) {
    for (std::size_t n : {6u, 12u, 24u, 120u}) {
      CAPTURE(to_string(row.s));
      CAPTURE(n);
      MixturePlan p;
      p.supervision = row.s;
      p.n = n;
      p.seed = n * 31;
      const auto m = build_mixture(p, fake);
      const auto t = tally(m);
      const auto nu = static_cast<std::size_t>(std::llround(row.unique * n));
      CHECK(m.records.size() == n);
      CHECK(t.simple == static_cast<std::size_t>(std::llround(row.simple * n)));
      CHECK(t.hard == static_cast<std::size_t>(std::llround(row.hard * n)));
      CHECK(t.per_unique.size() == nu);
      CHECK(m.counts.n_unique == nu);
      const double e = row.simple * n / (nu * row.forms);
      CHECK(m.counts.epochs == doctest::Approx(e));
      // Every unique instance appears floor(e) or ceil(e) times per form.
      for (const auto& [u, k] : t.per_unique) {
        CHECK(k >= static_cast<std::size_t>(std::floor(e)) * row.forms);
        CHECK(k <= static_cast<std::size_t>(std::ceil(e)) * row.forms);
      }
      const FormSet fs = forms_for(row.s);
      CHECK(fs.count() == row.forms);
      for (const auto& [form, k] : t.forms) {
        CHECK(k >= static_cast<std::size_t>(std::floor(e)) * nu);
        CHECK(k <= static_cast<std::size_t>(std::ceil(e)) * nu);
        if (form == "text") CHECK(fs.text);
        if (form == "image") CHECK(fs.image);
        if (form == "image-via-text") CHECK(fs.image_via_text);
      }
    }
  }
}

TEST_CASE("indivisible sizes name the divisor") {
  MixturePlan p;
  p.supervision = SupervisionKind::MixPlus;
  p.n = 8;
  try {
    plan_counts(p);
    FAIL("expected an error");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("divisible by 3") != std::string::npos);
  }
  p.n = 0;
  CHECK_THROWS_AS(plan_counts(p), InvalidArgument);
  p.n = 12;
  CHECK_THROWS_AS(build_mixture(p, Source{}), InvalidArgument);
}

TEST_CASE("repeat-hard factor and multitask interleave") {
  MixturePlan p;
  p.supervision = SupervisionKind::MixPlus;
  p.n = 24;
  p.repeat_hard_factor = 3;
  auto m = build_mixture(p, fake);
  std::map<std::string, int> hard_ids;
  for (const auto& r : m.records)
    if (r.difficulty() == Difficulty::Hard) ++hard_ids[r.id()];
  CHECK(hard_ids.size() == 4);
  for (const auto& [id, k] : hard_ids) CHECK(k == 3);

  p.repeat_hard_factor = 1;
  p.n = 36;
  p.tasks = {TaskKind::TableReadout, TaskKind::GridNavigation, TaskKind::VisualAnalogy};
  m = build_mixture(p, fake);
  const auto t = tally(m);
  for (TaskKind task : p.tasks) CHECK(t.per_task.at(task) == 12);
}

TEST_CASE("order is a pure function of the seed") {
  MixturePlan p;
  p.supervision = SupervisionKind::TextPlusImage;
  p.n = 24;
  p.seed = 1;
  const auto a = build_mixture(p, fake), b = build_mixture(p, fake);
  CHECK(to_jsonl(a.records) == to_jsonl(b.records));
  p.seed = 2;
  CHECK(dataset_digest(build_mixture(p, fake).records) != dataset_digest(a.records));
}

TEST_CASE("phase sequences") {
  MixturePlan align;
  align.supervision = SupervisionKind::Align;
  align.n = 12;
  MixturePlan main;
  main.supervision = SupervisionKind::MixPlus;
  main.n = 24;
  const auto seq = build_phase_sequence({align, main}, fake);
  REQUIRE(seq.phases.size() == 2);
  const auto j = nlohmann::json::parse(seq.manifest);
  REQUIRE(j.at("phases").size() == 2);
  CHECK(j["phases"][0]["supervision"] == "align");
  CHECK(j["phases"][1]["n_hard"] == 12);
  CHECK(j["phases"][1]["digest"] == dataset_digest(seq.phases[1].records));
  for (const auto& r : seq.phases[0].records) CHECK(r.meta("phase") == "1-align");

  MixturePlan tw;
  tw.supervision = SupervisionKind::TextWarmup;
  tw.n = 12;
  const auto warm = build_phase_sequence({tw, main}, fake);
  std::size_t hard = 0;
  for (const auto& r : warm.phases[0].records) {
    CHECK(r.modality() == Modality::TextInput);
    hard += r.difficulty() == Difficulty::Hard;
  }
  CHECK(hard == 6);

  const auto single = build_phase_sequence({main}, fake);
  CHECK(nlohmann::json::parse(single.manifest)["phases"].size() == 1);
  CHECK_THROWS_AS(build_phase_sequence({}, fake), InvalidArgument);
}

TEST_CASE("works over the real generators") {
  const tasks::Options opts;
  Source real = [&](TaskKind task, Difficulty d, std::uint64_t seed, std::size_t i) {
    const auto inst = tasks::generate(task, d, derive_seed(seed, task, to_string(d), i), opts);
    return InstanceForms{tasks::make_record(inst, tasks::Form::Text, opts), tasks::make_record(inst, tasks::Form::Image, opts),
                         tasks::make_record(inst, tasks::Form::ImageViaText, opts)};
  };
  MixturePlan p;
  p.supervision = SupervisionKind::MixPlus;
  p.n = 12;
  p.tasks = {TaskKind::GridNavigation};
  const auto m = build_mixture(p, real);
  std::set<std::string> ids;
  for (const auto& r : m.records) {
    if (r.difficulty() == Difficulty::Simple) ids.insert(r.meta("instance"));
    CHECK(r.meta("supervision") == "mix+");
  }
  CHECK(ids.size() == 2);
}

TEST_CASE("cot schedule") {
  std::vector<SupervisedRecord> data;
  for (std::size_t i = 0; i < 1010; ++i) data.push_back(fake(TaskKind::TableReadout, Difficulty::Simple, 0, i).text);

  const auto out = apply_cot_schedule(data);
  const auto split = schedule_split(data.size(), {});
  CHECK(split.full == 303);
  CHECK(split.ramp == 404);
  CHECK(split.none == 303);

  for (std::size_t i = 0; i < split.full; ++i) CHECK(out[i].find(SegmentKind::Cot)->text == data[i].find(SegmentKind::Cot)->text);
  // First ramp record sits in the 100% bin; the last ramp record in the 0% bin.
  CHECK(out[split.full].find(SegmentKind::Cot)->text == data[split.full].find(SegmentKind::Cot)->text);
  const auto& last_ramp = *out[split.full + split.ramp - 1].find(SegmentKind::Cot);
  CHECK(last_ramp.text.empty());
  CHECK_FALSE(last_ramp.supervised);
  for (std::size_t i = split.full + split.ramp; i < out.size(); ++i) CHECK(out[i].find(SegmentKind::Cot)->text.empty());

  CHECK(bin_keep_percent(0, 101) == 100);
  CHECK(bin_keep_percent(50, 101) == 50);
  CHECK(bin_keep_percent(100, 101) == 0);

  // A 200-character CoT in the 50% bin keeps its first 100 characters.
  std::vector<SupervisedRecord> one;
  for (std::size_t i = 0; i < 1010; ++i) {
    auto f = fake(TaskKind::TableReadout, Difficulty::Simple, 1, i).text;
    auto segs = f.segments();
    segs[1].text = std::string(200, 'a' + static_cast<char>(i % 26));
    one.emplace_back(f.task(), f.difficulty(), f.modality(), f.image_path(), segs, f.metadata());
  }
  const auto cut = apply_cot_schedule(one);
  for (std::size_t i = 0; i < split.ramp; ++i) {
    if (ramp_bin(i, split.ramp, 101) != 50) continue;
    CHECK(cut[split.full + i].find(SegmentKind::Cot)->text == std::string(100, 'a' + static_cast<char>((split.full + i) % 26)));
    CHECK(cut[split.full + i].meta("cot_keep_percent") == "50");
  }

  std::vector<SupervisedRecord> short_set(data.begin(), data.begin() + 100);
  CHECK_THROWS_AS(apply_cot_schedule(short_set), InvalidArgument);
  CotSchedule bad;
  bad.none_frac = 0.5;
  CHECK_THROWS_AS(apply_cot_schedule(data, bad), InvalidArgument);
}

}  // TEST_SUITE
