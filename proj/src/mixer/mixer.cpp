#include "s2h/mixer/mixer.hpp"

#include <cmath>

#include <fmt/format.h>
#include "json.hpp"

#include "s2h/core/digest.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/rng.hpp"
#include "s2h/core/text.hpp"

namespace s2h::mix {

FormSet forms_for(SupervisionKind s) {
  switch (s) {
    case SupervisionKind::Text: return {true, false, false};
    case SupervisionKind::Image: return {false, true, false};
    case SupervisionKind::TextPlusImage: return {true, true, false};
    case SupervisionKind::ImageViaText: return {false, false, true};
    case SupervisionKind::Mix: return {true, true, true};
    case SupervisionKind::ImageViaTextPlus: return {false, false, true};
    case SupervisionKind::MixPlus: return {true, true, true};
    case SupervisionKind::Align: return {true, false, true};
    case SupervisionKind::TextWarmup: return {true, false, false};
  }
  return {};
}

namespace {

void require_divisible(std::size_t n, std::size_t d, std::string_view what, SupervisionKind s) {
  if (d == 0 || n % d != 0)
    throw InvalidArgument(fmt::format("{} = {} must be divisible by {} for {}", what, n, d, to_string(s)));
}

// n_simple and n_unique before any override, as fractions of n.
struct Ratios {
  std::size_t simple_div;  // n_simple = n / simple_div
  std::size_t unique_div;  // n_unique = n_simple / unique_div
};

Ratios ratios(SupervisionKind s) {
  switch (s) {
    case SupervisionKind::Text:
    case SupervisionKind::Image: return {1, 1};
    case SupervisionKind::TextPlusImage:
    case SupervisionKind::ImageViaText:
    case SupervisionKind::Mix: return {1, 3};
    case SupervisionKind::ImageViaTextPlus:
    case SupervisionKind::MixPlus: return {2, 3};
    case SupervisionKind::Align: return {1, 2};
    case SupervisionKind::TextWarmup: return {2, 1};
  }
  return {1, 1};
}

SupervisedRecord relabel(const SupervisedRecord& r, const MixturePlan& plan) {
  Metadata m = r.metadata();
  m["supervision"] = std::string(to_string(plan.supervision));
  if (!plan.phase.empty()) m["phase"] = plan.phase;
  return SupervisedRecord(r.task(), r.difficulty(), r.modality(), r.image_path(), r.segments(), std::move(m));
}

MixturePlan per_task_plan(const MixturePlan& plan) {
  MixturePlan p = plan;
  p.tasks = {plan.tasks.front()};
  p.n = plan.n / plan.tasks.size();
  if (plan.n_unique_override) p.n_unique_override = *plan.n_unique_override / plan.tasks.size();
  return p;
}

}  // namespace

MixtureCounts plan_counts(const MixturePlan& plan) {
  if (plan.n == 0) throw InvalidArgument("mixture size must be positive");
  if (plan.tasks.empty()) throw InvalidArgument("mixture needs at least one task");
  if (plan.repeat_hard_factor < 1) throw InvalidArgument("repeat_hard_factor must be at least 1");
  const std::size_t m = plan.tasks.size();
  require_divisible(plan.n, m, "N", plan.supervision);
  const Ratios r = ratios(plan.supervision);
  const std::size_t per_task = plan.n / m;
  require_divisible(per_task, r.simple_div, "N per task", plan.supervision);

  MixtureCounts c;
  c.n_simple = plan.n / r.simple_div;
  c.n_hard = includes_hard_text(plan.supervision) ? plan.n - c.n_simple : 0;
  if (plan.n_unique_override) {
    c.n_unique = *plan.n_unique_override;
    if (c.n_unique == 0) throw InvalidArgument("unique count must be positive");
  } else {
    require_divisible(per_task / r.simple_div, r.unique_div, "N_simple per task", plan.supervision);
    c.n_unique = c.n_simple / r.unique_div;
  }
  require_divisible(c.n_unique, m, "N_unique", plan.supervision);
  const std::size_t r_hard = static_cast<std::size_t>(plan.repeat_hard_factor);
  require_divisible(c.n_hard, m * r_hard, "N_hard", plan.supervision);
  c.hard_unique = c.n_hard / r_hard;
  c.pool = c.n_unique * static_cast<std::size_t>(forms_for(plan.supervision).count());
  c.epochs = static_cast<double>(c.n_simple) / static_cast<double>(c.pool);
  return c;
}

Mixture build_mixture(const MixturePlan& plan, const Source& source) {
  if (!source) throw InvalidArgument("mixture source is empty");
  Mixture out;
  out.plan = plan;
  out.counts = plan_counts(plan);
  const FormSet forms = forms_for(plan.supervision);
  const MixturePlan sub = per_task_plan(plan);
  const MixtureCounts sc = plan_counts(sub);

  for (TaskKind task : plan.tasks) {
    Rng rng(derive_seed(plan.seed, task, "mix", 0));
    std::vector<SupervisedRecord> pool;
    pool.reserve(sc.pool);
    for (std::size_t t = 0; t < sc.n_unique; ++t) {
      InstanceForms f = source(task, Difficulty::Simple, plan.seed, t);
      if (forms.text) pool.push_back(relabel(f.text, plan));
      if (forms.image) pool.push_back(relabel(f.image, plan));
      if (forms.image_via_text) pool.push_back(relabel(f.image_via_text, plan));
    }
    if (pool.empty()) throw InvalidArgument("mixture source produced no records");
    rng.shuffle(pool);
    // Repeat e times: the first e * |S| elements of repeated copies.
    for (std::size_t i = 0; i < sc.n_simple; ++i) out.records.push_back(pool[i % pool.size()]);

    for (std::size_t t = 0; t < sc.hard_unique; ++t) {
      SupervisedRecord hard = relabel(source(task, plan.hard_difficulty, plan.seed, t).text, plan);
      for (int k = 0; k < plan.repeat_hard_factor; ++k) out.records.push_back(hard);
    }
  }
  Rng final_rng(derive_seed(plan.seed, plan.tasks.front(), "mix-final", plan.tasks.size()));
  final_rng.shuffle(out.records);
  return out;
}

std::string dataset_digest(const std::vector<SupervisedRecord>& records) {
  return sha256_hex(to_jsonl(records));
}

PhaseSequence build_phase_sequence(const std::vector<MixturePlan>& plans, const Source& source) {
  if (plans.empty()) throw InvalidArgument("phase sequence needs at least one phase");
  PhaseSequence seq;
  nlohmann::ordered_json phases = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < plans.size(); ++i) {
    MixturePlan p = plans[i];
    if (p.phase.empty()) p.phase = fmt::format("{}-{}", i + 1, to_string(p.supervision));
    Mixture m = build_mixture(p, source);
    nlohmann::ordered_json j;
    j["index"] = i;
    j["phase"] = p.phase;
    j["supervision"] = to_string(p.supervision);
    j["n"] = p.n;
    j["seed"] = p.seed;
    j["n_simple"] = m.counts.n_simple;
    j["n_hard"] = m.counts.n_hard;
    j["n_unique"] = m.counts.n_unique;
    j["epochs"] = m.counts.epochs;
    j["repeat_hard_factor"] = p.repeat_hard_factor;
    auto tasks = nlohmann::ordered_json::array();
    for (TaskKind t : p.tasks) tasks.push_back(to_string(t));
    j["tasks"] = std::move(tasks);
    j["text_only"] = p.supervision == SupervisionKind::TextWarmup || p.supervision == SupervisionKind::Text;
    j["digest"] = dataset_digest(m.records);
    phases.push_back(std::move(j));
    seq.phases.push_back(std::move(m));
  }
  nlohmann::ordered_json manifest;
  manifest["version"] = 1;
  manifest["phases"] = std::move(phases);
  seq.manifest = manifest.dump(2);
  return seq;
}

ScheduleSplit schedule_split(std::size_t n, const CotSchedule& s) {
  if (s.full_frac < 0 || s.ramp_frac < 0 || s.none_frac < 0 ||
      std::abs(s.full_frac + s.ramp_frac + s.none_frac - 1.0) > 1e-9)
    throw InvalidArgument("CoT schedule fractions must be nonnegative and sum to 1");
  if (s.ramp_bins < 2) throw InvalidArgument("CoT schedule needs at least two ramp bins");
  if (n < static_cast<std::size_t>(s.ramp_bins))
    throw InvalidArgument(fmt::format("dataset of {} records is shorter than {} ramp bins", n, s.ramp_bins));
  ScheduleSplit out;
  out.full = static_cast<std::size_t>(std::llround(s.full_frac * static_cast<double>(n)));
  out.ramp = static_cast<std::size_t>(std::llround(s.ramp_frac * static_cast<double>(n)));
  if (out.full + out.ramp > n) out.ramp = n - out.full;
  out.none = n - out.full - out.ramp;
  return out;
}

int ramp_bin(std::size_t i, std::size_t ramp, int bins) {
  if (i >= ramp) throw InvalidArgument("ramp index out of range");
  return static_cast<int>(i * static_cast<std::size_t>(bins) / ramp);
}

int bin_keep_percent(int bin, int bins) { return 100 * (bins - 1 - bin) / (bins - 1); }

std::vector<SupervisedRecord> apply_cot_schedule(const std::vector<SupervisedRecord>& dataset,
                                                 const CotSchedule& schedule) {
  const ScheduleSplit split = schedule_split(dataset.size(), schedule);
  std::vector<SupervisedRecord> out;
  out.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    int keep = 100;
    if (i >= split.full + split.ramp) keep = 0;
    else if (i >= split.full) keep = bin_keep_percent(ramp_bin(i - split.full, split.ramp, schedule.ramp_bins), schedule.ramp_bins);
    const SupervisedRecord& r = dataset[i];
    std::vector<Segment> segs = r.segments();
    for (Segment& s : segs) {
      if (s.kind != SegmentKind::Cot) continue;
      const std::size_t len = utf8_length(s.text);
      s.text = utf8_prefix(s.text, len * static_cast<std::size_t>(keep) / 100);
    }
    Metadata m = r.metadata();
    m["cot_keep_percent"] = std::to_string(keep);
    out.emplace_back(r.task(), r.difficulty(), r.modality(), r.image_path(), std::move(segs), std::move(m));
  }
  return out;
}

}  // namespace s2h::mix
