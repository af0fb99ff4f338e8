#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "s2h/core/record.hpp"
#include "s2h/core/types.hpp"

namespace s2h::mix {

/// The three records one instance yields: text input, image input, and image
/// input with conversion. Hard records only use `text`.
struct InstanceForms {
  SupervisedRecord text;
  SupervisedRecord image;
  SupervisedRecord image_via_text;
};

/// Produces the forms of the index-th distinct instance of a task and
/// difficulty under a plan seed. Distinct indices must give distinct
/// instances; this is how the mixer samples without replacement.
using Source = std::function<InstanceForms(TaskKind task, Difficulty difficulty, std::uint64_t seed,
                                           std::size_t index)>;

/// Which forms enter the simple pool for a supervision kind.
struct FormSet {
  bool text = false;
  bool image = false;
  bool image_via_text = false;
  int count() const { return int(text) + int(image) + int(image_via_text); }
  bool operator==(const FormSet&) const = default;
};
FormSet forms_for(SupervisionKind s);

struct MixturePlan {
  SupervisionKind supervision = SupervisionKind::Mix;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  int repeat_hard_factor = 1;
  std::vector<TaskKind> tasks = {TaskKind::TableReadout};  // several = equal multitask mix
  Difficulty hard_difficulty = Difficulty::Hard;
  std::optional<std::size_t> n_unique_override;  // ablations that change the epoch count
  std::string phase;  // label written into every record; empty = none
};

/// Closed-form sizes of a plan. Epochs are n_simple / pool size; the pool is
/// n_unique times the number of forms.
struct MixtureCounts {
  std::size_t n_simple = 0;
  std::size_t n_hard = 0;
  std::size_t n_unique = 0;
  std::size_t pool = 0;
  double epochs = 0;
  std::size_t hard_unique = 0;
};

/// Throws InvalidArgument naming the divisor when n does not split evenly.
MixtureCounts plan_counts(const MixturePlan& plan);

struct Mixture {
  MixturePlan plan;
  MixtureCounts counts;
  std::vector<SupervisedRecord> records;
};

/// Build the simple pool, repeat it to n_simple after one shuffle, append
/// hard text records and shuffle again. Every step draws from plan.seed.
Mixture build_mixture(const MixturePlan& plan, const Source& source);

struct PhaseSequence {
  std::vector<Mixture> phases;
  std::string manifest;  // JSON: order, counts, seeds, content digests
};
PhaseSequence build_phase_sequence(const std::vector<MixturePlan>& plans, const Source& source);

/// SHA-256 of the canonical JSONL of a record list.
std::string dataset_digest(const std::vector<SupervisedRecord>& records);

struct CotSchedule {
  double full_frac = 0.3;
  double ramp_frac = 0.4;
  double none_frac = 0.3;
  int ramp_bins = 101;
};

/// Ordered sizes of the three stages for a dataset of n records.
struct ScheduleSplit {
  std::size_t full = 0, ramp = 0, none = 0;
};
ScheduleSplit schedule_split(std::size_t n, const CotSchedule& schedule);
/// Ramp bin of the i-th ramp record; bin b keeps (100 - b)% of the CoT for
/// the default 101 bins.
int ramp_bin(std::size_t i, std::size_t ramp, int bins);
/// Percentage of CoT code points kept in bin b.
int bin_keep_percent(int bin, int bins);

/// Progressive CoT removal: full, then a ramp of equal bins truncating the
/// CoT to a shrinking character fraction, then none. Records gain
/// "cot_keep_percent" metadata.
std::vector<SupervisedRecord> apply_cot_schedule(const std::vector<SupervisedRecord>& dataset,
                                                 const CotSchedule& schedule = {});

}  // namespace s2h::mix
