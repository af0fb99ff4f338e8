#include "s2h/cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "CLI11.hpp"
#include "json.hpp"

#include "s2h/core/digest.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/rng.hpp"
#include "s2h/core/text.hpp"
#include "s2h/evaluator/evaluator.hpp"
#include "s2h/gradalign/gradalign.hpp"
#include "s2h/mixer/mixer.hpp"

namespace s2h::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// A flag value that parses but makes no sense with the others.
class UsageError : public Error {
 public:
  using Error::Error;
};

template <class F>
CLI::Validator parses_as(F parse, std::string name) {
  return CLI::Validator(
      [parse](std::string& s) -> std::string {
        try {
          parse(s);
          return {};
        } catch (const std::exception& e) {
          return e.what();
        }
      },
      name);
}

const CLI::Validator kTask = parses_as([](const std::string& s) { parse_task(s); }, "TASK");
const CLI::Validator kDifficulty = parses_as([](const std::string& s) { parse_difficulty(s); }, "DIFFICULTY");
const CLI::Validator kSupervision = parses_as([](const std::string& s) { parse_supervision(s); }, "SUPERVISION");
const CLI::Validator kVariant = parses_as([](const std::string& s) { analogy::parse_variant(s); }, "VARIANT");
const CLI::Validator kTextMode = CLI::IsMember({"lossy", "lossless"});
const CLI::Validator kForm = CLI::IsMember({"text", "image", "image-via-text", "ivt", "all"});

struct Shared {
  std::string heldout_file;
  std::string style_file;
  std::string text_mode = "lossy";
  unsigned jobs = 0;
  bool json = false;
  bool no_images = false;
};

void add_shared(CLI::App* cmd, Shared& s, bool generation) {
  if (generation) {
    cmd->add_option("--heldout-file", s.heldout_file, "Held-out (domain, relation) pairs, one per line")
        ->check(CLI::ExistingFile);
    cmd->add_option("--style-file", s.style_file, "Render style (key = value lines)")->check(CLI::ExistingFile);
    cmd->add_option("--text-mode", s.text_mode, "Analogy text form")->check(kTextMode)->capture_default_str();
    cmd->add_flag("--no-images", s.no_images, "Skip writing PNG files");
  }
  cmd->add_option("--jobs", s.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  cmd->add_flag("--json", s.json, "Print a machine-readable summary");
}

tasks::Options task_options(const Shared& s) {
  tasks::Options o;
  if (!s.heldout_file.empty()) o.heldout = analogy::load_heldout(s.heldout_file);
  o.text_mode = s.text_mode == "lossless" ? analogy::TextMode::Lossless : analogy::TextMode::Lossy;
  return o;
}

render::RenderStyle style_of(const Shared& s) {
  return s.style_file.empty() ? render::default_style() : render::load_style(s.style_file);
}

void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", p.string(), ec.message()));
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())))
    throw IoError("cannot write " + p.string());
}

struct ImageSet {
  std::size_t count = 0;
  std::string digest;  // over sorted "path sha256" lines
};

// Render every distinct image a record list references into root.
ImageSet write_images(const std::vector<SupervisedRecord>& records, const fs::path& root, const Shared& s) {
  std::map<std::string, const SupervisedRecord*> wanted;
  for (const auto& r : records)
    if (r.image_path()) wanted.emplace(*r.image_path(), &r);
  std::vector<std::pair<std::string, const SupervisedRecord*>> jobs(wanted.begin(), wanted.end());
  std::vector<std::string> hashes(jobs.size());
  const auto style = style_of(s);
  const RenderCache cache = RenderCache::from_env();
  std::set<fs::path> dirs;
  for (const auto& [path, rec] : jobs) dirs.insert((root / path).parent_path());
  for (const auto& d : dirs) ensure_dir(d);
  parallel_for(jobs.size(), s.jobs, [&](std::size_t i) {
    const auto inst = tasks::instance_from_record(*jobs[i].second);
    const auto bytes = cache.render(inst, style);
    render::write_file((root / jobs[i].first).string(), bytes);
    hashes[i] = sha256_hex(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  });
  std::string lines;
  for (std::size_t i = 0; i < jobs.size(); ++i) lines += jobs[i].first + " " + hashes[i] + "\n";
  return {jobs.size(), sha256_hex(lines)};
}

ordered_json form_counts(const std::vector<SupervisedRecord>& records) {
  std::map<std::string, std::size_t> c;
  for (const auto& r : records) ++c[r.meta("form", "?") + "/" + std::string(to_string(r.difficulty()))];
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : c) j[k] = v;
  return j;
}

void report(std::ostream& out, std::ostream& err, const Shared& s, const std::string& cmd, const ordered_json& summary,
            const std::string& human) {
  ordered_json brief = summary;
  brief.erase("config");
  err << fmt::format("{} {}: {}\n", kProgram, cmd, brief.dump());
  if (s.json) out << summary.dump(2) << "\n";
  else out << human << "\n";
}

// gen ----------------------------------------------------------------------

struct GenArgs {
  Shared s;
  std::string task, difficulty, variant, form = "image", out;
  std::size_t n = 1;
  std::uint64_t seed = 0;
};

TaskKind resolve_task(const std::string& task, const std::string& variant) {
  TaskKind t = parse_task(task);
  if (variant.empty()) return t;
  if (!is_analogy_task(t)) throw UsageError("--variant applies to visual analogy tasks only");
  return analogy::parse_variant(variant) == analogy::Variant::PatternHeldout ? TaskKind::PatternHeldoutVisualAnalogy
                                                                             : TaskKind::VisualAnalogy;
}

std::vector<tasks::Form> forms_of(const std::string& f) {
  if (f == "all") return {tasks::Form::Text, tasks::Form::Image, tasks::Form::ImageViaText};
  return {tasks::parse_form(f)};
}

int cmd_gen(const GenArgs& a, const std::string& config, std::ostream& out, std::ostream& err) {
  const TaskKind task = resolve_task(a.task, a.variant);
  const Difficulty diff = parse_difficulty(a.difficulty);
  if (!difficulty_valid_for(task, diff))
    throw UsageError(fmt::format("difficulty {} is not defined for {}", a.difficulty, to_string(task)));
  const auto opts = task_options(a.s);
  const auto forms = forms_of(a.form);
  std::vector<std::vector<SupervisedRecord>> per(a.n);
  parallel_for(a.n, a.s.jobs, [&](std::size_t i) {
    const auto inst = tasks::generate(task, diff, gen_instance_seed(a.seed, task, diff, i), opts);
    for (tasks::Form f : forms) per[i].push_back(tasks::make_record(inst, f, opts));
  });
  std::vector<SupervisedRecord> records;
  for (auto& v : per)
    for (auto& r : v) records.push_back(std::move(r));
  std::sort(records.begin(), records.end(), [](const auto& x, const auto& y) { return x.id() < y.id(); });

  const fs::path root(a.out);
  ensure_dir(root);
  const std::string jsonl = to_jsonl(records);
  write_text(root / "records.jsonl", jsonl);
  ImageSet images;
  if (!a.s.no_images) images = write_images(records, root, a.s);

  ordered_json summary;
  summary["command"] = "gen";
  summary["task"] = to_string(task);
  summary["difficulty"] = to_string(diff);
  summary["n"] = a.n;
  summary["seed"] = a.seed;
  summary["records"] = records.size();
  summary["records_digest"] = sha256_hex(jsonl);
  summary["images"] = images.count;
  summary["images_digest"] = images.digest;
  summary["config"] = config;
  write_text(root / "manifest.json", summary.dump(2) + "\n");
  report(out, err, a.s, "gen", summary,
         fmt::format("wrote {} records and {} images to {}", records.size(), images.count, a.out));
  return 0;
}

// render -------------------------------------------------------------------

struct RenderArgs {
  Shared s;
  std::string in, out;
};

int cmd_render(const RenderArgs& a, std::ostream& out, std::ostream& err) {
  const auto records = read_jsonl(a.in);
  const fs::path root(a.out);
  ensure_dir(root);
  const ImageSet images = write_images(records, root, a.s);
  ordered_json summary;
  summary["command"] = "render";
  summary["records"] = records.size();
  summary["images"] = images.count;
  summary["images_digest"] = images.digest;
  summary["style_digest"] = sha256_hex(render::style_to_text(style_of(a.s)));
  report(out, err, a.s, "render", summary, fmt::format("rendered {} images into {}", images.count, a.out));
  return 0;
}

// mix ----------------------------------------------------------------------

struct MixArgs {
  Shared s;
  std::string supervision, phases, out, hard_difficulty = "hard";
  std::vector<std::string> tasks = {"table-readout"};
  std::size_t n = 0;
  std::size_t n_unique = 0;
  std::uint64_t seed = 0;
  int repeat_hard = 1;
  bool cot_schedule = false;
};

mix::Source make_source(const tasks::Options& opts) {
  return [opts](TaskKind task, Difficulty d, std::uint64_t seed, std::size_t index) {
    const auto inst = tasks::generate(task, d, derive_seed(seed, task, to_string(d), index), opts);
    return mix::InstanceForms{tasks::make_record(inst, tasks::Form::Text, opts),
                              tasks::make_record(inst, tasks::Form::Image, opts),
                              tasks::make_record(inst, tasks::Form::ImageViaText, opts)};
  };
}

mix::MixturePlan base_plan(const MixArgs& a) {
  mix::MixturePlan p;
  p.seed = a.seed;
  p.repeat_hard_factor = a.repeat_hard;
  p.tasks.clear();
  for (const auto& t : a.tasks) p.tasks.push_back(parse_task(t));
  p.hard_difficulty = parse_difficulty(a.hard_difficulty);
  if (a.n_unique) p.n_unique_override = a.n_unique;
  return p;
}

ordered_json counts_json(const mix::MixtureCounts& c) {
  ordered_json j;
  j["n_simple"] = c.n_simple;
  j["n_hard"] = c.n_hard;
  j["n_unique"] = c.n_unique;
  j["pool"] = c.pool;
  j["epochs"] = c.epochs;
  return j;
}

int cmd_mix(const MixArgs& a, const std::string& config, std::ostream& out, std::ostream& err) {
  const auto opts = task_options(a.s);
  const auto source = make_source(opts);
  ordered_json summary;
  summary["command"] = "mix";
  summary["seed"] = a.seed;

  if (!a.phases.empty()) {
    if (a.out.empty()) throw UsageError("--phases needs --out");
    std::vector<mix::MixturePlan> plans;
    std::size_t k = 0;
    for (std::string_view spec : split(a.phases, ",")) {
      const auto colon = spec.find(':');
      if (colon == std::string_view::npos) throw UsageError(fmt::format("phase '{}' is not SUPERVISION:N", spec));
      mix::MixturePlan p = base_plan(a);
      p.supervision = parse_supervision(trim(spec.substr(0, colon)));
      p.n = std::stoull(std::string(trim(spec.substr(colon + 1))));
      p.seed = derive_seed(a.seed, p.tasks.front(), "phase", k++);
      plans.push_back(std::move(p));
    }
    const auto seq = mix::build_phase_sequence(plans, source);
    const fs::path root(a.out);
    ensure_dir(root);
    std::vector<SupervisedRecord> all;
    for (std::size_t i = 0; i < seq.phases.size(); ++i) {
      const auto& m = seq.phases[i];
      write_text(root / fmt::format("phase-{}.jsonl", i + 1), to_jsonl(m.records));
      all.insert(all.end(), m.records.begin(), m.records.end());
    }
    write_text(root / "phases.json", seq.manifest + "\n");
    ImageSet images;
    if (!a.s.no_images) images = write_images(all, root, a.s);
    summary["phases"] = ordered_json::parse(seq.manifest)["phases"];
    summary["images"] = images.count;
    summary["images_digest"] = images.digest;
    summary["config"] = config;
    write_text(root / "manifest.json", summary.dump(2) + "\n");
    report(out, err, a.s, "mix", summary,
           fmt::format("wrote {} phases ({} records) to {}", seq.phases.size(), all.size(), a.out));
    return 0;
  }

  if (a.supervision.empty() || a.n == 0) throw UsageError("mix needs --supervision and --n (or --phases)");
  mix::MixturePlan plan = base_plan(a);
  plan.supervision = parse_supervision(a.supervision);
  plan.n = a.n;
  auto m = mix::build_mixture(plan, source);
  if (a.cot_schedule) m.records = mix::apply_cot_schedule(m.records);
  const std::string jsonl = to_jsonl(m.records);
  summary["supervision"] = to_string(plan.supervision);
  summary["n"] = m.records.size();
  summary["counts"] = counts_json(m.counts);
  summary["forms"] = form_counts(m.records);
  summary["records_digest"] = sha256_hex(jsonl);
  if (a.out.empty()) {
    // Records go to stdout; the summary goes to stderr only.
    out << jsonl;
    err << fmt::format("{} mix: {}\n", kProgram, summary.dump());
    return 0;
  }
  const fs::path root(a.out);
  ensure_dir(root);
  write_text(root / "records.jsonl", jsonl);
  ImageSet images;
  if (!a.s.no_images) images = write_images(m.records, root, a.s);
  summary["images"] = images.count;
  summary["images_digest"] = images.digest;
  summary["config"] = config;
  write_text(root / "manifest.json", summary.dump(2) + "\n");
  report(out, err, a.s, "mix", summary, fmt::format("wrote {} records to {}", m.records.size(), a.out));
  return 0;
}

// eval ---------------------------------------------------------------------

struct EvalArgs {
  Shared s;
  std::string task, gold, gen, out;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const auto golds = read_jsonl(a.gold);
  std::map<std::string, const SupervisedRecord*> by_id;
  for (const auto& r : golds) by_id.emplace(r.id(), &r);
  const auto gens = eval::read_generations(a.gen);
  std::optional<TaskKind> only;
  if (!a.task.empty()) only = parse_task(a.task);

  std::vector<std::pair<const eval::Generation*, const SupervisedRecord*>> work;
  std::size_t skipped = 0;
  for (const auto& g : gens) {
    auto it = by_id.find(g.id);
    if (it == by_id.end()) throw ParseError(fmt::format("generation id {} is not in the gold set", g.id));
    if (only && it->second->task() != *only) {
      ++skipped;
      continue;
    }
    work.emplace_back(&g, it->second);
  }
  std::vector<eval::ExampleResult> results(work.size());
  parallel_for(work.size(), a.s.jobs,
               [&](std::size_t i) { results[i] = eval::evaluate_example(*work[i].first, *work[i].second); });
  if (!a.out.empty()) {
    std::string lines;
    for (const auto& r : results) lines += eval::verdict_jsonl(r) + "\n";
    write_text(a.out, lines);
  }
  auto agg = ordered_json::parse(eval::aggregate_json(results));
  if (skipped) agg["skipped_other_tasks"] = skipped;
  err << fmt::format("{} eval: evaluated {} generations\n", kProgram, results.size());
  out << agg.dump(2) << "\n";
  return 0;
}

// grad ---------------------------------------------------------------------

struct GradArgs {
  Shared s;
  std::vector<std::string> in;
  std::string manifest;
  grad::AdamParams adam;
  int toy_families = 0;
  double eta = 1e-6;
  std::uint64_t seed = 0;
};

int cmd_grad(const GradArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<grad::GradientDump> dumps;
  for (const auto& f : a.in) {
    auto d = grad::read_dump(f);
    d.checkpoint_tag = fs::path(f).stem().string();
    dumps.push_back(std::move(d));
  }
  if (!a.manifest.empty())
    for (auto& d : grad::load_manifest(a.manifest)) dumps.push_back(std::move(d));
  if (dumps.empty() && a.toy_families == 0) throw UsageError("grad needs --in, --manifest or --toy-families");

  ordered_json summary;
  summary["command"] = "grad";
  ordered_json rows = ordered_json::array();
  std::string human;
  for (const auto& d : dumps) {
    ordered_json j;
    j["checkpoint"] = d.checkpoint_tag;
    j["dim"] = d.dim;
    std::size_t hard = 0;
    for (const auto& v : d.vectors) hard += v.split == grad::Split::Hard;
    j["n_simple"] = d.vectors.size() - hard;
    j["n_hard"] = hard;
    j["alignment"] = grad::alignment_score(d);
    j["cosine"] = grad::cosine_score(d);
    j["adam_alignment"] = grad::adam_update_alignment(d, a.adam);
    j["simple_norm"] = grad::mean_norm(d, grad::Split::Simple);
    j["hard_norm"] = grad::mean_norm(d, grad::Split::Hard);
    human += fmt::format("{}: alignment {:.6g} cosine {:.6g} adam {:.6g} simple-norm {:.6g}\n", d.checkpoint_tag,
                         j["alignment"].get<double>(), j["cosine"].get<double>(), j["adam_alignment"].get<double>(),
                         j["simple_norm"].get<double>());
    rows.push_back(std::move(j));
  }
  summary["checkpoints"] = std::move(rows);
  if (a.toy_families > 0) {
    ordered_json toy = ordered_json::array();
    double worst = 0;
    for (int k = 0; k < a.toy_families; ++k) {
      const auto fam = grad::random_psd_family(derive_seed(a.seed, TaskKind::TableReadout, "toy", k), 6, 5, 5);
      const auto r = grad::first_order_ratio_check(fam, a.eta);
      worst = std::max(worst, r.abs_diff);
      toy.push_back({{"empirical_ratio", r.empirical_ratio}, {"score", r.score}, {"abs_diff", r.abs_diff}});
    }
    summary["toy_check"] = {{"eta", a.eta}, {"families", std::move(toy)}, {"max_abs_diff", worst}};
    human += fmt::format("toy check: {} families at eta {}, max |ratio - score| = {:.3g}\n", a.toy_families, a.eta, worst);
  }
  if (!human.empty()) human.pop_back();
  report(out, err, a.s, "grad", summary, human);
  return 0;
}

// stats --------------------------------------------------------------------

struct StatsArgs {
  Shared s;
  std::vector<std::string> in;
};

struct Running {
  double min = 0, max = 0, sum = 0;
  std::size_t n = 0;
  void add(double x) {
    if (n == 0 || x < min) min = x;
    if (n == 0 || x > max) max = x;
    sum += x;
    ++n;
  }
  ordered_json json() const { return {{"min", min}, {"mean", n ? sum / double(n) : 0.0}, {"max", max}}; }
};

int cmd_stats(const StatsArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<SupervisedRecord> records;
  for (const auto& f : a.in) {
    auto r = read_jsonl(f);
    records.insert(records.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }
  struct Group {
    std::size_t n = 0;
    std::map<std::string, std::size_t> forms;
    std::map<std::string, Running> meta;
  };
  std::map<std::pair<std::string, std::string>, Group> groups;
  static const char* kNumeric[] = {"length", "segments", "dfs_steps", "objects", "obstacle_kinds"};
  for (const auto& r : records) {
    auto& g = groups[{std::string(to_string(r.task())), std::string(to_string(r.difficulty()))}];
    ++g.n;
    ++g.forms[r.meta("form", "?")];
    for (const char* k : kNumeric)
      if (auto it = r.metadata().find(k); it != r.metadata().end()) g.meta[k].add(std::stod(it->second));
    if (const Segment* c = r.find(SegmentKind::Cot)) g.meta["cot_chars"].add(static_cast<double>(utf8_length(c->text)));
  }
  ordered_json summary;
  summary["command"] = "stats";
  summary["records"] = records.size();
  summary["digest"] = mix::dataset_digest(records);
  ordered_json gj = ordered_json::array();
  std::string human = fmt::format("{} records\n", records.size());
  for (const auto& [key, g] : groups) {
    ordered_json j;
    j["task"] = key.first;
    j["difficulty"] = key.second;
    j["n"] = g.n;
    ordered_json forms = ordered_json::object();
    for (const auto& [f, c] : g.forms) forms[f] = c;
    j["forms"] = std::move(forms);
    std::string line = fmt::format("{} {}: {} records", key.first, key.second, g.n);
    for (const auto& [k, r] : g.meta) {
      j[k] = r.json();
      line += fmt::format(", {} {:.0f}..{:.0f} (mean {:.2f})", k, r.min, r.max, r.n ? r.sum / double(r.n) : 0.0);
    }
    human += line + "\n";
    gj.push_back(std::move(j));
  }
  summary["groups"] = std::move(gj);
  human.pop_back();
  report(out, err, a.s, "stats", summary, human);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic simple-to-hard multimodal reasoning data: generate, render, mix, evaluate, analyze",
               kProgram};
  app.set_config("--config", "", "Read flags from a config file (key = value lines, [subcommand] sections)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate instances and write records and images");
  g->add_option("--task", gen.task, "Task name")->required()->check(kTask);
  g->add_option("--difficulty", gen.difficulty, "simple, medium or hard")->required()->check(kDifficulty);
  g->add_option("--variant", gen.variant, "Analogy variant: standard or pattern-heldout")->check(kVariant);
  g->add_option("--n", gen.n, "Number of instances")->capture_default_str();
  g->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  g->add_option("--form", gen.form, "text, image, image-via-text or all")->check(kForm)->capture_default_str();
  g->add_option("--out", gen.out, "Output directory")->required();
  add_shared(g, gen.s, true);

  RenderArgs ren;
  auto* r = app.add_subcommand("render", "Render the images referenced by a record file");
  r->add_option("--in", ren.in, "Records JSONL")->required()->check(CLI::ExistingFile);
  r->add_option("--out", ren.out, "Image root directory")->required();
  add_shared(r, ren.s, true);

  MixArgs mx;
  auto* m = app.add_subcommand("mix", "Build a training mixture for a supervision kind");
  auto* sup = m->add_option("--supervision", mx.supervision, "Supervision kind")->check(kSupervision);
  m->add_option("--n", mx.n, "Mixture size");
  m->add_option("--seed", mx.seed, "Master seed")->capture_default_str();
  m->add_option("--task", mx.tasks, "Task (repeat for an equal multitask mix)")->check(kTask)->capture_default_str();
  m->add_option("--phases", mx.phases, "Phase list SUPERVISION:N,SUPERVISION:N,...")->excludes(sup);
  m->add_option("--repeat-hard", mx.repeat_hard, "Repeat factor of hard text records")->capture_default_str();
  m->add_option("--n-unique", mx.n_unique, "Override the number of unique simple instances");
  m->add_option("--hard-difficulty", mx.hard_difficulty, "Difficulty of added hard records")
      ->check(kDifficulty)
      ->capture_default_str();
  m->add_flag("--cot-schedule", mx.cot_schedule, "Apply progressive CoT removal (30/40/30, 101 bins)");
  m->add_option("--out", mx.out, "Output directory (records go to stdout when omitted)");
  add_shared(m, mx.s, true);

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Score generations against gold records");
  e->add_option("--task", ev.task, "Only evaluate gold records of this task")->check(kTask);
  e->add_option("--gold", ev.gold, "Gold records JSONL")->required()->check(CLI::ExistingFile);
  e->add_option("--gen", ev.gen, "Generations JSONL {id, text}")->required()->check(CLI::ExistingFile);
  e->add_option("--out", ev.out, "Write per-example verdicts JSONL here");
  add_shared(e, ev.s, false);

  GradArgs gr;
  auto* gd = app.add_subcommand("grad", "Gradient alignment scores of gradient dumps");
  gd->add_option("--in", gr.in, "Gradient dump file (repeatable)")->check(CLI::ExistingFile);
  gd->add_option("--manifest", gr.manifest, "Manifest JSON mapping checkpoint tags to dumps")->check(CLI::ExistingFile);
  gd->add_option("--beta1", gr.adam.beta1, "Adam beta1")->capture_default_str();
  gd->add_option("--beta2", gr.adam.beta2, "Adam beta2")->capture_default_str();
  gd->add_option("--eps", gr.adam.eps, "Adam epsilon")->capture_default_str();
  gd->add_option("--toy-families", gr.toy_families, "Also run the first-order check on K random quadratic families");
  gd->add_option("--eta", gr.eta, "Step size of the first-order check")->capture_default_str();
  gd->add_option("--seed", gr.seed, "Seed of the toy families")->capture_default_str();
  add_shared(gd, gr.s, false);

  StatsArgs st;
  auto* sc = app.add_subcommand("stats", "Corpus statistics of record files");
  sc->add_option("--in", st.in, "Records JSONL (repeatable)")->required()->check(CLI::ExistingFile);
  add_shared(sc, st.s, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int rc = app.exit(ex, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::string config;
    for (const CLI::App* sub : app.get_subcommands()) config = sub->config_to_str(true, false);
    if (*g) return cmd_gen(gen, config, out, err);
    if (*r) return cmd_render(ren, out, err);
    if (*m) return cmd_mix(mx, config, out, err);
    if (*e) return cmd_eval(ev, out, err);
    if (*gd) return cmd_grad(gr, out, err);
    if (*sc) return cmd_stats(st, out, err);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace s2h::cli
