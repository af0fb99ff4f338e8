#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "s2h/cli/cli.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/text.hpp"
#include "support.hpp"

using namespace s2h;
namespace fs = std::filesystem;

namespace {

std::size_t count_files(const fs::path& root, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(root)) n += e.is_regular_file() && e.path().extension() == ext;
  return n;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (auto l : split_lines(s)) n += !trim(l).empty();
  return n;
}

nlohmann::json manifest(const std::string& dir) { return nlohmann::json::parse(testing::slurp(dir + "/manifest.json")); }

// In-process run for cases that check exit codes without a subprocess.
int run(std::vector<const char*> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), cli::kProgram);
  std::ostringstream out, err;
  const int rc = cli::run(static_cast<int>(args.size()), args.data(), out, err);
  if (out_text) *out_text = out.str();
  return rc;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help lists the subcommands and flags") {
  const auto top = testing::run_forge("--help");
  CHECK(top.code == 0);
  for (const char* sub : {"gen", "render", "mix", "eval", "grad", "stats", "--config"})
    CHECK_MESSAGE(top.out.find(sub) != std::string::npos, sub);
  const auto gen = testing::run_forge("gen --help");
  CHECK(gen.code == 0);
  for (const char* flag : {"--task", "--difficulty", "--n", "--seed", "--form", "--out", "--jobs", "--style-file",
                           "--heldout-file", "--text-mode"})
    CHECK_MESSAGE(gen.out.find(flag) != std::string::npos, flag);
  const auto mix = testing::run_forge("mix --help");
  for (const char* flag : {"--supervision", "--phases", "--repeat-hard", "--cot-schedule"})
    CHECK_MESSAGE(mix.out.find(flag) != std::string::npos, flag);
}

TEST_CASE("exit codes") {
  CHECK(run({"frobnicate"}) == 2);
  CHECK(run({"gen", "--task", "grid", "--difficulty", "simple", "--out", "/tmp/x", "--bogus"}) == 2);
  CHECK(run({"gen", "--task", "nonsense", "--difficulty", "simple", "--out", "/tmp/x"}) == 2);
  CHECK(run({"gen", "--task", "grid", "--difficulty", "medium", "--out", "/tmp/x"}) == 2);
  CHECK(run({}) == 2);
  // Output path below a regular file cannot be created.
  testing::TempDir dir("cli-exit");
  testing::spit(dir / "file", "x");
  const std::string bad = dir / "file/sub";
  CHECK(run({"gen", "--task", "grid", "--difficulty", "simple", "--n", "1", "--out", bad.c_str()}) == 1);
  CHECK(run({"stats", "--in", (dir / "missing.jsonl").c_str()}) == 2);
}

TEST_CASE("gen writes one record per instance and form") {
  testing::TempDir dir("cli-gen");
  const std::string out = dir / "t";
  const auto r = testing::run_forge("gen --task table-readout --difficulty simple --n 100 --seed 4 --form image --out " + out);
  REQUIRE(r.code == 0);
  const std::string jsonl = testing::slurp(out + "/records.jsonl");
  CHECK(count_lines(jsonl) == 100);
  CHECK(count_files(out, ".png") == 100);
  for (auto l : split_lines(jsonl)) {
    if (trim(l).empty()) continue;
    const auto rec = parse_record(l);
    CHECK(rec.modality() == Modality::ImageInput);
    CHECK(fs::exists(out + "/" + *rec.image_path()));
  }
  const auto m = manifest(out);
  CHECK(m["records"] == 100);
  CHECK(m["images"] == 100);

  const std::string all = dir / "all";
  REQUIRE(testing::run_forge("gen --task analogy --difficulty hard --n 4 --form all --text-mode lossless --out " + all).code == 0);
  CHECK(count_lines(testing::slurp(all + "/records.jsonl")) == 12);
  CHECK(count_files(all, ".png") == 4);
}

TEST_CASE("mix writes the planned record count") {
  testing::TempDir dir("cli-mix");
  const std::string out = dir / "m";
  REQUIRE(testing::run_forge("mix --supervision mix+ --n 12 --task grid --seed 2 --no-images --out " + out).code == 0);
  const auto recs = read_jsonl(out + "/records.jsonl");
  CHECK(recs.size() == 12);
  std::size_t hard = 0;
  for (const auto& r : recs) hard += r.difficulty() == Difficulty::Hard;
  CHECK(hard == 6);
  const auto m = manifest(out);
  CHECK(m["counts"]["n_unique"] == 2);

  // Without --out the records go to stdout.
  const auto piped = testing::run_forge("mix --supervision text --n 6 --seed 2");
  REQUIRE(piped.code == 0);
  CHECK(count_lines(piped.out) == 6);

  const std::string phases = dir / "p";
  REQUIRE(testing::run_forge("mix --phases align:4,mix+:12 --no-images --out " + phases).code == 0);
  const auto pj = nlohmann::json::parse(testing::slurp(phases + "/phases.json"));
  CHECK(pj["phases"].size() == 2);
  CHECK(read_jsonl(phases + "/phase-2.jsonl").size() == 12);

  CHECK(testing::run_forge("mix --supervision mix+ --n 8").code == 1);
}

TEST_CASE("eval reports grid subtask metrics") {
  testing::TempDir dir("cli-eval");
  const std::string out = dir / "g";
  REQUIRE(testing::run_forge("gen --task grid --difficulty hard --n 10 --form text --out " + out).code == 0);
  const auto recs = read_jsonl(out + "/records.jsonl");
  std::string gens;
  for (const auto& r : recs) gens += nlohmann::json{{"id", r.id()}, {"text", r.output_text()}}.dump() + "\n";
  testing::spit(dir / "gens.jsonl", gens);
  const auto res = testing::run_forge("eval --gold " + out + "/records.jsonl --gen " + (dir / "gens.jsonl") +
                                      " --out " + (dir / "verdicts.jsonl"));
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["accuracy"] == 1.0);
  const auto& g = j["tasks"]["grid-navigation"];
  for (const char* k : {"src_dst_parse_acc", "reaches_destination_frac", "objects_collected_frac", "obstacles_passed_mean"})
    CHECK_MESSAGE(g.contains(k), k);
  CHECK(count_lines(testing::slurp(dir / "verdicts.jsonl")) == 10);

  testing::spit(dir / "stray.jsonl", "{\"id\":\"nope\",\"text\":\"x\"}\n");
  CHECK(testing::run_forge("eval --gold " + out + "/records.jsonl --gen " + (dir / "stray.jsonl")).code == 1);
}

TEST_CASE("config file supplies defaults and flags win") {
  testing::TempDir dir("cli-config");
  testing::spit(dir / "run.ini", "[gen]\ntask = \"grid\"\ndifficulty = \"simple\"\nn = 5\nform = \"text\"\n");
  const std::string a = dir / "a", b = dir / "b";
  REQUIRE(testing::run_forge("--config " + (dir / "run.ini") + " gen --out " + a).code == 0);
  CHECK(count_lines(testing::slurp(a + "/records.jsonl")) == 5);
  REQUIRE(testing::run_forge("--config " + (dir / "run.ini") + " gen --n 3 --out " + b).code == 0);
  CHECK(count_lines(testing::slurp(b + "/records.jsonl")) == 3);
  testing::spit(dir / "typo.ini", "[gen]\ntask = \"grid\"\ndifficulty = \"simple\"\nnn = 5\n");
  CHECK(testing::run_forge("--config " + (dir / "typo.ini") + " gen --out " + a).code == 2);
}

TEST_CASE("digests do not depend on the worker count") {
  testing::TempDir dir("cli-jobs");
  std::string digest[2], images[2];
  for (int i = 0; i < 2; ++i) {
    const std::string out = dir / ("j" + std::to_string(i));
    const std::string jobs = i ? "4" : "1";
    REQUIRE(testing::run_forge("gen --task analogy --difficulty simple --n 12 --form all --jobs " + jobs + " --out " + out)
                .code == 0);
    digest[i] = manifest(out)["records_digest"];
    images[i] = manifest(out)["images_digest"];
  }
  CHECK(digest[0] == digest[1]);
  CHECK(images[0] == images[1]);
}

TEST_CASE("render cache") {
  testing::TempDir dir("cli-cache");
  const std::string cache = dir / "cache";
  const std::string env = "S2H_FORGE_CACHE=" + cache;
  const std::string a = dir / "a", b = dir / "b", c = dir / "c";
  REQUIRE(testing::run_forge("gen --task table --difficulty simple --n 3 --out " + a, env).code == 0);
  REQUIRE(fs::exists(cache));
  CHECK(count_files(cache, ".png") == 3);
  REQUIRE(testing::run_forge("gen --task table --difficulty simple --n 3 --out " + b, env).code == 0);
  CHECK(count_files(cache, ".png") == 3);
  REQUIRE(testing::run_forge("gen --task table --difficulty simple --n 3 --out " + c).code == 0);
  CHECK(manifest(a)["images_digest"] == manifest(b)["images_digest"]);
  CHECK(manifest(a)["images_digest"] == manifest(c)["images_digest"]);

  // In process: the cached bytes equal a fresh render.
  const auto inst = tasks::generate(TaskKind::GridNavigation, Difficulty::Simple, 9);
  const cli::RenderCache rc(cache);
  const auto style = render::default_style();
  CHECK(rc.render(inst, style) == tasks::render(inst, style));
  CHECK(rc.render(inst, style) == cli::RenderCache(std::nullopt).render(inst, style));
}

TEST_CASE("parallel_for") {
  std::vector<int> hit(1000, 0);
  cli::parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS_AS(cli::parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw InvalidArgument("seven");
                  }),
                  InvalidArgument);
}

}  // TEST_SUITE
