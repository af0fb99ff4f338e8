#include <cmath>

#include <fmt/format.h>

#include "doctest.h"
#include "s2h/core/error.hpp"
#include "s2h/core/rng.hpp"
#include "s2h/gradalign/gradalign.hpp"
#include "support.hpp"

using namespace s2h;
using namespace s2h::grad;

namespace {

GradientDump dump_of(std::vector<std::vector<float>> simple, std::vector<std::vector<float>> hard) {
  GradientDump d;
  d.dim = static_cast<std::uint32_t>(simple.empty() ? hard.front().size() : simple.front().size());
  int i = 0;
  for (auto& v : simple) d.vectors.push_back({fmt::format("s{}", i++), Split::Simple, std::move(v)});
  for (auto& v : hard) d.vectors.push_back({fmt::format("h{}", i++), Split::Hard, std::move(v)});
  return d;
}

double sq(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return s;
}

// Quadratic with identity curvature centred at c: gradient at theta is theta - c.
Quadratic iso(std::vector<double> c) {
  const std::size_t n = c.size();
  Quadratic q;
  q.a.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) q.a[i * n + i] = 1.0;
  q.c = std::move(c);
  return q;
}

}  // namespace

TEST_SUITE("gradalign") {

TEST_CASE("projection is linear and streamable") {
  Rng rng(1);
  std::vector<double> x(5000), y(5000), z(5000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.normal();
    y[i] = rng.normal();
    z[i] = 2.0 * x[i] - 3.0 * y[i];
  }
  const auto px = project(std::span<const double>(x), 9, 256), py = project(std::span<const double>(y), 9, 256);
  const auto pz = project(std::span<const double>(z), 9, 256);
  for (std::size_t k = 0; k < pz.size(); ++k) CHECK(pz[k] == doctest::Approx(2.0 * px[k] - 3.0 * py[k]).epsilon(1e-9));

  Projector streamed(9, 256);
  streamed.add(0, std::span<const double>(x.data(), 1234));
  streamed.add(1234, std::span<const double>(x.data() + 1234, x.size() - 1234));
  for (std::size_t k = 0; k < px.size(); ++k) CHECK(streamed.result()[k] == doctest::Approx(px[k]).epsilon(1e-12));

  std::vector<double> zero(100, 0.0);
  for (double v : project(std::span<const double>(zero), 3, 64)) CHECK(v == 0.0);
  CHECK_THROWS_AS(Projector(1, 0), InvalidArgument);
}

TEST_CASE("projection preserves squared norms on average") {
  // Independent reference: the signed-bucket sketch is unbiased for squared
  // norms with relative spread about sqrt(2 / k).
  Rng rng(2);
  const std::size_t dim = 20000, n = 1000;
  double err = 0, ratio = 0;
  std::vector<double> x(dim);
  for (std::size_t t = 0; t < n; ++t) {
    for (double& v : x) v = rng.normal();
    const double want = sq(x);
    const double got = sq(project(std::span<const double>(x), 100 + t));
    err += std::abs(got - want) / want;
    ratio += got / want;
  }
  CHECK(err / n < 0.05);
  CHECK(ratio / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("alignment and cosine scores") {
  CHECK(alignment_score(dump_of({{1, 2, 3}}, {{1, 2, 3}})) == 1.0);
  CHECK(alignment_score(dump_of({{1, 0}}, {{0, 1}})) == 0.0);
  CHECK(alignment_score(dump_of({{2, 4}}, {{1, 2}})) == doctest::Approx(2.0).epsilon(1e-12));
  // Means, not per-example scores: (1,0) and (0,1) average to (0.5, 0.5).
  CHECK(alignment_score(dump_of({{1, 0}, {0, 1}}, {{1, 1}})) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(cosine_score(dump_of({{3, 4}}, {{3, 4}})) == doctest::Approx(1.0));
  CHECK(cosine_score(dump_of({{3, 4}}, {{-3, -4}})) == doctest::Approx(-1.0));
  // Cosine ignores scale; alignment does not.
  const auto big = dump_of({{30, 40}}, {{3, 4}});
  CHECK(cosine_score(big) == doctest::Approx(1.0));
  CHECK(alignment_score(big) == doctest::Approx(10.0));

  CHECK_THROWS_AS(alignment_score(dump_of({{1, 1}}, {{0, 0}})), InvalidArgument);
  CHECK_THROWS_AS(cosine_score(dump_of({{0, 0}}, {{1, 0}})), InvalidArgument);
  CHECK_THROWS_AS(alignment_score(dump_of({}, {{1, 0}})), InvalidArgument);
  auto bad = dump_of({{1, 2}}, {{1, 2}});
  bad.vectors[0].values.push_back(3);
  CHECK_THROWS_AS(validate(bad), InvalidArgument);
}

TEST_CASE("adam-update alignment") {
  // With beta1 = beta2 = eps = 0 the update is sign(g) and zero coordinates drop out.
  const auto d = dump_of({{1, 2}, {-1, 4}}, {{2, 0}, {0, -2}});
  // mean hard = (1, -1); simple: (1,1).(1,-1) = 0 and (-1,1).(1,-1) = -2; hard: 1 and 1.
  CHECK(adam_update_alignment(d, {0, 0, 0}) == doctest::Approx(-1.0).epsilon(1e-9));

  const auto same = dump_of({{0.5f, -2}, {0.5f, -2}}, {{0.5f, -2}, {0.5f, -2}});
  CHECK(adam_update_alignment(same) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(adam_update_alignment(same, {0.5, 0.5, 1e-3}) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(adam_update_alignment(dump_of({}, {{1, 0}})), InvalidArgument);
  CHECK_THROWS_AS(adam_update_alignment(same, {1.0, 0.5, 0}), InvalidArgument);
}

TEST_CASE("first-order check on quadratic families") {
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const auto f = random_psd_family(derive_seed(3, TaskKind::TableReadout, "toy", k), 6, 5, 5);
    const auto r = first_order_ratio_check(f, 1e-6);
    worst = std::max(worst, r.abs_diff);
    CHECK(r.score == doctest::Approx(alignment_score(family_dump(f))).epsilon(1e-5));
  }
  CHECK(worst <= 1e-3);

  // Smaller steps approach the score.
  const auto f = random_psd_family(11, 6, 5, 5);
  CHECK(first_order_ratio_check(f, 1e-5).abs_diff < first_order_ratio_check(f, 1e-1).abs_diff);

  // Simple gradients orthogonal to the hard ones barely move the hard loss.
  QuadraticFamily o;
  o.dim = 2;
  o.theta = {0, 0};
  o.simple = {iso({1, 0}), iso({2, 0})};
  o.hard = {iso({0, 1}), iso({0, 3})};
  const auto r = first_order_ratio_check(o, 1e-6);
  CHECK(r.score == 0.0);
  CHECK(std::abs(r.empirical_ratio) < 1e-4);

  CHECK_THROWS_AS(first_order_ratio_check(f, 0), InvalidArgument);
  CHECK_THROWS_AS(random_psd_family(1, 0, 1, 1), InvalidArgument);
}

TEST_CASE("dump files and manifests") {
  auto d = dump_of({{1.5f, -2}, {0, 0.25f}}, {{3, 4}});
  d.checkpoint_tag = "ckpt";
  d.loss_kind = "cot+answer";
  const std::string bytes = encode_dump(d);
  CHECK(bytes.substr(0, 4) == "S2HG");
  auto back = decode_dump(bytes);
  CHECK(back.vectors == d.vectors);
  CHECK(back.dim == d.dim);

  CHECK_THROWS_AS(decode_dump("XXXX"), ParseError);
  CHECK_THROWS_AS(decode_dump(bytes.substr(0, bytes.size() - 1)), ParseError);
  CHECK_THROWS_AS(decode_dump(bytes + "x"), ParseError);

  testing::TempDir dir("grad");
  write_dump(dir / "a.s2hg", d);
  write_dump(dir / "b.s2hg", dump_of({{1, 0}}, {{2, 0}}));
  testing::spit(dir / "manifest.json",
                R"({"step-200": "b.s2hg", "step-100": {"file": "a.s2hg", "loss_kind": "answer", "provenance": "lm head"}})");
  const auto dumps = load_manifest(dir / "manifest.json");
  REQUIRE(dumps.size() == 2);
  CHECK(dumps[0].checkpoint_tag == "step-100");
  CHECK(dumps[0].loss_kind == "answer");
  CHECK(dumps[0].vectors == d.vectors);
  CHECK(alignment_score(dumps[1]) == 0.5);

  testing::spit(dir / "bad.json", "[1, 2]");
  CHECK_THROWS_AS(load_manifest(dir / "bad.json"), ParseError);
  CHECK_THROWS_AS(read_dump(dir / "missing.s2hg"), IoError);
}

}  // TEST_SUITE
