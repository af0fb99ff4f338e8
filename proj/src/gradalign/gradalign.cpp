#include "s2h/gradalign/gradalign.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "s2h/core/error.hpp"
#include "s2h/core/rng.hpp"

namespace s2h::grad {

static_assert(std::endian::native == std::endian::little, "dump IO assumes a little-endian host");

void validate(const GradientDump& dump) {
  if (dump.dim == 0) throw InvalidArgument("gradient dump dimension must be positive");
  for (const auto& v : dump.vectors)
    if (v.values.size() != dump.dim)
      throw InvalidArgument(fmt::format("vector {} has {} values, dump dimension is {}", v.example_id,
                                        v.values.size(), dump.dim));
}

// Dump IO ----------------------------------------------------------------

namespace {

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

struct Reader {
  std::string_view s;
  template <class T>
  T get() {
    if (s.size() < sizeof(T)) throw ParseError("gradient dump truncated");
    T v;
    std::memcpy(&v, s.data(), sizeof(T));
    s.remove_prefix(sizeof(T));
    return v;
  }
  std::string_view take(std::size_t n) {
    if (s.size() < n) throw ParseError("gradient dump truncated");
    auto out = s.substr(0, n);
    s.remove_prefix(n);
    return out;
  }
};

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string encode_dump(const GradientDump& dump) {
  validate(dump);
  std::string out = "S2HG";
  put<std::uint32_t>(out, kDumpVersion);
  put<std::uint32_t>(out, dump.dim);
  put<std::uint64_t>(out, dump.vectors.size());
  for (const auto& v : dump.vectors) {
    if (v.example_id.size() > 0xFFFF) throw InvalidArgument("example id longer than 65535 bytes");
    put<std::uint16_t>(out, static_cast<std::uint16_t>(v.example_id.size()));
    out += v.example_id;
    put<std::uint8_t>(out, static_cast<std::uint8_t>(v.split));
    out.append(reinterpret_cast<const char*>(v.values.data()), v.values.size() * sizeof(float));
  }
  return out;
}

GradientDump decode_dump(std::string_view bytes) {
  Reader r{bytes};
  if (r.take(4) != "S2HG") throw ParseError("not a gradient dump (bad magic)");
  const auto version = r.get<std::uint32_t>();
  if (version != kDumpVersion) throw ParseError(fmt::format("unsupported gradient dump version {}", version));
  GradientDump d;
  d.dim = r.get<std::uint32_t>();
  if (d.dim == 0) throw ParseError("gradient dump dimension is zero");
  const auto count = r.get<std::uint64_t>();
  for (std::uint64_t i = 0; i < count; ++i) {
    GradVector v;
    v.example_id = std::string(r.take(r.get<std::uint16_t>()));
    const auto split = r.get<std::uint8_t>();
    if (split > 1) throw ParseError(fmt::format("vector {} has split code {}", v.example_id, split));
    v.split = static_cast<Split>(split);
    const auto raw = r.take(std::size_t{d.dim} * sizeof(float));
    v.values.resize(d.dim);
    std::memcpy(v.values.data(), raw.data(), raw.size());
    d.vectors.push_back(std::move(v));
  }
  if (!r.s.empty()) throw ParseError("trailing bytes after gradient dump");
  return d;
}

void write_dump(const std::string& path, const GradientDump& dump) {
  const std::string bytes = encode_dump(dump);
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
    throw IoError("cannot write " + path);
}

GradientDump read_dump(const std::string& path) { return decode_dump(read_all(path)); }

std::map<std::string, ManifestEntry> read_manifest(const std::string& path) {
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  std::map<std::string, ManifestEntry> out;
  try {
    const auto j = nlohmann::json::parse(read_all(path));
    if (!j.is_object()) throw ParseError("gradient manifest must be a JSON object");
    for (const auto& [tag, v] : j.items()) {
      ManifestEntry e;
      if (v.is_string()) {
        e.file = v.get<std::string>();
      } else {
        e.file = v.at("file").get<std::string>();
        e.loss_kind = v.value("loss_kind", "");
        e.provenance = v.value("provenance", "");
      }
      e.file = (dir / e.file).string();
      out[tag] = std::move(e);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("gradient manifest: ") + e.what());
  }
  return out;
}

std::vector<GradientDump> load_manifest(const std::string& path) {
  std::vector<GradientDump> out;
  for (const auto& [tag, e] : read_manifest(path)) {
    GradientDump d = read_dump(e.file);
    d.checkpoint_tag = tag;
    d.loss_kind = e.loss_kind;
    d.provenance = e.provenance;
    out.push_back(std::move(d));
  }
  return out;
}

// Projection ---------------------------------------------------------------

Projector::Projector(std::uint64_t seed, std::uint32_t out_dim) : seed_(mix64(seed ^ 0x5851F42D4C957F2DULL)) {
  if (out_dim == 0) throw InvalidArgument("projection dimension must be positive");
  out_.assign(out_dim, 0.0);
}

std::uint32_t Projector::bucket(std::uint64_t index) const {
  const std::uint64_t h = mix64(seed_ + index * 0x9E3779B97F4A7C15ULL);
  // Multiply-high maps the low 32 bits uniformly onto [0, out_dim).
  return static_cast<std::uint32_t>(((h & 0xFFFFFFFFULL) * out_.size()) >> 32);
}

double Projector::sign(std::uint64_t index) const {
  const std::uint64_t h = mix64(seed_ + index * 0x9E3779B97F4A7C15ULL);
  return (h >> 63) ? -1.0 : 1.0;
}

void Projector::add(std::uint64_t offset, std::span<const float> chunk) {
  for (std::size_t i = 0; i < chunk.size(); ++i) {
    const std::uint64_t k = offset + i;
    out_[bucket(k)] += sign(k) * static_cast<double>(chunk[i]);
  }
}

void Projector::add(std::uint64_t offset, std::span<const double> chunk) {
  for (std::size_t i = 0; i < chunk.size(); ++i) {
    const std::uint64_t k = offset + i;
    out_[bucket(k)] += sign(k) * chunk[i];
  }
}

std::vector<double> project(std::span<const double> x, std::uint64_t seed, std::uint32_t out_dim) {
  Projector p(seed, out_dim);
  p.add(0, x);
  return p.result();
}

std::vector<double> project(std::span<const float> x, std::uint64_t seed, std::uint32_t out_dim) {
  Projector p(seed, out_dim);
  p.add(0, x);
  return p.result();
}

// Scores -------------------------------------------------------------------

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

const char* split_name(Split s) { return s == Split::Simple ? "simple" : "hard"; }

}  // namespace

std::vector<double> split_mean(const GradientDump& dump, Split split) {
  validate(dump);
  std::vector<double> m(dump.dim, 0.0);
  std::size_t n = 0;
  for (const auto& v : dump.vectors) {
    if (v.split != split) continue;
    ++n;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += v.values[i];
  }
  if (n == 0) throw InvalidArgument(fmt::format("gradient dump has no {} vectors", split_name(split)));
  for (double& x : m) x /= static_cast<double>(n);
  return m;
}

double mean_norm(const GradientDump& dump, Split split) {
  validate(dump);
  double total = 0;
  std::size_t n = 0;
  for (const auto& v : dump.vectors) {
    if (v.split != split) continue;
    double s = 0;
    for (float x : v.values) s += static_cast<double>(x) * x;
    total += std::sqrt(s);
    ++n;
  }
  if (n == 0) throw InvalidArgument(fmt::format("gradient dump has no {} vectors", split_name(split)));
  return total / static_cast<double>(n);
}

double alignment_score(const GradientDump& dump) {
  const auto s = split_mean(dump, Split::Simple);
  const auto h = split_mean(dump, Split::Hard);
  const double hh = dot(h, h);
  if (hh == 0) throw InvalidArgument("mean hard gradient is zero; alignment score undefined");
  return dot(s, h) / hh;
}

double cosine_score(const GradientDump& dump) {
  const auto s = split_mean(dump, Split::Simple);
  const auto h = split_mean(dump, Split::Hard);
  const double ss = dot(s, s), hh = dot(h, h);
  if (ss == 0 || hh == 0) throw InvalidArgument("a mean gradient is zero; cosine score undefined");
  return dot(s, h) / std::sqrt(ss * hh);
}

double adam_update_alignment(const GradientDump& dump, const AdamParams& p) {
  if (!(p.beta1 >= 0 && p.beta1 < 1 && p.beta2 >= 0 && p.beta2 < 1) || p.eps < 0)
    throw InvalidArgument("Adam parameters need 0 <= beta < 1 and eps >= 0");
  // First pass: moments of the simple split and the hard mean.
  const auto m = split_mean(dump, Split::Simple);
  const auto gh = split_mean(dump, Split::Hard);
  std::vector<double> v(dump.dim, 0.0);
  std::size_t n_simple = 0, n_hard = 0;
  for (const auto& g : dump.vectors) {
    if (g.split != Split::Simple) continue;
    ++n_simple;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += static_cast<double>(g.values[i]) * g.values[i];
  }
  for (double& x : v) x /= static_cast<double>(n_simple);

  // Second pass: <h(g), mean hard> per vector.
  double num = 0, den = 0;
  for (const auto& g : dump.vectors) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double gi = g.values[i];
      const double top = (1 - p.beta1) * gi + p.beta1 * m[i];
      const double bottom = std::sqrt((1 - p.beta2) * gi * gi + p.beta2 * v[i]) + p.eps;
      if (bottom == 0) continue;  // top is zero too: gi = 0 and v[i] = 0 force m[i] = 0
      s += top / bottom * gh[i];
    }
    if (g.split == Split::Simple) num += s;
    else {
      den += s;
      ++n_hard;
    }
  }
  num /= static_cast<double>(n_simple);
  den /= static_cast<double>(n_hard);
  if (den == 0) throw InvalidArgument("hard-split Adam alignment is zero; score undefined");
  return num / den;
}

// Quadratic toy family -----------------------------------------------------

double loss(const Quadratic& q, std::span<const double> theta) {
  const std::size_t n = q.c.size();
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j) row += q.a[i * n + j] * (theta[j] - q.c[j]);
    s += (theta[i] - q.c[i]) * row;
  }
  return 0.5 * s;
}

std::vector<double> gradient(const Quadratic& q, std::span<const double> theta) {
  const std::size_t n = q.c.size();
  std::vector<double> g(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i] += q.a[i * n + j] * (theta[j] - q.c[j]);
  return g;
}

double hard_loss(const QuadraticFamily& f, std::span<const double> theta) {
  if (f.hard.empty()) throw InvalidArgument("quadratic family has no hard examples");
  double s = 0;
  for (const auto& q : f.hard) s += loss(q, theta);
  return s / static_cast<double>(f.hard.size());
}

QuadraticFamily random_psd_family(std::uint64_t seed, int dim, int n_simple, int n_hard) {
  if (dim < 1 || n_simple < 1 || n_hard < 1) throw InvalidArgument("quadratic family sizes must be positive");
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(dim);
  auto make = [&] {
    std::vector<double> mtx(n * n);
    for (double& x : mtx) x = rng.normal();
    Quadratic q;
    q.a.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t k = 0; k < n; ++k) s += mtx[k * n + i] * mtx[k * n + j];
        q.a[i * n + j] = s / static_cast<double>(n) + (i == j ? 0.1 : 0.0);
      }
    q.c.resize(n);
    for (double& x : q.c) x = rng.normal();
    return q;
  };
  QuadraticFamily f;
  f.dim = dim;
  f.theta.resize(n);
  for (double& x : f.theta) x = rng.normal();
  for (int i = 0; i < n_simple; ++i) f.simple.push_back(make());
  for (int i = 0; i < n_hard; ++i) f.hard.push_back(make());
  return f;
}

GradientDump family_dump(const QuadraticFamily& f) {
  GradientDump d;
  d.dim = static_cast<std::uint32_t>(f.dim);
  d.checkpoint_tag = "quadratic";
  auto add = [&](const std::vector<Quadratic>& qs, Split split, const char* prefix) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const auto g = gradient(qs[i], f.theta);
      d.vectors.push_back({fmt::format("{}-{}", prefix, i), split, std::vector<float>(g.begin(), g.end())});
    }
  };
  add(f.simple, Split::Simple, "simple");
  add(f.hard, Split::Hard, "hard");
  return d;
}

namespace {

double alignment_exact(const QuadraticFamily& f) {
  // Same score as alignment_score, without rounding the gradients to float.
  const std::size_t n = static_cast<std::size_t>(f.dim);
  auto mean = [&](const std::vector<Quadratic>& qs) {
    std::vector<double> m(n, 0.0);
    for (const auto& q : qs) {
      const auto g = gradient(q, f.theta);
      for (std::size_t i = 0; i < n; ++i) m[i] += g[i];
    }
    for (double& x : m) x /= static_cast<double>(qs.size());
    return m;
  };
  const auto s = mean(f.simple);
  const auto h = mean(f.hard);
  const double hh = dot(h, h);
  if (hh == 0) throw InvalidArgument("hard gradient of the quadratic family is zero");
  return dot(s, h) / hh;
}

double mean_drop(const QuadraticFamily& f, const std::vector<Quadratic>& from, double eta, double base) {
  double total = 0;
  std::vector<double> t(f.theta.size());
  for (const auto& q : from) {
    const auto g = gradient(q, f.theta);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = f.theta[i] - eta * g[i];
    total += hard_loss(f, t) - base;
  }
  return total / static_cast<double>(from.size());
}

}  // namespace

RatioCheck first_order_ratio_check(const QuadraticFamily& f, double eta) {
  if (!(eta > 0)) throw InvalidArgument("step size must be positive");
  if (f.simple.empty() || f.hard.empty()) throw InvalidArgument("quadratic family needs simple and hard examples");
  RatioCheck r;
  r.score = alignment_exact(f);
  const double base = hard_loss(f, f.theta);
  const double hard_drop = mean_drop(f, f.hard, eta, base);
  if (hard_drop == 0) throw InvalidArgument("hard-step loss change is zero at this step size");
  r.empirical_ratio = mean_drop(f, f.simple, eta, base) / hard_drop;
  r.abs_diff = std::abs(r.empirical_ratio - r.score);
  return r;
}

}  // namespace s2h::grad
