#pragma once

// Diagnostics over per-example gradients produced by an external trainer:
// projection, alignment and cosine scores, the Adam-update variant, and a
// first-order check of the alignment score on quadratic toy losses.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace s2h::grad {

enum class Split : std::uint8_t { Simple = 0, Hard = 1 };

struct GradVector {
  std::string example_id;
  Split split = Split::Simple;
  std::vector<float> values;
  bool operator==(const GradVector&) const = default;
};

struct GradientDump {
  std::uint32_t dim = 4096;
  std::vector<GradVector> vectors;
  std::string checkpoint_tag;
  std::string loss_kind;   // which segments carried loss, e.g. "cot+answer"
  std::string provenance;  // free text: parameter subset, trainer, step
  bool operator==(const GradientDump&) const = default;
};

/// Throws InvalidArgument when vectors disagree with `dim`.
void validate(const GradientDump& dump);

// Binary dump, little-endian: "S2HG", u32 version, u32 dim, u64 count, then
// per vector u16 id length, id bytes, u8 split, dim f32.
inline constexpr std::uint32_t kDumpVersion = 1;
std::string encode_dump(const GradientDump& dump);
GradientDump decode_dump(std::string_view bytes);
void write_dump(const std::string& path, const GradientDump& dump);
GradientDump read_dump(const std::string& path);

struct ManifestEntry {
  std::string file;  // resolved against the manifest directory
  std::string loss_kind;
  std::string provenance;
};
/// JSON object mapping checkpoint tag to a file name or to an object with
/// "file", "loss_kind" and "provenance".
std::map<std::string, ManifestEntry> read_manifest(const std::string& path);
/// Dumps named by a manifest, tagged, in tag order.
std::vector<GradientDump> load_manifest(const std::string& path);

/// Signed-bucket sketch: index i goes to one bucket with a random sign, both
/// drawn from a hash of (seed, i). Linear and streamable: feed consecutive
/// chunks with their starting offset.
class Projector {
 public:
  Projector(std::uint64_t seed, std::uint32_t out_dim = 4096);
  void add(std::uint64_t offset, std::span<const float> chunk);
  void add(std::uint64_t offset, std::span<const double> chunk);
  const std::vector<double>& result() const { return out_; }
  std::uint32_t bucket(std::uint64_t index) const;
  double sign(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::vector<double> out_;
};

std::vector<double> project(std::span<const double> x, std::uint64_t seed, std::uint32_t out_dim = 4096);
std::vector<double> project(std::span<const float> x, std::uint64_t seed, std::uint32_t out_dim = 4096);

/// Mean gradient of one split, accumulated in double. Throws InvalidArgument
/// when the split is empty.
std::vector<double> split_mean(const GradientDump& dump, Split split);
double mean_norm(const GradientDump& dump, Split split);

/// <mean simple, mean hard> / <mean hard, mean hard>.
double alignment_score(const GradientDump& dump);
double cosine_score(const GradientDump& dump);

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Expected <h(g), mean hard> over simple vectors divided by the same over
/// hard vectors, where h is a proxy Adam step whose moments are the simple
/// mean and mean square. A coordinate whose numerator and denominator are
/// both zero contributes zero.
double adam_update_alignment(const GradientDump& dump, const AdamParams& p = {});

/// Per-example quadratic loss 0.5 (t - c)^T A (t - c) with A symmetric PSD.
struct Quadratic {
  std::vector<double> a;  // dim x dim, row-major
  std::vector<double> c;
};

struct QuadraticFamily {
  int dim = 0;
  std::vector<double> theta;
  std::vector<Quadratic> simple;
  std::vector<Quadratic> hard;
};

double loss(const Quadratic& q, std::span<const double> theta);
std::vector<double> gradient(const Quadratic& q, std::span<const double> theta);
/// Mean loss over the hard examples.
double hard_loss(const QuadraticFamily& f, std::span<const double> theta);

/// Random family: A = M^T M / dim + 0.1 I with Gaussian M, Gaussian centers
/// and start point.
QuadraticFamily random_psd_family(std::uint64_t seed, int dim, int n_simple, int n_hard);

struct RatioCheck {
  double empirical_ratio = 0;
  double score = 0;
  double abs_diff = 0;
};

/// Expected hard-loss change after one SGD step of size eta on a simple
/// example, over the same for a hard example, evaluated directly; compared
/// with the alignment score of the analytic gradients.
RatioCheck first_order_ratio_check(const QuadraticFamily& f, double eta);

/// Gradients of the family at its start point as a dump.
GradientDump family_dump(const QuadraticFamily& f);

}  // namespace s2h::grad
