#include "s2h/core/rng.hpp"

#include <cmath>
#include <numbers>

#include "s2h/core/error.hpp"

namespace s2h {

std::uint64_t derive_seed(std::uint64_t master, TaskKind task, std::string_view purpose,
                          std::uint64_t index) {
  std::uint64_t h = mix64(master ^ 0x243F6A8885A308D3ULL);
  h = mix64(h ^ (static_cast<std::uint64_t>(task) + 1) * 0x13198A2E03707344ULL);
  h = mix64(h ^ hash_label(purpose));
  h = mix64(h ^ mix64(index + 0xA4093822299F31D0ULL));
  return h;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("Rng::below: bound must be positive");
  // Lemire's multiply-shift with rejection; unbiased.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw InvalidArgument("Rng::uniform_int: empty range");
  auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1);
  return static_cast<int>(lo + static_cast<std::int64_t>(below(span)));
}

double Rng::normal() {
  double u1 = uniform01();
  double u2 = uniform01();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace s2h
