#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "s2h/render/render.hpp"
#include "s2h/tasks/tasks.hpp"

namespace s2h::cli {

inline constexpr const char* kProgram = "s2h-forge";

/// Entry point of the command-line tool. Returns 0 on success, 2 on usage
/// errors (unknown flag or bad value) and 1 on any other failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Call fn(i) for i in [0, n) on up to `jobs` threads. The first exception
/// thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// PNG renderer with an optional on-disk cache keyed by the SHA-256 of the
/// style text and the instance. The cache directory comes from
/// S2H_FORGE_CACHE when it is set.
class RenderCache {
 public:
  explicit RenderCache(std::optional<std::string> dir);
  static RenderCache from_env();
  std::vector<std::uint8_t> render(const tasks::Instance& inst, const render::RenderStyle& style) const;
  const std::optional<std::string>& dir() const { return dir_; }

 private:
  std::optional<std::string> dir_;
};

/// Seed of the i-th instance that `gen` writes for a task and difficulty.
std::uint64_t gen_instance_seed(std::uint64_t seed, TaskKind task, Difficulty difficulty, std::size_t index);

}  // namespace s2h::cli
