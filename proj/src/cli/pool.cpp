#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "s2h/cli/cli.hpp"
#include "s2h/core/digest.hpp"
#include "s2h/core/error.hpp"
#include "s2h/core/rng.hpp"

namespace s2h::cli {

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first;
  std::mutex mu;
  auto worker = [&] {
    while (!failed) {
      const std::size_t i = next++;
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first) std::rethrow_exception(first);
}

RenderCache::RenderCache(std::optional<std::string> dir) : dir_(std::move(dir)) {
  if (dir_) std::filesystem::create_directories(*dir_);
}

RenderCache RenderCache::from_env() {
  const char* d = std::getenv("S2H_FORGE_CACHE");
  if (d && *d) return RenderCache(std::string(d));
  return RenderCache(std::nullopt);
}

std::vector<std::uint8_t> RenderCache::render(const tasks::Instance& inst, const render::RenderStyle& style) const {
  if (!dir_) return tasks::render(inst, style);
  const std::string key =
      sha256_hex(fmt::format("{}\n{}\n{}", render::style_to_text(style), to_string(inst.task), tasks::instance_json(inst)));
  const std::filesystem::path path = std::filesystem::path(*dir_) / (key + ".png");
  if (std::ifstream in(path, std::ios::binary); in)
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  auto bytes = tasks::render(inst, style);
  // Write then rename so concurrent readers never see a partial file.
  const auto tmp = path.string() + fmt::format(".tmp{}", std::hash<std::thread::id>{}(std::this_thread::get_id()));
  render::write_file(tmp, bytes);
  std::filesystem::rename(tmp, path);
  return bytes;
}

std::uint64_t gen_instance_seed(std::uint64_t seed, TaskKind task, Difficulty difficulty, std::size_t index) {
  return derive_seed(seed, task, fmt::format("gen-{}", to_string(difficulty)), index);
}

}  // namespace s2h::cli
