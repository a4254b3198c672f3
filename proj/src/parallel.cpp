#include "skell/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "skell/error.hpp"

namespace skell {
namespace {

std::atomic<int> g_default_threads{0};

}  // namespace

int resolve_threads(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw InvalidArgument("--threads must be >= 1");
    return *requested;
  }
  if (const char* env = std::getenv("SKELL_THREADS"); env != nullptr && *env != '\0') {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw InvalidArgument(std::string("SKELL_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_threads(int threads) { g_default_threads = std::max(1, threads); }

int default_threads() {
  const int t = g_default_threads.load();
  return t > 0 ? t : resolve_threads();
}

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  const int workers = static_cast<int>(std::min<std::int64_t>(std::max(1, threads), count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

void for_each_shard(std::int64_t count, int threads,
                    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
  const std::int64_t shards = (count + kShardSize - 1) / kShardSize;
  parallel_for(shards, threads, [&](std::int64_t s) {
    const std::int64_t begin = s * kShardSize;
    fn(s, begin, std::min(count, begin + kShardSize));
  });
}

}  // namespace skell
