#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace skell {

/// Draw-count granularity for parallel work. Shard s always covers draws
/// [s * kShardSize, (s + 1) * kShardSize) and uses random substream s.
inline constexpr std::int64_t kShardSize = 1 << 15;

/// Worker count: the explicit request if given, else SKELL_THREADS, else the
/// hardware concurrency (at least 1).
int resolve_threads(std::optional<int> requested = std::nullopt);

/// Process-wide default used by samplers when no count is passed.
void set_default_threads(int threads);
int default_threads();

/// Calls fn(shard, begin, end) for every shard of [0, count). Shards are handed
/// out dynamically; the first exception thrown by any shard is rethrown.
void for_each_shard(std::int64_t count, int threads,
                    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

/// Calls fn(i) for i in [0, count) on `threads` workers.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn);

}  // namespace skell
