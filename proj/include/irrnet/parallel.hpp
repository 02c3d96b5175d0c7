#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace irrnet {

// Worker count: IRRNET_THREADS wins when set to a positive integer,
// otherwise whatever the hardware reports, never zero.
inline int thread_count() {
  if (const char* env = std::getenv("IRRNET_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, 256);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(std::min(hw, 64u)) : 1;
}

struct ChunkPlan {
  int64_t chunks = 1;
  int64_t size = 0;  // items per chunk, last one may be shorter
};

inline ChunkPlan plan_chunks(int64_t n) {
  ChunkPlan pl;
  if (n <= 0) {
    pl.chunks = 0;
    return pl;
  }
  int64_t tc = std::min<int64_t>(thread_count(), n);
  pl.size = (n + tc - 1) / tc;
  pl.chunks = (n + pl.size - 1) / pl.size;
  return pl;
}

// fn(chunk_index, begin, end) over a contiguous split of [0, n). Chunk
// boundaries depend only on n and the worker count, so per-chunk results
// merged in chunk order are reproducible run to run.
template <class F>
void parallel_chunks(int64_t n, F&& fn) {
  ChunkPlan pl = plan_chunks(n);
  if (pl.chunks <= 1) {
    if (n > 0) fn(int64_t(0), int64_t(0), n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(size_t(pl.chunks));
  for (int64_t c = 0; c < pl.chunks; ++c) {
    int64_t b = c * pl.size;
    int64_t e = std::min(n, b + pl.size);
    pool.emplace_back([c, b, e, &fn] { fn(c, b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace irrnet
