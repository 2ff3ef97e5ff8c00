#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace crossint::detail {

// Deterministic parallel reduction: [0, total) is split into one
// contiguous chunk per worker, each chunk is processed independently, and
// the partial results are merged in chunk order. Output is therefore
// independent of the worker count whenever merge is associative over
// ordered concatenation of subranges.
template <typename Result, typename PerChunk, typename Merge>
Result chunked_reduce(std::uint64_t total, int workers, PerChunk per_chunk,
                      Merge merge) {
  if (workers < 1) workers = 1;
  const auto w = static_cast<std::uint64_t>(workers);
  if (w <= 1 || total < 2 * w)
    return per_chunk(std::uint64_t{0}, total);

  std::vector<Result> parts(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  const std::uint64_t step = total / w;
  for (std::uint64_t i = 0; i < w; ++i) {
    const std::uint64_t lo = i * step;
    const std::uint64_t hi = (i + 1 == w) ? total : lo + step;
    threads.emplace_back(
        [&parts, &per_chunk, i, lo, hi] { parts[i] = per_chunk(lo, hi); });
  }
  for (auto& t : threads) t.join();

  Result acc = std::move(parts[0]);
  for (std::uint64_t i = 1; i < w; ++i) merge(acc, std::move(parts[i]));
  return acc;
}

}  // namespace crossint::detail
