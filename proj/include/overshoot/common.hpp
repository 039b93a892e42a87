#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace overshoot {

// Thrown when a requested error budget cannot be met with the configured
// truncation or subdivision limits. The CLI maps this to exit code 2.
class ToleranceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// SplitMix64 finalizer. Used to derive independent per-trial RNG seeds from
// (seed, counter) pairs so that worker threads never share generator state.
std::uint64_t mix64(std::uint64_t x);

// Number of worker threads to actually use: requested if >= 1, otherwise the
// hardware concurrency (at least 1).
int effective_threads(int requested);

// Runs fn(begin, end, chunk_index) over contiguous chunks of [0, count).
// Chunk results must be combined by the caller keyed on indices computed from
// the global range, never on chunk_index, so that reductions do not depend on
// the thread count. threads <= 1 runs inline on the calling thread.
void parallel_chunks(std::int64_t count, int threads,
                     const std::function<void(std::int64_t, std::int64_t, int)>& fn);

}  // namespace overshoot
