#include "overshoot/common.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace overshoot {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int effective_threads(int requested) {
  if (requested >= 1) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_chunks(std::int64_t count, int threads,
                     const std::function<void(std::int64_t, std::int64_t, int)>& fn) {
  if (count <= 0) return;
  int nt = effective_threads(threads);
  if (nt > count) nt = static_cast<int>(count);
  if (nt <= 1) {
    fn(0, count, 0);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(nt));
  std::int64_t chunk = (count + nt - 1) / nt;
  for (int c = 0; c < nt; ++c) {
    std::int64_t b = c * chunk;
    std::int64_t e = std::min(count, b + chunk);
    if (b >= e) break;
    workers.emplace_back([&fn, b, e, c] { fn(b, e, c); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace overshoot
