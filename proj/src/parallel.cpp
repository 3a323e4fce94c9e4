// SPDX-License-Identifier: Apache-2.0
#include "tclaw/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace tclaw {

int thread_count() {
  static const int n = [] {
    const char* env = std::getenv("TCLAW_THREADS");
    if (!env || !*env) return 1;
    const int v = std::atoi(env);
    if (v < 1 || v > 1024)
      throw std::runtime_error("TCLAW_THREADS must be in [1, 1024]");
    return v;
  }();
  return n;
}

void parallel_for(int n, const std::function<void(int, int)>& body) {
  const int nt = std::min(thread_count(), n);
  if (nt <= 1 || n <= 1) {
    if (n > 0) body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const int chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const int b = t * chunk;
    const int e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e] { body(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace tclaw
