// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace tclaw {

/// Number of worker threads, from TCLAW_THREADS (default 1).
int thread_count();

/// Static partition of [0, n) into thread_count() contiguous chunks; body is
/// called as body(begin, end). Chunk boundaries do not depend on the thread
/// count's scheduling, so results are identical for any TCLAW_THREADS as long
/// as chunks write disjoint data.
void parallel_for(int n, const std::function<void(int, int)>& body);

}  // namespace tclaw
