// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace tclaw {

/// Runs the randomized invariant suites of every module (fixed seeds),
/// printing one PASS/FAIL line per suite. Returns false on any violation.
bool run_selftest(std::ostream& os);

}  // namespace tclaw
