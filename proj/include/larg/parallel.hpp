//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <functional>

namespace larg {

/// Worker count: LARG_LAB_THREADS when set and positive, else the hardware
/// concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Each
/// index runs exactly once; the caller owns per-index output slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

}  // namespace larg
