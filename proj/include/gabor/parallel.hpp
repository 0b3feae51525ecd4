#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gabor {

/// --jobs default: GABOR_RIP_JOBS if set and positive, else 1.
int default_jobs();

/// Runs body(i) for i in [0, count) on up to `jobs` workers. Indices are
/// handed out by an atomic counter; callers own the output slots, so results
/// are identical for every worker count. The first exception is rethrown
/// after all workers join.
void parallel_for_index(std::size_t count, int jobs,
                        const std::function<void(std::size_t)>& body);

}  // namespace gabor
