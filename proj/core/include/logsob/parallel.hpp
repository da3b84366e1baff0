// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace logsob {

/// Worker count: LOGSOB_THREADS when set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

/// Runs task(i) for i in [0, n). Tasks must write only to their own slot of
/// any shared output; results therefore do not depend on the schedule.
/// The first exception thrown by a task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace logsob
