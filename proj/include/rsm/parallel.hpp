#pragma once

// Deterministic task fan-out. Work is split into indexed slots; each slot
// writes only its own result and the caller reduces in slot order, so the
// thread count can never change an output bit.

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace rsm {

int thread_count();
void set_thread_count(int n);  // 0 = hardware concurrency

// Runs fn(i) for i in [0, count), possibly concurrently.
void parallel_for_slots(int count, const std::function<void(int)>& fn);

}  // namespace rsm
