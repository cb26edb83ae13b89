#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace feedplan::cli {

/// FEEDPLAN_WORKERS when set to a positive integer, else the hardware
/// concurrency (at least 1).
int worker_count();

/// Calls task(i) for every i in [0, n) on up to `workers` threads. Tasks write
/// results by index, so scheduling never changes the output. After all tasks
/// finish, the exception of the lowest failing index is rethrown.
void run_indexed(std::size_t n, int workers, const std::function<void(std::size_t)>& task);

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int workers, F&& f) {
  std::vector<std::optional<T>> slots(n);
  run_indexed(n, workers, [&](std::size_t i) { slots[i].emplace(f(i)); });
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace feedplan::cli
