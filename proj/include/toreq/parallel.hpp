#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace toreq {

/// Worker count used by parallel_map; defaults to the hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Set asynchronously (e.g. from a signal handler) to stop long scans.
std::atomic<bool>& cancel_flag();
/// Throws Error(Cancelled) once cancel_flag() is set.
void check_cancelled();

/// Evaluates fn(0), ..., fn(count - 1) on the worker pool and returns the
/// results in index order. If several calls throw, the exception from the
/// lowest index is rethrown, so failures are as deterministic as results.
template <class Fn>
auto parallel_map(std::size_t count, Fn fn) -> std::vector<std::invoke_result_t<Fn, std::size_t>> {
  using T = std::invoke_result_t<Fn, std::size_t>;
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace toreq
