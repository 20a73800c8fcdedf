#include "toreq/parallel.hpp"

#include "toreq/error.hpp"

namespace toreq {

namespace {

std::atomic<unsigned> configured_threads{0};
std::atomic<bool> cancelled{false};

}  // namespace

unsigned thread_count() {
  unsigned n = configured_threads.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

void set_thread_count(unsigned n) { configured_threads.store(n); }

std::atomic<bool>& cancel_flag() { return cancelled; }

void check_cancelled() {
  if (cancelled.load(std::memory_order_relaxed)) throw Error(ErrorKind::Cancelled, "interrupted");
}

}  // namespace toreq
