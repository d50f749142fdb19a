#include "f2reg/limits.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include "f2reg/errors.hpp"

namespace f2reg {
namespace {

std::atomic<int> g_dense_limit{kDefaultDenseLimit};
std::atomic<unsigned> g_threads{0};  // 0 = read from environment

unsigned threads_from_env() {
  const char* env = std::getenv("F2REGLAB_THREADS");
  if (env == nullptr) return 1;
  const long parsed = std::strtol(env, nullptr, 10);
  if (parsed <= 0) return 1;
  return static_cast<unsigned>(parsed);
}

}  // namespace

int dense_limit() { return g_dense_limit.load(std::memory_order_relaxed); }

void set_dense_limit(int k) {
  if (k <= 0 || k > 40) {
    throw GuardError("dense limit must lie in [1, 40], got " + std::to_string(k));
  }
  g_dense_limit.store(k, std::memory_order_relaxed);
}

void require_dense(int k, std::string_view what) {
  if (k > dense_limit()) {
    throw GuardError(std::string(what) + ": 2^" + std::to_string(k) +
                     " objects exceed the dense limit 2^" + std::to_string(dense_limit()));
  }
}

unsigned thread_count() {
  unsigned t = g_threads.load(std::memory_order_relaxed);
  if (t == 0) t = threads_from_env();
  return t;
}

void set_thread_count(unsigned count) { g_threads.store(count, std::memory_order_relaxed); }

}  // namespace f2reg
