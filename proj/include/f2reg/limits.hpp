#pragma once

#include <cstdint>
#include <string_view>

namespace f2reg {

inline constexpr int kDefaultDenseLimit = 26;

/// Largest k for which operations may materialize 2^k objects.
int dense_limit();
void set_dense_limit(int k);

/// Throws GuardError when 2^k objects would exceed the dense limit.
void require_dense(int k, std::string_view what);

/// Worker count, from F2REGLAB_THREADS (default 1).
unsigned thread_count();
void set_thread_count(unsigned count);

}  // namespace f2reg
