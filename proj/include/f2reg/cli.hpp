#pragma once

#include <iosfwd>
#include <string>

#include "f2reg/instance.hpp"

namespace f2reg::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitClaimFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parses "1/48", "0.03125" or "3" exactly.
Rational parse_rational(const std::string& text);

/// Runs one subcommand: gen, eval, check, decompose, verify-lowerbound,
/// spanning, round, bench-wht.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace f2reg::cli
