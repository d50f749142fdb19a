#pragma once

// F2FN table files:
//   bytes 0-3   magic "F2FN"
//   byte  4     format version (1)
//   bytes 5-8   n, uint32 little-endian
//   bytes 9-    2^n IEEE-754 binary64 little-endian values in index order

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "f2reg/fourier.hpp"

namespace f2reg {

inline constexpr std::uint8_t kTableFormatVersion = 1;

void write_table(std::ostream& out, const FunctionTable& f);
void write_table(const std::filesystem::path& path, const FunctionTable& f);

/// Throws FormatError: kMalformedHeader for a bad magic, version or n, or a
/// payload longer than 2^n values; kTruncatedPayload for a short payload;
/// kValueOutOfRange for values outside [0, 1].
FunctionTable read_table(std::istream& in);
FunctionTable read_table(const std::filesystem::path& path);

}  // namespace f2reg
