#include "f2reg/table_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "f2reg/errors.hpp"
#include "f2reg/limits.hpp"

namespace f2reg {
namespace {

constexpr std::array<char, 4> kMagic{'F', '2', 'F', 'N'};
constexpr std::size_t kHeaderSize = 9;

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(const unsigned char* p) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

using Kind = FormatError::Kind;

}  // namespace

void write_table(std::ostream& out, const FunctionTable& f) {
  out.write(kMagic.data(), kMagic.size());
  out.put(static_cast<char>(kTableFormatVersion));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.n()));
  for (Eigen::Index i = 0; i < f.values().size(); ++i) put_le<double>(out, f.values()[i]);
  if (!out) throw FormatError(Kind::kIo, "failed writing table");
}

void write_table(const std::filesystem::path& path, const FunctionTable& f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(Kind::kIo, "cannot open " + path.string() + " for writing");
  write_table(out, f);
}

FunctionTable read_table(std::istream& in) {
  std::vector<unsigned char> header(kHeaderSize);
  in.read(reinterpret_cast<char*>(header.data()), static_cast<std::streamsize>(kHeaderSize));
  if (static_cast<std::size_t>(in.gcount()) != kHeaderSize) {
    throw FormatError(Kind::kMalformedHeader, "table header is incomplete");
  }
  if (std::memcmp(header.data(), kMagic.data(), kMagic.size()) != 0) {
    throw FormatError(Kind::kMalformedHeader, "bad magic; not an F2FN table");
  }
  if (header[4] != kTableFormatVersion) {
    throw FormatError(Kind::kMalformedHeader, "unsupported table format version " + std::to_string(header[4]));
  }
  const std::uint32_t n = get_le<std::uint32_t>(header.data() + 5);
  if (n > 40) throw FormatError(Kind::kMalformedHeader, "table dimension " + std::to_string(n) + " is implausible");
  require_dense(static_cast<int>(n), "read_table");
  const std::size_t count = std::size_t{1} << n;
  std::vector<unsigned char> payload(count * 8);
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
    throw FormatError(Kind::kTruncatedPayload, "payload holds " + std::to_string(in.gcount()) + " of " +
                                                   std::to_string(payload.size()) + " bytes");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError(Kind::kMalformedHeader, "payload is longer than the 2^" + std::to_string(n) +
                                                  " values the header declares");
  }
  Eigen::VectorXd values(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    const double v = get_le<double>(payload.data() + 8 * i);
    if (!(v >= 0.0 && v <= 1.0)) {
      throw FormatError(Kind::kValueOutOfRange, "value at index " + std::to_string(i) + " is outside [0, 1]");
    }
    values[static_cast<Eigen::Index>(i)] = v;
  }
  return FunctionTable(static_cast<int>(n), std::move(values));
}

FunctionTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(Kind::kIo, "cannot open " + path.string());
  return read_table(in);
}

}  // namespace f2reg
