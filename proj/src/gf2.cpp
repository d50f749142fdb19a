#include "f2reg/gf2.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "f2reg/errors.hpp"
#include "f2reg/limits.hpp"
#include "f2reg/random.hpp"

namespace f2reg {
namespace {

int word_count(int n) { return (n + 63) / 64; }

void require_same(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": ambient dimensions " + std::to_string(a) +
                            " and " + std::to_string(b) + " differ");
  }
}

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Splits a list of generators into two lookup tables holding all subset sums
// of the lower and upper halves.
void build_split_tables(const std::vector<std::uint64_t>& gens, std::vector<std::uint64_t>& lo,
                        std::vector<std::uint64_t>& hi, std::uint64_t& mask, int& split) {
  const int k = static_cast<int>(gens.size());
  split = k / 2;
  mask = (std::uint64_t{1} << split) - 1;
  auto fill = [&](std::vector<std::uint64_t>& table, int first, int count) {
    table.assign(std::size_t{1} << count, 0);
    for (std::size_t c = 1; c < table.size(); ++c) {
      const int low = std::countr_zero(c);
      table[c] = table[c & (c - 1)] ^ gens[first + low];
    }
  };
  fill(lo, 0, split);
  fill(hi, split, k - split);
}

}  // namespace

// ---------------------------------------------------------------- F2Vector

F2Vector::F2Vector(int n) : n_(n), words_(word_count(n), 0) {
  if (n < 0) throw PreconditionError("negative vector length");
}

F2Vector F2Vector::from_index(int n, std::uint64_t index) {
  F2Vector v(n);
  if (n < 64 && (index >> n) != 0) {
    throw PreconditionError("index " + std::to_string(index) + " does not fit in " +
                            std::to_string(n) + " bits");
  }
  if (n > 0) v.words_[0] = index;
  return v;
}

F2Vector F2Vector::unit(int n, int bit) {
  F2Vector v(n);
  v.set(bit);
  return v;
}

F2Vector F2Vector::from_hex(int n, std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw PreconditionError("empty hex vector");
  F2Vector v(n);
  int bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    const char ch = *it;
    int nibble;
    if (ch >= '0' && ch <= '9') {
      nibble = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      nibble = ch - 'a' + 10;
    } else if (ch >= 'A' && ch <= 'F') {
      nibble = ch - 'A' + 10;
    } else {
      throw PreconditionError("invalid hex digit in vector: " + std::string(hex));
    }
    for (int b = 0; b < 4; ++b) {
      if ((nibble >> b) & 1) {
        if (bit + b >= n) {
          throw PreconditionError("hex vector " + std::string(hex) + " does not fit in " +
                                  std::to_string(n) + " bits");
        }
        v.set(bit + b);
      }
    }
  }
  return v;
}

void F2Vector::set(int bit, bool value) {
  const std::uint64_t m = std::uint64_t{1} << (bit & 63);
  if (value) {
    words_[bit >> 6] |= m;
  } else {
    words_[bit >> 6] &= ~m;
  }
}

bool F2Vector::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

int F2Vector::lowest_set_bit() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
  }
  return -1;
}

int F2Vector::popcount() const {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

std::uint64_t F2Vector::to_index() const {
  if (n_ > 64) throw PreconditionError("integer encoding needs n <= 64");
  return words_.empty() ? 0 : words_[0];
}

std::string F2Vector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  const int nibbles = std::max(1, (n_ + 3) / 4);
  for (int i = nibbles - 1; i >= 0; --i) {
    int nibble = 0;
    for (int b = 0; b < 4; ++b) {
      const int bit = 4 * i + b;
      if (bit < n_ && test(bit)) nibble |= 1 << b;
    }
    out.push_back(kDigits[nibble]);
  }
  // Strip leading zeros but keep one digit.
  const auto first = out.find_first_not_of('0');
  out = first == std::string::npos ? "0" : out.substr(first);
  return "0x" + out;
}

F2Vector F2Vector::slice(int begin, int count) const {
  F2Vector out(count);
  if (begin % 64 == 0) {
    const int w0 = begin / 64;
    for (int i = 0; i < word_count(count); ++i) out.words_[i] = words_[w0 + i];
    if (count % 64 != 0) out.words_.back() &= low_mask(count % 64);
    return out;
  }
  for (int b = 0; b < count; ++b) {
    if (test(begin + b)) out.set(b);
  }
  return out;
}

void F2Vector::assign_slice(int begin, const F2Vector& part) {
  if (begin + part.size() > n_) throw DimensionMismatch("slice exceeds vector length");
  for (int b = 0; b < part.size(); ++b) set(begin + b, part.test(b));
}

F2Vector& F2Vector::operator^=(const F2Vector& other) {
  require_same(n_, other.n_, "xor");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::strong_ordering operator<=>(const F2Vector& a, const F2Vector& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool dot(const F2Vector& a, const F2Vector& b) {
  require_same(a.size(), b.size(), "dot");
  std::uint64_t acc = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) acc ^= wa[i] & wb[i];
  return parity(acc) != 0;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::zero(int n) { return echelonize(n, {}); }

Subspace Subspace::full(int n) {
  std::vector<F2Vector> units;
  units.reserve(n);
  for (int b = 0; b < n; ++b) units.push_back(F2Vector::unit(n, b));
  return echelonize(n, units);
}

std::vector<int> Subspace::free_bits() const {
  std::vector<int> out;
  out.reserve(codim());
  std::size_t p = 0;
  for (int b = 0; b < n_; ++b) {
    if (p < pivots_.size() && pivots_[p] == b) {
      ++p;
    } else {
      out.push_back(b);
    }
  }
  return out;
}

F2Vector Subspace::reduce(F2Vector v) const {
  require_same(n_, v.size(), "reduce");
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    if (v.test(pivots_[j])) v ^= basis_[j];
  }
  return v;
}

Subspace echelonize(int n, std::span<const F2Vector> vectors) {
  Subspace h;
  h.n_ = n;
  for (const auto& input : vectors) {
    require_same(n, input.size(), "echelonize");
    F2Vector v = h.reduce(input);
    const int pivot = v.lowest_set_bit();
    if (pivot < 0) continue;
    // v is zero on existing pivots; clear the new pivot from the other rows.
    for (auto& row : h.basis_) {
      if (row.test(pivot)) row ^= v;
    }
    const auto pos = std::lower_bound(h.pivots_.begin(), h.pivots_.end(), pivot);
    const auto idx = pos - h.pivots_.begin();
    h.pivots_.insert(pos, pivot);
    h.basis_.insert(h.basis_.begin() + idx, std::move(v));
  }
  return h;
}

bool contains(const Subspace& h, const F2Vector& v) { return h.reduce(v).is_zero(); }

Subspace orthogonal_complement(const Subspace& h) {
  const int n = h.ambient();
  std::vector<F2Vector> gens;
  for (int c : h.free_bits()) {
    F2Vector eta = F2Vector::unit(n, c);
    for (int j = 0; j < h.dim(); ++j) {
      if (h.basis()[j].test(c)) eta.set(h.pivots()[j]);
    }
    gens.push_back(std::move(eta));
  }
  return echelonize(n, gens);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same(a.ambient(), b.ambient(), "sum");
  std::vector<F2Vector> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return echelonize(a.ambient(), gens);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same(a.ambient(), b.ambient(), "intersect");
  return orthogonal_complement(sum(orthogonal_complement(a), orthogonal_complement(b)));
}

std::vector<F2Vector> coset_representatives(const Subspace& h) {
  require_dense(h.codim(), "coset_representatives");
  const auto free = h.free_bits();
  const std::uint64_t count = std::uint64_t{1} << free.size();
  std::vector<F2Vector> reps;
  reps.reserve(count);
  for (std::uint64_t u = 0; u < count; ++u) {
    F2Vector r(h.ambient());
    for (std::size_t k = 0; k < free.size(); ++k) {
      if ((u >> k) & 1) r.set(free[k]);
    }
    reps.push_back(std::move(r));
  }
  // Free bits ascend, so spreading u preserves integer order.
  return reps;
}

std::vector<Subspace> enumerate_all_subspaces(int n) {
  if (n < 0 || n > 4) {
    throw GuardError("enumerate_all_subspaces refuses n = " + std::to_string(n) + " (max 4)");
  }
  const std::uint64_t points = std::uint64_t{1} << n;
  // Every subspace is the span of some set of nonzero vectors.
  auto key = [](const Subspace& h) {
    std::vector<std::uint64_t> k{static_cast<std::uint64_t>(h.dim())};
    for (const auto& b : h.basis()) k.push_back(b.to_index());
    return k;
  };
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<Subspace> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (points - 1)); ++mask) {
    std::vector<F2Vector> gens;
    for (std::uint64_t p = 1; p < points; ++p) {
      if ((mask >> (p - 1)) & 1) gens.push_back(F2Vector::from_index(n, p));
    }
    Subspace h = echelonize(n, gens);
    if (seen.insert(key(h)).second) out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [&](const Subspace& a, const Subspace& b) { return key(a) < key(b); });
  return out;
}

F2Vector random_vector(int n, CounterStream& rng) {
  F2Vector v(n);
  for (int w = 0; w < word_count(n); ++w) {
    const std::uint64_t r = rng.next();
    for (int b = 0; b < 64 && 64 * w + b < n; ++b) {
      if ((r >> b) & 1) v.set(64 * w + b);
    }
  }
  return v;
}

Subspace random_subspace(int n, int dim, CounterStream& rng) {
  if (dim < 0 || dim > n) throw PreconditionError("random_subspace: dim out of range");
  while (true) {
    std::vector<F2Vector> gens;
    gens.reserve(dim);
    for (int i = 0; i < dim; ++i) gens.push_back(random_vector(n, rng));
    Subspace h = echelonize(n, gens);
    if (h.dim() == dim) return h;
  }
}

// ---------------------------------------------------------- AffineSubspace

AffineSubspace::AffineSubspace(Subspace h, const F2Vector& g) : h_(std::move(h)), rep_(h_.reduce(g)) {}

bool AffineSubspace::contains(const F2Vector& x) const { return h_.reduce(x) == rep_; }

// ---------------------------------------------------------- BlockStructure

BlockStructure::BlockStructure(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw PreconditionError("block structure needs at least one block");
  for (int d : dims_) {
    if (d <= 0) throw PreconditionError("block dimensions must be positive");
    prefix_.push_back(prefix_.back() + d);
  }
}

int BlockStructure::block_of(int bit) const {
  const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), bit);
  return static_cast<int>(it - prefix_.begin());
}

std::uint64_t BlockStructure::prefix_index(const F2Vector& x, int block) const {
  const int bits = prefix(block - 1);
  if (bits > 64) throw PreconditionError("prefix longer than 64 bits");
  if (bits == 0) return 0;
  return x.words()[0] & low_mask(bits);
}

// ----------------------------------------------------------- CosetGeometry

CosetGeometry::CosetGeometry(const Subspace& h) : n_(h.ambient()), pivots_(h.pivots()), free_(h.free_bits()) {
  if (n_ > 64) throw GuardError("dense coset scans need n <= 64");
  basis_.reserve(h.dim());
  for (const auto& b : h.basis()) basis_.push_back(b.to_index());
  std::vector<std::uint64_t> free_units;
  free_units.reserve(free_.size());
  for (int c : free_) free_units.push_back(std::uint64_t{1} << c);
  build_split_tables(basis_, span_lo_, span_hi_, span_mask_, span_split_);
  build_split_tables(free_units, rep_lo_, rep_hi_, rep_mask_, rep_split_);
}

std::uint64_t CosetGeometry::reduce(std::uint64_t x) const {
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    if ((x >> pivots_[j]) & 1) x ^= basis_[j];
  }
  return x;
}

std::uint64_t CosetGeometry::coset_of(std::uint64_t x) const {
  const std::uint64_t r = reduce(x);
  std::uint64_t u = 0;
  for (std::size_t k = 0; k < free_.size(); ++k) u |= ((r >> free_[k]) & 1) << k;
  return u;
}

std::uint64_t CosetGeometry::class_label(std::uint64_t eta) const {
  std::uint64_t t = 0;
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    t |= static_cast<std::uint64_t>(parity(basis_[j] & eta)) << j;
  }
  return t;
}

std::uint64_t CosetGeometry::class_representative(std::uint64_t label) const {
  std::uint64_t eta = 0;
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    if ((label >> j) & 1) eta |= std::uint64_t{1} << pivots_[j];
  }
  return eta;
}

}  // namespace f2reg
