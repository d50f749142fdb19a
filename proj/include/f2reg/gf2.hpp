#pragma once

// Exact linear algebra over F_2: vectors, subspaces in canonical reduced
// row-echelon form, duals, cosets and coordinate blocks.
//
// Coordinate convention: coordinate j (1-based) is bit j-1 of the integer
// encoding, i.e. coordinate 1 is the least significant bit. The API below
// speaks in 0-based bit positions throughout.

#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace f2reg {

class CounterStream;

/// An element of F_2^n; also used for characters eta.
class F2Vector {
 public:
  F2Vector() = default;
  explicit F2Vector(int n);

  static F2Vector from_index(int n, std::uint64_t index);
  static F2Vector unit(int n, int bit);
  /// Big-endian hex digits, optional "0x" prefix; bits beyond n must be zero.
  static F2Vector from_hex(int n, std::string_view hex);

  int size() const { return n_; }
  std::span<const std::uint64_t> words() const { return {words_.data(), words_.size()}; }

  bool test(int bit) const { return (words_[bit >> 6] >> (bit & 63)) & 1U; }
  void set(int bit, bool value = true);
  void flip(int bit) { words_[bit >> 6] ^= std::uint64_t{1} << (bit & 63); }

  bool is_zero() const;
  /// -1 for the zero vector.
  int lowest_set_bit() const;
  int popcount() const;

  /// Integer encoding; requires n <= 64.
  std::uint64_t to_index() const;
  std::string to_hex() const;

  /// Bits [begin, begin + count) as a vector of length count.
  F2Vector slice(int begin, int count) const;
  /// Overwrites bits [begin, begin + part.size()).
  void assign_slice(int begin, const F2Vector& part);

  F2Vector& operator^=(const F2Vector& other);
  friend F2Vector operator^(F2Vector a, const F2Vector& b) { return a ^= b; }

  /// Equal ambient dimension and bits.
  friend bool operator==(const F2Vector& a, const F2Vector& b) = default;
  /// Integer order of encodings (ambient dimension first).
  friend std::strong_ordering operator<=>(const F2Vector& a, const F2Vector& b);

 private:
  int n_ = 0;
  // Inline storage covers n <= 256 without allocation.
  boost::container::small_vector<std::uint64_t, 4> words_;
};

/// Inner product <a, b> over F_2.
bool dot(const F2Vector& a, const F2Vector& b);

/// Subspace H <= F_2^n with a canonical basis: rows sorted by pivot (lowest
/// set bit) ascending, and every pivot column is zero in all other rows.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(int n);
  static Subspace full(int n);

  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  /// log2 of the index 2^(n - dim).
  int codim() const { return n_ - dim(); }

  const std::vector<F2Vector>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  /// Non-pivot bit positions, ascending.
  std::vector<int> free_bits() const;

  /// v reduced modulo H: all pivot coordinates cleared. Equal cosets reduce
  /// to equal vectors.
  F2Vector reduce(F2Vector v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  friend Subspace echelonize(int n, std::span<const F2Vector> vectors);

  int n_ = 0;
  std::vector<F2Vector> basis_;
  std::vector<int> pivots_;
};

/// Canonical basis of span(vectors). Throws DimensionMismatch on mixed n.
Subspace echelonize(int n, std::span<const F2Vector> vectors);
inline Subspace echelonize(std::span<const F2Vector> vectors) {
  return echelonize(vectors.empty() ? 0 : vectors.front().size(), vectors);
}

bool contains(const Subspace& h, const F2Vector& v);
Subspace orthogonal_complement(const Subspace& h);
Subspace intersect(const Subspace& a, const Subspace& b);
/// Span of a and b.
Subspace sum(const Subspace& a, const Subspace& b);

/// One canonical representative per coset of H, ascending. Guarded.
std::vector<F2Vector> coset_representatives(const Subspace& h);

/// Every subspace of F_2^n exactly once, ordered by (dim, basis); n <= 4.
std::vector<Subspace> enumerate_all_subspaces(int n);

/// Span of `dim` uniform vectors, resampled until independent.
Subspace random_subspace(int n, int dim, CounterStream& rng);
F2Vector random_vector(int n, CounterStream& rng);

/// A coset H + g with canonical representative.
class AffineSubspace {
 public:
  AffineSubspace() = default;
  AffineSubspace(Subspace h, const F2Vector& g);

  const Subspace& subspace() const { return h_; }
  const F2Vector& representative() const { return rep_; }
  int ambient() const { return h_.ambient(); }
  /// log2 of the number of elements.
  int dim() const { return h_.dim(); }
  bool contains(const F2Vector& x) const;

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) = default;

 private:
  Subspace h_;
  F2Vector rep_;
};

/// Partition of the n coordinates into consecutive blocks d_1, ..., d_s.
/// Blocks are numbered from 1.
class BlockStructure {
 public:
  BlockStructure() = default;
  explicit BlockStructure(std::vector<int> dims);

  int count() const { return static_cast<int>(dims_.size()); }
  int ambient() const { return prefix_.back(); }
  int size(int block) const { return dims_[block - 1]; }
  /// D_i = d_1 + ... + d_i; D_0 = 0.
  int prefix(int i) const { return prefix_[i]; }
  /// First bit of the block.
  int begin(int block) const { return prefix_[block - 1]; }
  /// Block holding the bit.
  int block_of(int bit) const;
  const std::vector<int>& dims() const { return dims_; }

  F2Vector block(const F2Vector& x, int block) const { return x.slice(begin(block), size(block)); }
  /// Integer encoding of (x^1, ..., x^{block-1}); requires D_{block-1} <= 64.
  std::uint64_t prefix_index(const F2Vector& x, int block) const;

 private:
  std::vector<int> dims_;
  std::vector<int> prefix_{0};
};

/// Integer-encoded view of H for dense coset scans (n <= 64). Cosets are
/// numbered by u in [0, 2^codim): representative(u) spreads the bits of u over
/// the free coordinates; element(rep, c) = rep + sum_j c_j h_j for c in
/// [0, 2^dim). Both use split lookup tables, so memory is O(2^(k/2)).
class CosetGeometry {
 public:
  explicit CosetGeometry(const Subspace& h);

  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int codim() const { return n_ - dim(); }
  std::uint64_t coset_count() const { return std::uint64_t{1} << codim(); }
  std::uint64_t coset_size() const { return std::uint64_t{1} << dim(); }

  const std::vector<std::uint64_t>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  std::uint64_t representative(std::uint64_t u) const {
    return rep_lo_[u & rep_mask_] ^ rep_hi_[u >> rep_split_];
  }
  std::uint64_t offset(std::uint64_t c) const {
    return span_lo_[c & span_mask_] ^ span_hi_[c >> span_split_];
  }
  std::uint64_t element(std::uint64_t rep, std::uint64_t c) const { return rep ^ offset(c); }

  /// Canonical representative of x + H.
  std::uint64_t reduce(std::uint64_t x) const;
  /// Coset number u of x + H.
  std::uint64_t coset_of(std::uint64_t x) const;

  /// Dual class label t of eta: t_j = <h_j, eta>. Classes of F_2^n / H^perp.
  std::uint64_t class_label(std::uint64_t eta) const;
  /// The member of class t supported on pivot coordinates. Its encoding is
  /// increasing in t.
  std::uint64_t class_representative(std::uint64_t label) const;

 private:
  int n_;
  std::vector<std::uint64_t> basis_;
  std::vector<int> pivots_;
  std::vector<int> free_;
  std::vector<std::uint64_t> span_lo_, span_hi_, rep_lo_, rep_hi_;
  std::uint64_t span_mask_ = 0, rep_mask_ = 0;
  int span_split_ = 0, rep_split_ = 0;
};

inline int parity(std::uint64_t x) { return __builtin_parityll(x); }

}  // namespace f2reg
