#pragma once

// Fourier spectra of bounded functions on F_2^n and on its affine subspaces,
// and the coset / subspace regularity checks built on them.

#include <cstdint>
#include <vector>

#include "f2reg/gf2.hpp"
#include "f2reg/wht.hpp"

namespace f2reg {

/// Coefficients within this band above epsilon still count as regular. Every
/// value from dyadic or 1/s tables sits far outside it.
inline constexpr double kRegularityGuard = 1e-9;

/// Dense table of f: F_2^n -> [0, 1], indexed by the integer encoding of x.
class FunctionTable {
 public:
  FunctionTable() = default;
  /// Validates length 2^n and the range [0, 1].
  FunctionTable(int n, Eigen::VectorXd values);

  static FunctionTable constant(int n, double c);

  int n() const { return n_; }
  std::uint64_t size() const { return static_cast<std::uint64_t>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }
  double operator()(std::uint64_t x) const { return values_[static_cast<Eigen::Index>(x)]; }

  double mean() const { return values_.mean(); }

 private:
  int n_ = 0;
  Eigen::VectorXd values_;
};

/// out[eta] = E_x f(x) (-1)^{<x, eta>}, via the butterfly in O(n 2^n).
Eigen::VectorXd wht_full(const FunctionTable& f);

/// (1/|A|) sum_{x in A} f(x) (-1)^{<x, eta>}, summed directly.
double restricted_coefficient(const FunctionTable& f, const AffineSubspace& a, const F2Vector& eta);

/// Spectrum of f restricted to a coset: one coefficient per class of
/// F_2^n / H^perp. Class t has canonical representative supported on the
/// pivot coordinates of H; class 0 is the trivial class and holds the mean.
/// Values are taken relative to the coset representative r, so the
/// coefficient of eta on the coset is (-1)^{<r, eta>} times the stored one.
struct CosetSpectrum {
  AffineSubspace coset;
  Eigen::VectorXd coefficients;

  double mean() const { return coefficients[0]; }
  std::uint64_t class_count() const { return static_cast<std::uint64_t>(coefficients.size()); }
  F2Vector class_representative(std::uint64_t label) const;
  /// Coefficient of the class containing eta.
  double coefficient(const F2Vector& eta) const;
};

CosetSpectrum restricted_spectrum(const FunctionTable& f, const AffineSubspace& a);

struct CosetVerdict {
  bool regular = true;
  /// Largest nontrivial coefficient by absolute value; smallest encoding wins
  /// ties. Zero vector and 0 when H = {0}.
  F2Vector worst_character;
  double worst_value = 0.0;
};

CosetVerdict check_coset_regularity(const FunctionTable& f, const AffineSubspace& a, double epsilon);

struct CosetWitness {
  F2Vector representative;
  F2Vector character;
  double value = 0.0;
};

struct RegularityReport {
  Subspace subspace;
  double epsilon = 0.0;
  std::uint64_t total_cosets = 0;
  std::uint64_t regular_cosets = 0;
  /// One entry per irregular coset, ascending by representative.
  std::vector<CosetWitness> witnesses;

  /// At least (1 - epsilon) of the cosets are regular.
  bool is_regular() const;
  double regular_fraction() const {
    return static_cast<double>(regular_cosets) / static_cast<double>(total_cosets);
  }
};

RegularityReport check_subspace_regularity(const FunctionTable& f, const Subspace& h, double epsilon);

/// Dense-scan variant of the above for callers that already hold the geometry.
RegularityReport check_subspace_regularity(const FunctionTable& f, const Subspace& h,
                                           const CosetGeometry& geom, double epsilon);

}  // namespace f2reg
