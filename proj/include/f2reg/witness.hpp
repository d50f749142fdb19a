#pragma once

// Irregularity certificates for the lower-bound instance. Every nonzero
// subspace H gets a minimal active block i, a witness character gamma per coset
// supported on block i, and an exact count of cosets where that character
// beats epsilon.
//
// All arithmetic here is exact: coefficients of s*f on a coset of H are
// integers over s * 2^dim(H).

#include <cstdint>
#include <string>
#include <vector>

#include "f2reg/gf2.hpp"
#include "f2reg/instance.hpp"

namespace f2reg {

struct ActiveBlock {
  int block = 0;
  /// Basis element of H realizing the block.
  F2Vector v;
};

/// Smallest i such that some v in H has v^i != 0. Throws PreconditionError
/// for H = {0}.
ActiveBlock minimal_active_block(const Subspace& h, const BlockStructure& blocks);

/// (0, ..., 0, xi_i(g^1, ..., g^{i-1}), 0, ..., 0).
F2Vector gamma_character(const Instance& inst, const F2Vector& g, int block);

/// |B| / 2^n for B = {g : gamma_g in H^perp}, counted over prefix classes.
Rational measure_bad_fraction(const Instance& inst, const Subspace& h, int block);
/// As above; throws ClaimViolation when the fraction exceeds 3/4.
Rational bad_fraction(const Instance& inst, const Subspace& h, int block);

/// Exact coefficient of f on the coset rep + H at gamma.
Rational coset_coefficient(const Instance& inst, const CosetGeometry& geom, std::uint64_t rep,
                           std::uint64_t gamma);

struct TranslateCoefficient {
  F2Vector representative;
  Rational coefficient;
};

/// The cosets H + g + w for w in W (W spanned by blocks after i), each listed
/// once, ascending by representative. Averages over w equal averages over
/// this list.
struct WTranslates {
  F2Vector gamma;
  std::vector<TranslateCoefficient> cosets;

  Rational average() const;
  /// Fraction of translates whose coefficient is strictly above threshold.
  Rational fraction_above(const Rational& threshold) const;
};

/// Throws PreconditionError if gamma_g lies in H^perp.
WTranslates w_translates(const Instance& inst, const Subspace& h, const F2Vector& g, int block);

/// E_{w in W} of the gamma_g coefficient on H + g + w; equals 1/(2s).
Rational w_average_coefficient(const Instance& inst, const Subspace& h, const F2Vector& g, int block);

/// Fraction of translates with coefficient > 1/(4s); throws ClaimViolation
/// unless it exceeds 1/(4s).
Rational corollary_fraction(const Instance& inst, const Subspace& h, const F2Vector& g, int block);

struct CosetRecord {
  F2Vector representative;
  F2Vector gamma;
  Rational coefficient;
  bool gamma_nontrivial = false;
  /// gamma nontrivial and coefficient > epsilon.
  bool certified = false;
};

struct WitnessCertificate {
  Subspace subspace;
  Rational epsilon;
  ActiveBlock active;
  Rational bad_fraction;
  /// bad_fraction <= 3/4.
  bool bad_fraction_within_bound = false;
  std::vector<CosetRecord> cosets;
  Rational irregular_fraction;
  /// The fourier-side regularity report was consulted and agreed.
  bool cross_checked = false;
};

/// Scans every coset of H. Throws ClaimViolation unless the certified cosets
/// form more than an epsilon fraction, or if the independent fourier check
/// disagrees.
WitnessCertificate witness_scan(const Instance& inst, const Subspace& h, const Rational& epsilon);

enum class LowerBoundMode { kExhaustive, kStructured };

struct LowerBoundOptions {
  LowerBoundMode mode = LowerBoundMode::kExhaustive;
  /// Structured mode: random subspaces per dimension 1 .. n-1.
  std::uint64_t random_per_dim = 10'000;
  bool include_codim2 = false;
  std::uint64_t seed = 1;
};

struct LowerBoundReport {
  int s = 0;
  int n = 0;
  Rational epsilon;
  LowerBoundMode mode = LowerBoundMode::kExhaustive;
  std::uint64_t seed = 0;
  std::uint64_t subspaces_tested = 0;  // nonzero subspaces
  std::uint64_t subspaces_irregular = 0;
  std::uint64_t hyperplanes = 0;
  std::uint64_t codim2 = 0;
  std::uint64_t random = 0;
  bool zero_subspace_regular = false;
  /// Subspaces whose bad fraction exceeded 3/4.
  std::uint64_t bad_fraction_violations = 0;
  Rational max_bad_fraction;
  Rational min_irregular_fraction;
  /// Basis of the worst such subspace, when any.
  std::vector<std::uint64_t> bad_fraction_example;
  /// Certificates; kept only in exhaustive mode.
  std::vector<WitnessCertificate> certificates;

  bool only_zero_regular() const { return zero_subspace_regular && subspaces_irregular == subspaces_tested; }
  /// "15/15 nonzero subspaces irregular"
  std::string summary_line() const {
    return std::to_string(subspaces_irregular) + "/" + std::to_string(subspaces_tested) + " nonzero subspaces irregular";
  }
};

/// Checks that {0} is epsilon-regular, and every tested H != {0} fails the
/// fourier regularity check and carries a witness certificate. Any failure
/// throws ClaimViolation naming H. Exhaustive mode needs n <= 4.
LowerBoundReport exhaustive_lowerbound_check(const Instance& inst, const Rational& epsilon,
                                             const LowerBoundOptions& options = {});

}  // namespace f2reg
