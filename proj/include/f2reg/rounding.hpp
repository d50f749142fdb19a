#pragma once

// Randomized rounding of a bounded function to a binary one, and empirical
// measurement of how far restricted Fourier coefficients move.

#include <cstdint>
#include <string>
#include <vector>

#include "f2reg/fourier.hpp"
#include "f2reg/gf2.hpp"

namespace f2reg {

/// S(x) = 1 with probability f(x), independently; the draw for x depends only
/// on (seed, x).
FunctionTable round_to_binary(const FunctionTable& f, std::uint64_t seed);

/// 4 n^2 / tau^2: smallest coset size the rounding guarantee covers.
double rounding_size_threshold(int n, double tau);

struct DeviationFamilies {
  /// Random cosets of subspaces with codimension in [0, max_codim].
  int max_codim = 4;
  std::uint64_t random_pairs = 200;
  /// Also scan every character on the full space (one transform).
  bool full_space = true;
  std::uint64_t seed = 1;
};

struct DeviationRecord {
  AffineSubspace coset;
  F2Vector character;
  double deviation = 0.0;
};

struct RoundingReport {
  double tau = 0.0;
  std::uint64_t seed = 0;
  double size_threshold = 0.0;
  /// Exponent of the union-bound count 2^(n^2 + n) of (A, eta) pairs.
  int union_bound_log2 = 0;
  std::vector<DeviationRecord> records;
  /// Largest deviation over all characters of the full space, when scanned.
  bool full_space_scanned = false;
  double full_space_max = 0.0;
  F2Vector full_space_worst;
  double max_deviation = 0.0;
  std::uint64_t exceedances = 0;
  /// Sampled pairs discarded for falling under the size threshold.
  std::uint64_t skipped_small = 0;
};

/// |S^|_A(eta) - f^|_A(eta)| over the requested families; cosets smaller than
/// the size threshold are skipped. Exceedances of tau are reported, not thrown.
RoundingReport deviation_report(const FunctionTable& f, const FunctionTable& rounded, double tau,
                                const DeviationFamilies& families);

}  // namespace f2reg
