#pragma once

// The tower-type lower-bound construction: block dimensions, spanning
// families xi_i and the function f(x) = #{i : <x^i, xi_i(x)> = 0} / s.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "f2reg/fourier.hpp"
#include "f2reg/gf2.hpp"

namespace f2reg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<std::int64_t>;

/// twr(h) with twr(0) = 1, twr(h) = 2^twr(h-1).
struct TowerValue {
  int height = 0;
  /// Present for heights up to kTowerMaterializeCap.
  std::optional<BigInt> value;
  /// "65536", "2^65536", "2^2^65536", ...
  std::string symbolic() const;
};

inline constexpr int kTowerMaterializeCap = 5;

TowerValue tower_value(int height);
/// Throws GuardError above kTowerMaterializeCap.
BigInt tower_exact(int height);

/// A possibly astronomically large dimension: exact when it fits, otherwise
/// only its symbolic form.
struct BigDim {
  std::optional<BigInt> exact;
  std::string text;

  /// Value as int when it is at most `cap`.
  std::optional<int> small(int cap = 1 << 30) const;
};

struct TowerParams {
  int s = 0;
  std::vector<BigDim> dims;
  BigDim n;
  /// Concrete coordinate layout; absent when some block is astronomically big.
  std::optional<BlockStructure> blocks;
  /// 1 / (16 s): the largest epsilon the construction defeats.
  Rational epsilon_max;
  bool custom = false;

  /// A dense table is possible (n within the dense limit).
  bool dense_possible() const;
};

/// Dims from d_1 = 1, d_{i+1} = 2^{D_i} for i <= 3, 2^{D_i - 3} beyond.
TowerParams block_dims(int s);
/// Arbitrary block sizes with 2^{D_{i-1}} <= 2^{d_i} - 1.
TowerParams custom_dims(const std::vector<int>& dims);
/// s = floor(1 / (16 epsilon)).
int blocks_for_epsilon(const Rational& epsilon);

struct SpanningCheck {
  bool ok = false;
  /// Hyperplane eta^perp with the largest incidence (smallest eta on ties).
  F2Vector worst_hyperplane;
  std::int64_t incidence = 0;
  /// Exhaustive scan over all nonzero eta; otherwise sampled.
  bool certified = false;
  std::uint64_t hyperplanes_checked = 0;
};

/// For every nonzero eta counts #{j : <v_j, eta> = 0} with one transform of
/// the multiset frequency vector; ok iff the max is at most rho * count.
SpanningCheck verify_spanning_family(const std::vector<F2Vector>& vectors, double rho);
/// Same bound over `samples` random nonzero eta.
SpanningCheck verify_spanning_family_sampled(const std::vector<F2Vector>& vectors, double rho,
                                             std::uint64_t samples, std::uint64_t seed);

inline constexpr int kDefaultRetryCap = 100;
inline constexpr std::uint64_t kDefaultHyperplaneSamples = 1'000'000;

struct SpanningFamily {
  std::vector<F2Vector> vectors;
  int attempts = 0;
  SpanningCheck check;
};

/// Rejection sampling of `count` uniform nonzero vectors of F_2^d until the
/// family passes verification; exhaustive when d is within the dense limit.
SpanningFamily generate_spanning_family(int d, std::int64_t count, double rho, std::uint64_t seed,
                                        int retry_cap = kDefaultRetryCap,
                                        std::uint64_t samples = kDefaultHyperplaneSamples);

struct XiBlock {
  /// Entry v is xi_i(v) for the prefix with integer encoding v.
  std::vector<F2Vector> entries;
  bool basis = false;
  SpanningCheck check;
  int attempts = 0;
};

struct XiFamily {
  std::uint64_t seed = 0;
  /// blocks[i - 1] is xi_i.
  std::vector<XiBlock> blocks;

  const F2Vector& at(int block, std::uint64_t prefix) const {
    return blocks[block - 1].entries[prefix];
  }
};

XiFamily build_xi(const TowerParams& params, std::uint64_t seed,
                  std::uint64_t samples = kDefaultHyperplaneSamples);

/// f on the full domain; values k / s.
FunctionTable build_function_table(const TowerParams& params, const XiFamily& xi);
/// B_j(x) = [<x^j, xi_j(x)> = 0].
FunctionTable term_indicator(const TowerParams& params, const XiFamily& xi, int j);
/// s * f, exactly.
VectorX<std::int64_t> build_count_table(const TowerParams& params, const XiFamily& xi);

/// f(x) evaluated directly; needs xi for every block but no table.
double eval_pointwise(const TowerParams& params, const XiFamily& xi, const F2Vector& x);
int eval_count(const TowerParams& params, const XiFamily& xi, const F2Vector& x);

struct Instance {
  TowerParams params;
  XiFamily xi;
  /// Present iff n is within the dense limit.
  std::optional<FunctionTable> table;
  std::optional<VectorX<std::int64_t>> counts;

  int s() const { return params.s; }
  const BlockStructure& blocks() const { return *params.blocks; }
  int n() const { return params.blocks->ambient(); }
};

Instance build_instance(const TowerParams& params, std::uint64_t seed,
                        std::uint64_t samples = kDefaultHyperplaneSamples);
inline Instance build_instance(int s, std::uint64_t seed) { return build_instance(block_dims(s), seed); }

}  // namespace f2reg
