#include <gtest/gtest.h>

#include "f2reg/errors.hpp"
#include "f2reg/fourier.hpp"
#include "f2reg/wht.hpp"
#include "oracles.hpp"

namespace f2reg {
namespace {

FunctionTable two_block_table() {
  Eigen::VectorXd v(8);
  v << 1, 0.5, 0.5, 0.5, 1, 0, 0.5, 0;
  return FunctionTable(3, v);
}

TEST(Wht, MatchesQuadraticSum) {
  for (int trial = 0; trial < 40; ++trial) {
    const int n = trial % 9;
    const FunctionTable f = oracle::random_table(n, 100 + trial);
    const Eigen::VectorXd fast = wht_full(f);
    std::set<std::uint64_t> all;
    for (std::uint64_t x = 0; x < f.size(); ++x) all.insert(x);
    for (std::uint64_t eta = 0; eta < f.size(); ++eta) {
      EXPECT_NEAR(fast[static_cast<Eigen::Index>(eta)], oracle::coefficient(f, all, eta), 1e-12);
    }
  }
}

TEST(Wht, ParsevalAndInvolution) {
  for (int n = 0; n <= 12; ++n) {
    const FunctionTable f = oracle::random_table(n, 7 + n);
    const Eigen::VectorXd spec = wht_full(f);
    EXPECT_NEAR(spec.squaredNorm(), f.values().squaredNorm() / static_cast<double>(f.size()), 1e-12);
    Eigen::VectorXd back = spec;
    fwht_inplace(back);
    EXPECT_LT((back - f.values()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Wht, IsLinear) {
  const FunctionTable f = oracle::random_table(7, 1), g = oracle::random_table(7, 2);
  const FunctionTable h(7, 0.25 * f.values() + 0.75 * g.values());
  EXPECT_LT((wht_full(h) - 0.25 * wht_full(f) - 0.75 * wht_full(g)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Wht, IntegerScalar) {
  VectorX<std::int64_t> v(4);
  v << 1, 2, 3, 4;
  fwht_inplace(v);
  EXPECT_EQ(v[0], 10);
  EXPECT_EQ(v[1], -2);
  EXPECT_EQ(v[2], -4);
  EXPECT_EQ(v[3], 0);
}

TEST(FunctionTable, RejectsBadInput) {
  EXPECT_THROW(FunctionTable(3, Eigen::VectorXd::Zero(7)), Error);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
  v[2] = 1.5;
  EXPECT_THROW(FunctionTable(2, v), Error);
  v[2] = std::nan("");
  EXPECT_THROW(FunctionTable(2, v), Error);
}

TEST(Fourier, HandValuesOnTwoBlockTable) {
  const FunctionTable f = two_block_table();
  EXPECT_DOUBLE_EQ(wht_full(f)[1], 0.25);
  EXPECT_DOUBLE_EQ(f.mean(), 0.5);

  const Subspace h = echelonize(3, oracle::to_vectors(3, {1}));
  const std::vector<double> expected{0.25, 0.0, 0.5, 0.25};
  const CosetGeometry geom(h);
  for (std::uint64_t u = 0; u < 4; ++u) {
    const AffineSubspace a(h, F2Vector::from_index(3, geom.representative(u)));
    EXPECT_DOUBLE_EQ(restricted_coefficient(f, a, F2Vector::unit(3, 0)), expected[u]);
  }
}

TEST(Fourier, RestrictedSpectrumMatchesDefinition) {
  CounterStream rng(21, Stream::kTestData);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(8));
    const FunctionTable f = oracle::random_table(n, 500 + trial);
    const Subspace h = random_subspace(n, static_cast<int>(rng.next_below(n + 1)), rng);
    const F2Vector g = random_vector(n, rng);
    const AffineSubspace a(h, g);
    const auto coset = oracle::translate(oracle::elements(h), g.to_index());
    const CosetSpectrum spec = restricted_spectrum(f, a);
    ASSERT_EQ(spec.class_count(), std::uint64_t{1} << h.dim());
    const std::uint64_t rep = a.representative().to_index();
    double energy = 0.0;
    for (std::uint64_t t = 0; t < spec.class_count(); ++t) energy += spec.coefficients[static_cast<Eigen::Index>(t)] *
                                                                     spec.coefficients[static_cast<Eigen::Index>(t)];
    double second_moment = 0.0;
    for (auto x : coset) second_moment += f(x) * f(x);
    EXPECT_NEAR(energy, second_moment / static_cast<double>(coset.size()), 1e-12);

    for (std::uint64_t eta = 0; eta < f.size(); ++eta) {
      const double direct = oracle::coefficient(f, coset, eta);
      const F2Vector e = F2Vector::from_index(n, eta);
      const double sign = oracle::popcount_parity(rep & eta) ? -1.0 : 1.0;
      EXPECT_NEAR(sign * spec.coefficient(e), direct, 1e-12);
      EXPECT_NEAR(restricted_coefficient(f, a, e), direct, 1e-12);
    }
    EXPECT_NEAR(spec.mean(), oracle::coefficient(f, coset, 0), 1e-12);
  }
}

TEST(Fourier, TrivialCharactersGiveTheMeanUpToSign) {
  const FunctionTable f = oracle::random_table(6, 9);
  const Subspace h = echelonize(6, oracle::to_vectors(6, {0b000011, 0b001100}));
  const Subspace dual = orthogonal_complement(h);
  const AffineSubspace a(h, F2Vector::from_index(6, 0b100101));
  const double mean = restricted_coefficient(f, a, F2Vector(6));
  for (auto eta : oracle::elements(dual)) {
    EXPECT_NEAR(std::abs(restricted_coefficient(f, a, F2Vector::from_index(6, eta))), mean, 1e-12);
  }
}

TEST(Regularity, ZeroSubspaceIsAlwaysRegular) {
  const FunctionTable f = oracle::random_table(5, 3);
  const RegularityReport r = check_subspace_regularity(f, Subspace::zero(5), 0.01);
  EXPECT_TRUE(r.is_regular());
  EXPECT_EQ(r.total_cosets, 32u);
  EXPECT_EQ(r.regular_cosets, 32u);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(Regularity, ConstantFunctionIsRegularEverywhere) {
  const FunctionTable f = FunctionTable::constant(6, 0.3);
  for (const auto& h : {Subspace::full(6), echelonize(6, oracle::to_vectors(6, {5, 40}))}) {
    EXPECT_TRUE(check_subspace_regularity(f, h, 1e-6).is_regular());
  }
}

TEST(Regularity, CharacterIsIrregularOnFullSpace) {
  Eigen::VectorXd v(16);
  for (int x = 0; x < 16; ++x) v[x] = oracle::popcount_parity(x & 0b1010) ? 0.0 : 1.0;
  const FunctionTable f(4, v);
  const CosetVerdict verdict = check_coset_regularity(f, AffineSubspace(Subspace::full(4), F2Vector(4)), 0.1);
  EXPECT_FALSE(verdict.regular);
  EXPECT_EQ(verdict.worst_character.to_index(), 0b1010u);
  EXPECT_DOUBLE_EQ(std::abs(verdict.worst_value), 0.5);

  // On cosets of the character's kernel the function is constant.
  const Subspace kernel = orthogonal_complement(echelonize(4, oracle::to_vectors(4, {0b1010})));
  EXPECT_TRUE(check_subspace_regularity(f, kernel, 0.1).is_regular());
}

TEST(Regularity, ReportCountsMatchPerCosetVerdicts) {
  const FunctionTable f = oracle::random_table(8, 44);
  CounterStream rng(4, Stream::kTestData);
  for (int trial = 0; trial < 20; ++trial) {
    const Subspace h = random_subspace(8, 1 + static_cast<int>(rng.next_below(7)), rng);
    const double eps = 0.05 + 0.01 * trial;
    const RegularityReport r = check_subspace_regularity(f, h, eps);
    std::uint64_t regular = 0;
    for (const auto& rep : coset_representatives(h)) {
      if (check_coset_regularity(f, AffineSubspace(h, rep), eps).regular) ++regular;
    }
    EXPECT_EQ(r.regular_cosets, regular);
    EXPECT_EQ(r.witnesses.size(), r.total_cosets - regular);
    for (std::size_t k = 1; k < r.witnesses.size(); ++k) {
      EXPECT_LT(r.witnesses[k - 1].representative, r.witnesses[k].representative);
    }
  }
}

TEST(Regularity, GuardBandTreatsEpsilonAsRegular) {
  // A coefficient exactly at epsilon is regular.
  const FunctionTable f = two_block_table();
  const AffineSubspace a(Subspace::full(3), F2Vector(3));
  EXPECT_TRUE(check_coset_regularity(f, a, 0.25).regular);
  EXPECT_FALSE(check_coset_regularity(f, a, 0.24).regular);
}

}  // namespace
}  // namespace f2reg
