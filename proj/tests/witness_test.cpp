#include <gtest/gtest.h>

#include <bit>
#include <boost/rational.hpp>

#include "f2reg/errors.hpp"
#include "f2reg/limits.hpp"
#include "f2reg/witness.hpp"
#include "oracles.hpp"

namespace f2reg {
namespace {

double as_double(const Rational& r) { return boost::rational_cast<double>(r); }

Subspace span_of(int n, const std::vector<std::uint64_t>& gens) { return echelonize(n, oracle::to_vectors(n, gens)); }

const Instance& two_blocks() {
  static const Instance inst = build_instance(2, 1);
  return inst;
}

const Instance& three_blocks() {
  static const Instance inst = build_instance(3, 1);
  return inst;
}

struct Draw {
  Subspace h;
  F2Vector g;
  int block = 0;
};

// Random nonzero H and a point g whose witness character is nontrivial on H.
Draw draw_valid(const Instance& inst, CounterStream& rng) {
  const int n = inst.n();
  for (;;) {
    const Subspace h = random_subspace(n, 1 + static_cast<int>(rng.next_below(n)), rng);
    const F2Vector g = random_vector(n, rng);
    const int block = minimal_active_block(h, inst.blocks()).block;
    const F2Vector gamma = gamma_character(inst, g, block);
    if (!contains(orthogonal_complement(h), gamma)) return {h, g, block};
  }
}

TEST(ActiveBlock, IsTheFirstBlockTouched) {
  const BlockStructure& b = three_blocks().blocks();
  EXPECT_EQ(minimal_active_block(span_of(11, {1 << 5, 1 << 9}), b).block, 3);
  EXPECT_EQ(minimal_active_block(span_of(11, {1 << 5, 0b110}), b).block, 2);
  EXPECT_EQ(minimal_active_block(span_of(11, {0b11110111111}), b).block, 1);
  EXPECT_THROW(minimal_active_block(Subspace::zero(11), b), PreconditionError);

  // Brute force: smallest block on which some element is nonzero.
  CounterStream rng(1, Stream::kTestData);
  for (int trial = 0; trial < 100; ++trial) {
    const Subspace h = random_subspace(11, 1 + static_cast<int>(rng.next_below(4)), rng);
    int best = 99;
    for (auto x : oracle::elements(h)) {
      if (x != 0) best = std::min(best, b.block_of(std::countr_zero(x)));
    }
    EXPECT_EQ(minimal_active_block(h, b).block, best);
  }
}

TEST(BadFraction, HandValuesForTwoBlocks) {
  const Instance& inst = two_blocks();
  EXPECT_EQ(bad_fraction(inst, span_of(3, {0b001}), 1), Rational(0));
  EXPECT_EQ(bad_fraction(inst, span_of(3, {0b100}), 2), Rational(1, 2));
  EXPECT_EQ(bad_fraction(inst, span_of(3, {0b010}), 2), Rational(1, 2));
  EXPECT_EQ(bad_fraction(inst, span_of(3, {0b110}), 2), Rational(0));
}

TEST(BadFraction, MatchesDirectCount) {
  const Instance& inst = three_blocks();
  CounterStream rng(2, Stream::kTestData);
  for (int trial = 0; trial < 200; ++trial) {
    const Subspace h = random_subspace(11, 1 + static_cast<int>(rng.next_below(10)), rng);
    const int block = minimal_active_block(h, inst.blocks()).block;
    const Subspace dual = orthogonal_complement(h);
    const std::int64_t prefixes = std::int64_t{1} << inst.blocks().prefix(block - 1);
    std::int64_t bad = 0;
    for (std::int64_t u = 0; u < prefixes; ++u) {
      if (contains(dual, gamma_character(inst, F2Vector::from_index(11, static_cast<std::uint64_t>(u)), block))) ++bad;
    }
    EXPECT_EQ(measure_bad_fraction(inst, h, block), Rational(bad, prefixes));
  }
}

TEST(BadFraction, BasisBlockFamilyCanExceedThreeQuarters) {
  // With s = 3 the third block family is the standard basis of F_2^8; a line
  // through one basis vector is annihilated by the other seven.
  const Instance& inst = three_blocks();
  const Subspace h = span_of(11, {1 << 3});
  EXPECT_EQ(measure_bad_fraction(inst, h, 3), Rational(7, 8));
  EXPECT_THROW(bad_fraction(inst, h, 3), ClaimViolation);
  // The subspace is still certified irregular by the good eighth.
  const WitnessCertificate cert = witness_scan(inst, h, Rational(1, 48));
  EXPECT_FALSE(cert.bad_fraction_within_bound);
  EXPECT_EQ(cert.irregular_fraction, Rational(1, 8));
  for (const auto& rec : cert.cosets) {
    if (rec.gamma_nontrivial) EXPECT_EQ(rec.coefficient, Rational(1, 6));
  }
}

TEST(CosetCoefficient, ExactAgreesWithFloatingPoint) {
  const Instance& inst = three_blocks();
  CounterStream rng(3, Stream::kTestData);
  for (int trial = 0; trial < 100; ++trial) {
    const Draw d = draw_valid(inst, rng);
    const CosetGeometry geom(d.h);
    const F2Vector gamma = gamma_character(inst, d.g, d.block);
    const AffineSubspace a(d.h, d.g);
    const Rational exact = coset_coefficient(inst, geom, a.representative().to_index(), gamma.to_index());
    EXPECT_NEAR(as_double(exact), restricted_coefficient(*inst.table, a, gamma), 1e-12);
  }
}

TEST(WTranslates, HandValuesForTwoBlocks) {
  const Instance& inst = two_blocks();
  const WTranslates w = w_translates(inst, span_of(3, {1}), F2Vector(3), 1);
  ASSERT_EQ(w.cosets.size(), 4u);
  const std::vector<Rational> expected{Rational(1, 4), Rational(0), Rational(1, 2), Rational(1, 4)};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(w.cosets[k].representative.to_index(), 2 * k);
    EXPECT_EQ(w.cosets[k].coefficient, expected[k]);
  }
  EXPECT_EQ(w.average(), Rational(1, 4));
  EXPECT_EQ(corollary_fraction(inst, span_of(3, {1}), F2Vector(3), 1), Rational(3, 4));
}

TEST(WTranslates, AverageIsExactlyOneOverTwoS) {
  for (int s : {2, 3}) {
    const Instance inst = build_instance(s, 5);
    CounterStream rng(40 + s, Stream::kTestData);
    for (int trial = 0; trial < 100; ++trial) {
      const Draw d = draw_valid(inst, rng);
      EXPECT_EQ(w_average_coefficient(inst, d.h, d.g, d.block), Rational(1, 2 * s));
      EXPECT_GT(corollary_fraction(inst, d.h, d.g, d.block), Rational(1, 4 * s));
    }
  }
}

TEST(WTranslates, TrivialGammaIsRejected) {
  const Instance& inst = two_blocks();
  // H = span{e3}: prefix 0 picks xi_2(0) = e2, orthogonal to e3.
  EXPECT_THROW(w_translates(inst, span_of(3, {0b100}), F2Vector(3), 2), PreconditionError);
}

TEST(WTranslates, TermByTermContributions) {
  // On a coset with nontrivial gamma: earlier terms are constant and
  // contribute 0, the active term contributes exactly 1/2, and later terms
  // average to 0 over the W-translates.
  const Instance& inst = three_blocks();
  std::vector<FunctionTable> terms;
  for (int j = 1; j <= 3; ++j) terms.push_back(term_indicator(inst.params, inst.xi, j));
  CounterStream rng(9, Stream::kTestData);
  for (int trial = 0; trial < 60; ++trial) {
    const Draw d = draw_valid(inst, rng);
    const WTranslates w = w_translates(inst, d.h, d.g, d.block);
    for (int j = 1; j <= 3; ++j) {
      double avg = 0.0;
      for (const auto& c : w.cosets) {
        const double v = restricted_coefficient(terms[j - 1], AffineSubspace(d.h, c.representative), w.gamma);
        if (j < d.block) EXPECT_NEAR(v, 0.0, 1e-12);
        if (j == d.block) EXPECT_NEAR(v, 0.5, 1e-12);
        avg += v;
      }
      avg /= static_cast<double>(w.cosets.size());
      if (j > d.block) EXPECT_NEAR(avg, 0.0, 1e-12);
    }
  }
}

TEST(WitnessScan, TwoBlockCertificates) {
  const Instance& inst = two_blocks();
  const WitnessCertificate cert = witness_scan(inst, span_of(3, {1}), Rational(1, 32));
  EXPECT_EQ(cert.active.block, 1);
  EXPECT_EQ(cert.bad_fraction, Rational(0));
  EXPECT_TRUE(cert.cross_checked);
  EXPECT_EQ(cert.irregular_fraction, Rational(3, 4));
  ASSERT_EQ(cert.cosets.size(), 4u);
  EXPECT_FALSE(cert.cosets[1].certified);
  EXPECT_TRUE(cert.cosets[2].certified);
  EXPECT_THROW(witness_scan(inst, Subspace::zero(3), Rational(1, 32)), PreconditionError);
}

TEST(WitnessScan, RegularFunctionIsNotCertified) {
  // A large epsilon leaves nothing above it.
  EXPECT_THROW(witness_scan(two_blocks(), span_of(3, {1}), Rational(1, 2)), ClaimViolation);
}

TEST(LowerBound, ExhaustiveTwoBlocks) {
  const LowerBoundReport r = exhaustive_lowerbound_check(two_blocks(), Rational(1, 32), {});
  EXPECT_TRUE(r.zero_subspace_regular);
  EXPECT_EQ(r.subspaces_tested, 15u);
  EXPECT_TRUE(r.only_zero_regular());
  EXPECT_EQ(r.bad_fraction_violations, 0u);
  EXPECT_EQ(r.certificates.size(), 15u);
  for (const auto& c : r.certificates) {
    bool any = false;
    for (const auto& rec : c.cosets) any = any || (rec.certified && rec.coefficient > Rational(1, 32));
    EXPECT_TRUE(any);
  }
}

TEST(LowerBound, StructuredIsThreadIndependent) {
  LowerBoundOptions opts;
  opts.mode = LowerBoundMode::kStructured;
  opts.random_per_dim = 30;
  opts.seed = 4;
  set_thread_count(1);
  const LowerBoundReport a = exhaustive_lowerbound_check(three_blocks(), Rational(1, 48), opts);
  set_thread_count(4);
  const LowerBoundReport b = exhaustive_lowerbound_check(three_blocks(), Rational(1, 48), opts);
  set_thread_count(1);
  EXPECT_EQ(a.subspaces_tested, 2047u + 300u);
  EXPECT_TRUE(a.only_zero_regular());
  EXPECT_EQ(a.bad_fraction_violations, b.bad_fraction_violations);
  EXPECT_EQ(a.bad_fraction_example, b.bad_fraction_example);
  EXPECT_EQ(a.min_irregular_fraction, b.min_irregular_fraction);
}

}  // namespace
}  // namespace f2reg
