#pragma once

// Slow reference implementations used only by tests.

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "f2reg/fourier.hpp"
#include "f2reg/gf2.hpp"
#include "f2reg/random.hpp"

namespace f2reg::oracle {

/// Every element of the span, by closing under XOR.
inline std::set<std::uint64_t> span_of(const std::vector<std::uint64_t>& gens) {
  std::set<std::uint64_t> span{0};
  for (auto g : gens) {
    std::set<std::uint64_t> next = span;
    for (auto x : span) next.insert(x ^ g);
    span = std::move(next);
  }
  return span;
}

inline std::set<std::uint64_t> elements(const Subspace& h) {
  std::vector<std::uint64_t> gens;
  for (const auto& b : h.basis()) gens.push_back(b.to_index());
  return span_of(gens);
}

inline int popcount_parity(std::uint64_t x) { return __builtin_popcountll(x) & 1; }

/// E_{x in A} f(x) (-1)^{<x, eta>} straight from the definition.
inline double coefficient(const FunctionTable& f, const std::set<std::uint64_t>& coset, std::uint64_t eta) {
  double acc = 0.0;
  for (auto x : coset) acc += popcount_parity(x & eta) ? -f(x) : f(x);
  return acc / static_cast<double>(coset.size());
}

inline std::set<std::uint64_t> translate(const std::set<std::uint64_t>& h, std::uint64_t g) {
  std::set<std::uint64_t> out;
  for (auto x : h) out.insert(x ^ g);
  return out;
}

inline FunctionTable random_table(int n, std::uint64_t seed) {
  CounterStream rng(seed, Stream::kTestData);
  Eigen::VectorXd v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.next_uniform();
  return FunctionTable(n, std::move(v));
}

inline std::vector<F2Vector> to_vectors(int n, const std::vector<std::uint64_t>& xs) {
  std::vector<F2Vector> out;
  for (auto x : xs) out.push_back(F2Vector::from_index(n, x));
  return out;
}

}  // namespace f2reg::oracle
