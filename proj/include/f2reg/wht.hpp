#pragma once

#include <Eigen/Core>
#include <cassert>
#include <cstdint>

#include "f2reg/gf2.hpp"

namespace f2reg {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Unnormalized in-place Walsh-Hadamard butterfly:
/// v[t] <- sum_c v[c] (-1)^{popcount(c & t)}. Length must be a power of two.
/// Exact for integer scalars.
template <typename Derived>
void fwht_inplace(Eigen::DenseBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index len = v.size();
  assert(len > 0 && (len & (len - 1)) == 0);
  for (Eigen::Index h = 1; h < len; h <<= 1) {
    for (Eigen::Index i = 0; i < len; i += h << 1) {
      for (Eigen::Index j = i; j < i + h; ++j) {
        const Scalar x = v.coeff(j);
        const Scalar y = v.coeff(j + h);
        v.coeffRef(j) = x + y;
        v.coeffRef(j + h) = x - y;
      }
    }
  }
}

/// Returns the unnormalized transform of a copy of v.
template <typename Derived>
VectorX<typename Derived::Scalar> fwht(const Eigen::DenseBase<Derived>& v) {
  VectorX<typename Derived::Scalar> out = v;
  fwht_inplace(out);
  return out;
}

/// Gathers table values over the coset rep + H in parameter order c and
/// transforms them: out[t] = sum_{x in rep+H} table[x] (-1)^{<x, eta_t>} where
/// eta_t = geom.class_representative(t) and rep is canonical.
template <typename Scalar>
void coset_transform(const VectorX<Scalar>& table, const CosetGeometry& geom, std::uint64_t rep,
                     VectorX<Scalar>& out) {
  const auto size = static_cast<Eigen::Index>(geom.coset_size());
  out.resize(size);
  for (Eigen::Index c = 0; c < size; ++c) {
    out[c] = table[static_cast<Eigen::Index>(geom.element(rep, static_cast<std::uint64_t>(c)))];
  }
  fwht_inplace(out);
}

}  // namespace f2reg
