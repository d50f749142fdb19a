#include "f2reg/fourier.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "f2reg/errors.hpp"
#include "f2reg/limits.hpp"

namespace f2reg {
namespace {

void require_ambient(const FunctionTable& f, int n, const char* what) {
  if (f.n() != n) {
    throw DimensionMismatch(std::string(what) + ": table has n = " + std::to_string(f.n()) +
                            ", subspace lives in n = " + std::to_string(n));
  }
}

struct WorstClass {
  std::uint64_t label = 0;
  double value = 0.0;
};

// Ascending label order equals ascending representative encoding, so a strict
// comparison keeps the smallest encoding on ties.
WorstClass worst_nontrivial(const Eigen::VectorXd& coeffs) {
  WorstClass w;
  for (Eigen::Index t = 1; t < coeffs.size(); ++t) {
    if (w.label == 0 || std::abs(coeffs[t]) > std::abs(w.value)) {
      w.label = static_cast<std::uint64_t>(t);
      w.value = coeffs[t];
    }
  }
  return w;
}

bool exceeds(double value, double epsilon) { return std::abs(value) > epsilon + kRegularityGuard; }

}  // namespace

FunctionTable::FunctionTable(int n, Eigen::VectorXd values) : n_(n), values_(std::move(values)) {
  if (n < 0 || n > 40) throw PreconditionError("table dimension out of range");
  if (values_.size() != (Eigen::Index{1} << n)) {
    throw PreconditionError("table for n = " + std::to_string(n) + " needs 2^n entries, got " +
                            std::to_string(values_.size()));
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0 && values_[i] <= 1.0)) {
      throw PreconditionError("table value at index " + std::to_string(i) + " is outside [0, 1]");
    }
  }
}

FunctionTable FunctionTable::constant(int n, double c) {
  require_dense(n, "constant table");
  return FunctionTable(n, Eigen::VectorXd::Constant(Eigen::Index{1} << n, c));
}

Eigen::VectorXd wht_full(const FunctionTable& f) {
  require_dense(f.n(), "wht_full");
  Eigen::VectorXd out = f.values();
  fwht_inplace(out);
  out /= static_cast<double>(f.size());
  return out;
}

double restricted_coefficient(const FunctionTable& f, const AffineSubspace& a, const F2Vector& eta) {
  require_ambient(f, a.ambient(), "restricted_coefficient");
  if (eta.size() != a.ambient()) throw DimensionMismatch("restricted_coefficient: character length");
  require_dense(a.dim(), "restricted_coefficient");
  const CosetGeometry geom(a.subspace());
  const std::uint64_t rep = a.representative().to_index();
  const std::uint64_t e = eta.to_index();
  // Gray-code walk over the coset elements.
  double acc = 0.0;
  std::uint64_t x = rep;
  const auto& basis = geom.basis();
  for (std::uint64_t i = 0; i < geom.coset_size(); ++i) {
    if (i != 0) x ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    acc += parity(x & e) ? -f(x) : f(x);
  }
  return acc / static_cast<double>(geom.coset_size());
}

F2Vector CosetSpectrum::class_representative(std::uint64_t label) const {
  const CosetGeometry geom(coset.subspace());
  return F2Vector::from_index(coset.ambient(), geom.class_representative(label));
}

double CosetSpectrum::coefficient(const F2Vector& eta) const {
  const CosetGeometry geom(coset.subspace());
  return coefficients[static_cast<Eigen::Index>(geom.class_label(eta.to_index()))];
}

CosetSpectrum restricted_spectrum(const FunctionTable& f, const AffineSubspace& a) {
  require_ambient(f, a.ambient(), "restricted_spectrum");
  require_dense(a.dim(), "restricted_spectrum");
  const CosetGeometry geom(a.subspace());
  CosetSpectrum s{a, {}};
  coset_transform(f.values(), geom, a.representative().to_index(), s.coefficients);
  s.coefficients /= static_cast<double>(geom.coset_size());
  return s;
}

CosetVerdict check_coset_regularity(const FunctionTable& f, const AffineSubspace& a, double epsilon) {
  const CosetSpectrum s = restricted_spectrum(f, a);
  CosetVerdict v;
  v.worst_character = F2Vector(a.ambient());
  if (s.class_count() == 1) return v;
  const WorstClass w = worst_nontrivial(s.coefficients);
  v.worst_character = s.class_representative(w.label);
  v.worst_value = w.value;
  v.regular = !exceeds(w.value, epsilon);
  return v;
}

bool RegularityReport::is_regular() const {
  const double irregular = static_cast<double>(total_cosets - regular_cosets);
  return irregular <= epsilon * static_cast<double>(total_cosets);
}

RegularityReport check_subspace_regularity(const FunctionTable& f, const Subspace& h, double epsilon) {
  require_ambient(f, h.ambient(), "check_subspace_regularity");
  require_dense(h.codim(), "check_subspace_regularity");
  require_dense(h.dim(), "check_subspace_regularity");
  return check_subspace_regularity(f, h, CosetGeometry(h), epsilon);
}

RegularityReport check_subspace_regularity(const FunctionTable& f, const Subspace& h,
                                           const CosetGeometry& geom, double epsilon) {
  RegularityReport report;
  report.subspace = h;
  report.epsilon = epsilon;
  report.total_cosets = geom.coset_count();
  Eigen::VectorXd scratch;
  const double scale = 1.0 / static_cast<double>(geom.coset_size());
  for (std::uint64_t u = 0; u < geom.coset_count(); ++u) {
    const std::uint64_t rep = geom.representative(u);
    if (geom.dim() == 0) {
      ++report.regular_cosets;
      continue;
    }
    coset_transform(f.values(), geom, rep, scratch);
    const WorstClass w = worst_nontrivial(scratch);
    const double value = w.value * scale;
    if (exceeds(value, epsilon)) {
      report.witnesses.push_back({F2Vector::from_index(h.ambient(), rep),
                                  F2Vector::from_index(h.ambient(), geom.class_representative(w.label)),
                                  value});
    } else {
      ++report.regular_cosets;
    }
  }
  return report;
}

}  // namespace f2reg
