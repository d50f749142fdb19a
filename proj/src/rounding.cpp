#include "f2reg/rounding.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <cmath>

#include "f2reg/errors.hpp"
#include "f2reg/limits.hpp"
#include "f2reg/parallel.hpp"
#include "f2reg/random.hpp"

namespace f2reg {

FunctionTable round_to_binary(const FunctionTable& f, std::uint64_t seed) {
  const CounterStream rng(seed, Stream::kRounding);
  Eigen::VectorXd out(f.values().size());
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    out[static_cast<Eigen::Index>(x)] = rng.uniform_at(x) < f(x) ? 1.0 : 0.0;
  }
  return FunctionTable(f.n(), std::move(out));
}

double rounding_size_threshold(int n, double tau) {
  return 4.0 * static_cast<double>(n) * static_cast<double>(n) / (tau * tau);
}

RoundingReport deviation_report(const FunctionTable& f, const FunctionTable& rounded, double tau,
                                const DeviationFamilies& families) {
  if (f.n() != rounded.n()) throw DimensionMismatch("deviation_report: tables differ in n");
  if (!(tau > 0.0)) throw PreconditionError("tau must be positive");
  const int n = f.n();
  require_dense(n, "deviation_report");
  RoundingReport report;
  report.tau = tau;
  report.seed = families.seed;
  report.size_threshold = rounding_size_threshold(n, tau);
  report.union_bound_log2 = n * n + n;

  const Eigen::VectorXd diff = rounded.values() - f.values();
  if (families.full_space && std::ldexp(1.0, n) >= report.size_threshold) {
    Eigen::VectorXd spectrum = diff;
    fwht_inplace(spectrum);
    spectrum /= static_cast<double>(f.size());
    Eigen::Index worst = 0;
    report.full_space_max = spectrum.cwiseAbs().maxCoeff(&worst);
    report.full_space_worst = F2Vector::from_index(n, static_cast<std::uint64_t>(worst));
    report.full_space_scanned = true;
    if (report.full_space_max > tau) ++report.exceedances;
    report.max_deviation = report.full_space_max;
  }

  // Each pair draws from its own substream: codim, subspace, coset, character.
  const CounterStream base(families.seed, Stream::kDeviationPairs);
  std::vector<std::optional<DeviationRecord>> slots(families.random_pairs);
  parallel_for(families.random_pairs, [&](std::size_t i) {
    CounterStream rng = base.substream(i);
    const int max_codim = std::min(families.max_codim, n);
    const int codim = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_codim) + 1));
    const int dim = n - codim;
    if (std::ldexp(1.0, dim) < report.size_threshold) return;
    const Subspace h = random_subspace(n, dim, rng);
    const AffineSubspace coset(h, random_vector(n, rng));
    const F2Vector eta = random_vector(n, rng);
    const CosetGeometry geom(h);
    const std::uint64_t e = eta.to_index();
    double acc = 0.0;
    std::uint64_t x = coset.representative().to_index();
    for (std::uint64_t c = 0; c < geom.coset_size(); ++c) {
      if (c != 0) x ^= geom.basis()[static_cast<std::size_t>(std::countr_zero(c))];
      const double v = diff[static_cast<Eigen::Index>(x)];
      acc += parity(x & e) ? -v : v;
    }
    slots[i] = DeviationRecord{coset, eta, std::abs(acc) / static_cast<double>(geom.coset_size())};
  });
  for (auto& slot : slots) {
    if (!slot) {
      ++report.skipped_small;
      continue;
    }
    if (slot->deviation > tau) ++report.exceedances;
    report.max_deviation = std::max(report.max_deviation, slot->deviation);
    report.records.push_back(std::move(*slot));
  }
  return report;
}

}  // namespace f2reg
