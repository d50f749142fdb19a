#include "f2reg/witness.hpp"

#include <algorithm>
#include <bit>
#include <boost/rational.hpp>
#include <cmath>
#include <set>
#include <sstream>

#include "f2reg/errors.hpp"
#include "f2reg/fourier.hpp"
#include "f2reg/limits.hpp"
#include "f2reg/parallel.hpp"
#include "f2reg/random.hpp"

namespace f2reg {
namespace {

std::uint64_t low_mask(int bits) { return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1; }

std::string describe(const Subspace& h) {
  std::ostringstream os;
  os << "span{";
  for (std::size_t j = 0; j < h.basis().size(); ++j) os << (j ? "," : "") << h.basis()[j].to_hex();
  os << "}";
  return os.str();
}

const VectorX<std::int64_t>& require_counts(const Instance& inst, const char* what) {
  if (!inst.counts) {
    throw GuardError(std::string(what) + " needs a dense instance table (n = " + inst.params.n.text + ")");
  }
  return *inst.counts;
}

void require_nonzero(const Subspace& h, const char* what) {
  if (h.dim() == 0) throw PreconditionError(std::string(what) + ": H = {0} has no active block");
}

// gamma for the prefix of x, as an integer encoding.
std::uint64_t gamma_index(const Instance& inst, std::uint64_t x, int block) {
  const BlockStructure& b = inst.blocks();
  const std::uint64_t prefix = x & low_mask(b.prefix(block - 1));
  return inst.xi.at(block, prefix).to_index() << b.begin(block);
}

// Blocks before i vanish on H, so every coset element shares its prefix.
void check_prefix_constancy(const CosetGeometry& geom, const BlockStructure& blocks, int block) {
  const std::uint64_t prefix_mask = low_mask(blocks.prefix(block - 1));
  for (auto h : geom.basis()) {
    if (h & prefix_mask) throw ClaimViolation("prefix constancy failed: basis vector touches a block before i");
  }
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

struct ScanSummary {
  std::vector<std::uint64_t> basis;
  Rational bad;
  bool bad_ok = true;
  Rational irregular;
};

ScanSummary summarize(const WitnessCertificate& cert) {
  ScanSummary s;
  for (const auto& b : cert.subspace.basis()) s.basis.push_back(b.to_index());
  s.bad = cert.bad_fraction;
  s.bad_ok = cert.bad_fraction_within_bound;
  s.irregular = cert.irregular_fraction;
  return s;
}

}  // namespace

ActiveBlock minimal_active_block(const Subspace& h, const BlockStructure& blocks) {
  require_nonzero(h, "minimal_active_block");
  if (h.ambient() != blocks.ambient()) throw DimensionMismatch("minimal_active_block: ambient dimension");
  // The lowest set bit of any nonzero element of H is one of the pivots, so
  // the first basis row realizes the minimal block.
  return {blocks.block_of(h.pivots().front()), h.basis().front()};
}

F2Vector gamma_character(const Instance& inst, const F2Vector& g, int block) {
  const BlockStructure& b = inst.blocks();
  if (g.size() != b.ambient()) throw DimensionMismatch("gamma_character: point has wrong length");
  F2Vector gamma(b.ambient());
  gamma.assign_slice(b.begin(block), inst.xi.at(block, b.prefix_index(g, block)));
  return gamma;
}

Rational measure_bad_fraction(const Instance& inst, const Subspace& h, int block) {
  require_nonzero(h, "bad_fraction");
  const BlockStructure& b = inst.blocks();
  std::vector<F2Vector> projections;
  for (const auto& row : h.basis()) projections.push_back(b.block(row, block));
  const std::int64_t prefixes = std::int64_t{1} << b.prefix(block - 1);
  std::int64_t bad = 0;
  for (std::int64_t u = 0; u < prefixes; ++u) {
    const F2Vector& xi = inst.xi.at(block, static_cast<std::uint64_t>(u));
    const bool annihilated =
        std::none_of(projections.begin(), projections.end(), [&](const F2Vector& p) { return dot(p, xi); });
    if (annihilated) ++bad;
  }
  return Rational(bad, prefixes);
}

Rational bad_fraction(const Instance& inst, const Subspace& h, int block) {
  const Rational frac = measure_bad_fraction(inst, h, block);
  if (frac > Rational(3, 4)) {
    std::ostringstream os;
    os << "bad fraction " << frac << " exceeds 3/4 for H = " << describe(h) << " (block " << block << ")";
    throw ClaimViolation(os.str());
  }
  return frac;
}

Rational coset_coefficient(const Instance& inst, const CosetGeometry& geom, std::uint64_t rep,
                           std::uint64_t gamma) {
  const auto& counts = require_counts(inst, "coset_coefficient");
  const auto& basis = geom.basis();
  std::int64_t acc = 0;
  std::uint64_t x = rep;
  for (std::uint64_t c = 0; c < geom.coset_size(); ++c) {
    if (c != 0) x ^= basis[static_cast<std::size_t>(std::countr_zero(c))];
    const std::int64_t v = counts[static_cast<Eigen::Index>(x)];
    acc += parity(x & gamma) ? -v : v;
  }
  return Rational(acc, static_cast<std::int64_t>(inst.s()) * static_cast<std::int64_t>(geom.coset_size()));
}

Rational WTranslates::average() const {
  Rational total = 0;
  for (const auto& c : cosets) total += c.coefficient;
  return total / static_cast<std::int64_t>(cosets.size());
}

Rational WTranslates::fraction_above(const Rational& threshold) const {
  const auto above = std::count_if(cosets.begin(), cosets.end(),
                                   [&](const TranslateCoefficient& c) { return c.coefficient > threshold; });
  return Rational(static_cast<std::int64_t>(above), static_cast<std::int64_t>(cosets.size()));
}

WTranslates w_translates(const Instance& inst, const Subspace& h, const F2Vector& g, int block) {
  require_counts(inst, "w_translates");
  require_nonzero(h, "w_translates");
  const BlockStructure& b = inst.blocks();
  const CosetGeometry geom(h);
  check_prefix_constancy(geom, b, block);
  const std::uint64_t g_index = g.to_index();
  const std::uint64_t gamma = gamma_index(inst, g_index, block);
  if (geom.class_label(gamma) == 0) {
    throw PreconditionError("w_translates: gamma_g lies in H^perp for g = " + g.to_hex());
  }
  // W = span of the coordinates in blocks i+1 .. s.
  const int w_begin = b.prefix(block);
  const int w_dim = b.ambient() - w_begin;
  require_dense(w_dim, "w_translates");
  std::set<std::uint64_t> reps;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << w_dim); ++w) {
    reps.insert(geom.reduce(g_index ^ (w << w_begin)));
  }
  WTranslates out;
  out.gamma = F2Vector::from_index(b.ambient(), gamma);
  for (auto rep : reps) {
    out.cosets.push_back({F2Vector::from_index(b.ambient(), rep), coset_coefficient(inst, geom, rep, gamma)});
  }
  return out;
}

Rational w_average_coefficient(const Instance& inst, const Subspace& h, const F2Vector& g, int block) {
  return w_translates(inst, h, g, block).average();
}

Rational corollary_fraction(const Instance& inst, const Subspace& h, const F2Vector& g, int block) {
  const Rational threshold(1, 4 * inst.s());
  const Rational frac = w_translates(inst, h, g, block).fraction_above(threshold);
  if (!(frac > threshold)) {
    std::ostringstream os;
    os << "only " << frac << " of the W-translates exceed 1/(4s) for H = " << describe(h) << ", g = " << g.to_hex();
    throw ClaimViolation(os.str());
  }
  return frac;
}

WitnessCertificate witness_scan(const Instance& inst, const Subspace& h, const Rational& epsilon) {
  require_counts(inst, "witness_scan");
  require_nonzero(h, "witness_scan");
  require_dense(h.codim(), "witness_scan");
  const BlockStructure& b = inst.blocks();
  const CosetGeometry geom(h);

  WitnessCertificate cert;
  cert.subspace = h;
  cert.epsilon = epsilon;
  cert.active = minimal_active_block(h, b);
  const int block = cert.active.block;
  check_prefix_constancy(geom, b, block);
  cert.bad_fraction = measure_bad_fraction(inst, h, block);
  cert.bad_fraction_within_bound = cert.bad_fraction <= Rational(3, 4);

  std::int64_t certified = 0;
  cert.cosets.reserve(geom.coset_count());
  for (std::uint64_t u = 0; u < geom.coset_count(); ++u) {
    const std::uint64_t rep = geom.representative(u);
    const std::uint64_t gamma = gamma_index(inst, rep, block);
    CosetRecord rec;
    rec.representative = F2Vector::from_index(b.ambient(), rep);
    rec.gamma = F2Vector::from_index(b.ambient(), gamma);
    rec.gamma_nontrivial = geom.class_label(gamma) != 0;
    rec.coefficient = coset_coefficient(inst, geom, rep, gamma);
    rec.certified = rec.gamma_nontrivial && rec.coefficient > epsilon;
    if (rec.certified) ++certified;
    cert.cosets.push_back(std::move(rec));
  }
  cert.irregular_fraction = Rational(certified, static_cast<std::int64_t>(geom.coset_count()));
  if (!(cert.irregular_fraction > epsilon)) {
    std::ostringstream os;
    os << "H = " << describe(h) << " is not certified irregular: only " << cert.irregular_fraction
       << " of its cosets carry a witness above epsilon = " << epsilon;
    throw ClaimViolation(os.str());
  }

  // Independent route: the floating-point transform must see the same
  // coefficient at gamma's class and call every certified coset irregular.
  const double eps = to_double(epsilon);
  const RegularityReport report = check_subspace_regularity(*inst.table, h, geom, eps);
  if (report.is_regular()) {
    throw ClaimViolation("fourier check calls H = " + describe(h) + " regular despite a witness certificate");
  }
  std::set<std::uint64_t> irregular;
  for (const auto& w : report.witnesses) irregular.insert(w.representative.to_index());
  Eigen::VectorXd spectrum;
  const double scale = 1.0 / static_cast<double>(geom.coset_size());
  for (const auto& rec : cert.cosets) {
    if (!rec.certified) continue;
    const std::uint64_t rep = rec.representative.to_index();
    coset_transform(inst.table->values(), geom, rep, spectrum);
    // The transform is taken relative to rep, so it differs from the
    // coefficient by the character's value at rep.
    const std::uint64_t gamma = rec.gamma.to_index();
    const double sign = parity(rep & gamma) ? -1.0 : 1.0;
    const double seen = sign * spectrum[static_cast<Eigen::Index>(geom.class_label(gamma))] * scale;
    if (std::abs(seen - to_double(rec.coefficient)) > kRegularityGuard || !irregular.contains(rep)) {
      throw ClaimViolation("fourier spectrum disagrees with the witness on coset " + rec.representative.to_hex() +
                           " of H = " + describe(h));
    }
  }
  cert.cross_checked = true;
  return cert;
}

LowerBoundReport exhaustive_lowerbound_check(const Instance& inst, const Rational& epsilon,
                                             const LowerBoundOptions& options) {
  require_counts(inst, "exhaustive_lowerbound_check");
  const int n = inst.n();
  LowerBoundReport report;
  report.s = inst.s();
  report.n = n;
  report.epsilon = epsilon;
  report.mode = options.mode;
  report.seed = options.seed;
  report.max_bad_fraction = 0;
  report.min_irregular_fraction = 1;

  const double eps = to_double(epsilon);
  report.zero_subspace_regular = check_subspace_regularity(*inst.table, Subspace::zero(n), eps).is_regular();
  if (!report.zero_subspace_regular) {
    throw ClaimViolation("the zero subspace is not epsilon-regular");
  }

  auto absorb = [&](const ScanSummary& s) {
    ++report.subspaces_tested;
    ++report.subspaces_irregular;  // witness_scan throws otherwise
    if (!s.bad_ok) {
      ++report.bad_fraction_violations;
      if (report.bad_fraction_example.empty() || s.bad > report.max_bad_fraction) report.bad_fraction_example = s.basis;
    }
    report.max_bad_fraction = std::max(report.max_bad_fraction, s.bad);
    report.min_irregular_fraction = std::min(report.min_irregular_fraction, s.irregular);
  };

  if (options.mode == LowerBoundMode::kExhaustive) {
    for (const auto& h : enumerate_all_subspaces(n)) {
      if (h.dim() == 0) continue;
      WitnessCertificate cert = witness_scan(inst, h, epsilon);
      absorb(summarize(cert));
      report.certificates.push_back(std::move(cert));
    }
    return report;
  }

  // Structured mode: work items are generated from their index alone so the
  // outcome does not depend on the worker count.
  const std::uint64_t points = std::uint64_t{1} << n;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> codim2_pairs;
  if (options.include_codim2) {
    for (std::uint64_t a = 1; a < points; ++a) {
      for (std::uint64_t c = a + 1; c < points; ++c) {
        if (c < (a ^ c)) codim2_pairs.emplace_back(a, c);
      }
    }
  }
  report.hyperplanes = points - 1;
  report.codim2 = codim2_pairs.size();
  report.random = options.random_per_dim * static_cast<std::uint64_t>(std::max(0, n - 1));
  const std::uint64_t total = report.hyperplanes + report.codim2 + report.random;

  const CounterStream sampler(options.seed, Stream::kSubspaceSampler);
  auto make_subspace = [&](std::uint64_t item) {
    if (item < report.hyperplanes) {
      const F2Vector eta = F2Vector::from_index(n, item + 1);
      return orthogonal_complement(echelonize(n, std::span<const F2Vector>(&eta, 1)));
    }
    item -= report.hyperplanes;
    if (item < report.codim2) {
      const std::vector<F2Vector> dual{F2Vector::from_index(n, codim2_pairs[item].first),
                                       F2Vector::from_index(n, codim2_pairs[item].second)};
      return orthogonal_complement(echelonize(n, dual));
    }
    item -= report.codim2;
    const int dim = 1 + static_cast<int>(item / options.random_per_dim);
    CounterStream rng = sampler.substream(item);
    return random_subspace(n, dim, rng);
  };

  std::vector<ScanSummary> summaries(total);
  parallel_for(total, [&](std::size_t i) {
    const Subspace h = make_subspace(i);
    summaries[i] = summarize(witness_scan(inst, h, epsilon));
  });
  for (const auto& s : summaries) absorb(s);
  return report;
}

}  // namespace f2reg
