#include "f2reg/instance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "f2reg/errors.hpp"
#include "f2reg/limits.hpp"
#include "f2reg/random.hpp"

namespace f2reg {
namespace {

// Largest ambient dimension for which coordinates are laid out concretely.
constexpr int kConcreteBlockCap = 1 << 16;

std::string big_text(const BigInt& v) {
  if (v < BigInt(1) << 64) return v.str();
  const auto top = static_cast<unsigned>(boost::multiprecision::msb(v));
  const BigInt rest = v - (BigInt(1) << top);
  if (rest == 0) return "2^" + std::to_string(top);
  if (rest < BigInt(1) << 64) return "2^" + std::to_string(top) + "+" + rest.str();
  return v.str();
}

BigDim exact_dim(const BigInt& v) { return {v, big_text(v)}; }

// d_1 = 1, d_i = 2^{D_{i-1}} for i <= 3 and 2^{D_{i-1} - 3} beyond, which gives
// 1, 2, 8, 2^8, 2^264, ... Exact values stop once an exponent exceeds 2^20.
TowerParams make_params(int s) {
  TowerParams p;
  p.s = s;
  p.epsilon_max = Rational(1, 16 * s);
  std::optional<BigInt> prefix = BigInt(0);
  std::string prefix_text = "0";
  for (int i = 1; i <= s; ++i) {
    BigDim d;
    if (i == 1) {
      d = exact_dim(BigInt(1));
    } else {
      const int shift = i <= 3 ? 0 : 3;
      if (prefix && *prefix - shift <= BigInt(1) << 20) {
        d = exact_dim(BigInt(1) << static_cast<unsigned>(*prefix - shift));
      } else if (prefix) {
        d = {std::nullopt, "2^(" + big_text(*prefix - shift) + ")"};
      } else {
        d = {std::nullopt, "2^(D_" + std::to_string(i - 1) + "-3)"};
      }
    }
    if (prefix && d.exact) {
      *prefix += *d.exact;
      prefix_text = big_text(*prefix);
    } else {
      prefix_text = prefix ? prefix_text + "+" + d.text : "D_" + std::to_string(i);
      prefix.reset();
    }
    p.dims.push_back(std::move(d));
  }
  p.n = prefix ? exact_dim(*prefix) : BigDim{std::nullopt, prefix_text};
  return p;
}

void attach_blocks(TowerParams& p) {
  std::vector<int> dims;
  for (const auto& d : p.dims) {
    const auto small = d.small(kConcreteBlockCap);
    if (!small) return;
    dims.push_back(*small);
  }
  BlockStructure blocks(std::move(dims));
  if (blocks.ambient() <= kConcreteBlockCap) p.blocks = std::move(blocks);
}

F2Vector random_nonzero(int d, CounterStream& rng) {
  while (true) {
    F2Vector v = random_vector(d, rng);
    if (!v.is_zero()) return v;
  }
}

bool incidence_bound_ok(std::int64_t incidence, std::int64_t count, double rho) {
  return static_cast<double>(incidence) <= rho * static_cast<double>(count);
}

std::uint64_t low_mask(int bits) { return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1; }

const BlockStructure& require_blocks(const TowerParams& p) {
  if (!p.blocks) throw GuardError("instance with n = " + p.n.text + " has no concrete coordinate layout");
  return *p.blocks;
}

void require_xi(const TowerParams& p, const XiFamily& xi) {
  if (static_cast<int>(xi.blocks.size()) != p.s) {
    throw PreconditionError("xi family has " + std::to_string(xi.blocks.size()) + " blocks, instance has " +
                            std::to_string(p.s));
  }
}

}  // namespace

// ------------------------------------------------------------------- tower

std::string TowerValue::symbolic() const {
  if (height <= 4) return value->str();
  std::string out = "65536";
  for (int h = 5; h <= height; ++h) out = "2^" + out;
  return out;
}

TowerValue tower_value(int height) {
  if (height < 0) throw PreconditionError("tower height must be non-negative");
  TowerValue t{height, std::nullopt};
  if (height <= kTowerMaterializeCap) t.value = tower_exact(height);
  return t;
}

BigInt tower_exact(int height) {
  if (height < 0) throw PreconditionError("tower height must be non-negative");
  if (height > kTowerMaterializeCap) {
    throw GuardError("twr(" + std::to_string(height) + ") is too large to materialize (cap " +
                     std::to_string(kTowerMaterializeCap) + ")");
  }
  BigInt v = 1;
  for (int h = 1; h <= height; ++h) v = BigInt(1) << static_cast<unsigned>(v);
  return v;
}

std::optional<int> BigDim::small(int cap) const {
  if (!exact || *exact > cap) return std::nullopt;
  return exact->convert_to<int>();
}

bool TowerParams::dense_possible() const {
  const auto k = n.small();
  return k && *k <= dense_limit();
}

TowerParams block_dims(int s) {
  if (s < 1) throw PreconditionError("s must be at least 1");
  TowerParams p = make_params(s);
  attach_blocks(p);
  return p;
}

TowerParams custom_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw PreconditionError("custom dims need at least one block");
  TowerParams p;
  p.s = static_cast<int>(dims.size());
  p.custom = true;
  p.epsilon_max = Rational(1, 16 * p.s);
  int prefix = 0;
  for (int d : dims) {
    if (d <= 0) throw PreconditionError("custom dims must be positive");
    // 2^{D_{i-1}} <= 2^{d_i} - 1  <=>  D_{i-1} < d_i.
    if (prefix >= d) {
      throw PreconditionError("custom dims: block of size " + std::to_string(d) + " cannot host 2^" +
                              std::to_string(prefix) + " distinct nonzero vectors");
    }
    p.dims.push_back(exact_dim(BigInt(d)));
    prefix += d;
  }
  p.n = exact_dim(BigInt(prefix));
  attach_blocks(p);
  return p;
}

int blocks_for_epsilon(const Rational& epsilon) {
  if (epsilon <= 0) throw PreconditionError("epsilon must be positive");
  const Rational inv = Rational(1) / (Rational(16) * epsilon);
  const auto s = static_cast<int>(inv.numerator() / inv.denominator());
  if (s < 1) throw PreconditionError("epsilon above 1/16 leaves no blocks");
  return s;
}

// ---------------------------------------------------------------- spanning

SpanningCheck verify_spanning_family(const std::vector<F2Vector>& vectors, double rho) {
  if (vectors.empty()) throw PreconditionError("empty spanning family");
  const int d = vectors.front().size();
  require_dense(d, "verify_spanning_family");
  const auto count = static_cast<std::int64_t>(vectors.size());
  VectorX<std::int64_t> freq = VectorX<std::int64_t>::Zero(Eigen::Index{1} << d);
  for (const auto& v : vectors) {
    if (v.size() != d) throw DimensionMismatch("spanning family mixes dimensions");
    ++freq[static_cast<Eigen::Index>(v.to_index())];
  }
  fwht_inplace(freq);
  SpanningCheck check;
  check.certified = true;
  check.hyperplanes_checked = (std::uint64_t{1} << d) - 1;
  std::uint64_t worst = 1;
  std::int64_t worst_inc = -1;
  for (Eigen::Index eta = 1; eta < freq.size(); ++eta) {
    const std::int64_t inc = (count + freq[eta]) / 2;
    if (inc > worst_inc) {
      worst_inc = inc;
      worst = static_cast<std::uint64_t>(eta);
    }
  }
  if (d == 0) worst_inc = 0;
  check.worst_hyperplane = F2Vector::from_index(d, d == 0 ? 0 : worst);
  check.incidence = worst_inc;
  check.ok = incidence_bound_ok(worst_inc, count, rho);
  return check;
}

SpanningCheck verify_spanning_family_sampled(const std::vector<F2Vector>& vectors, double rho,
                                             std::uint64_t samples, std::uint64_t seed) {
  if (vectors.empty()) throw PreconditionError("empty spanning family");
  const int d = vectors.front().size();
  const std::size_t count = vectors.size();
  const std::size_t words = (count + 63) / 64;
  // columns[b] holds bit b of every family member.
  std::vector<std::uint64_t> columns(static_cast<std::size_t>(d) * words, 0);
  for (std::size_t j = 0; j < count; ++j) {
    if (vectors[j].size() != d) throw DimensionMismatch("spanning family mixes dimensions");
    for (int b = 0; b < d; ++b) {
      if (vectors[j].test(b)) columns[static_cast<std::size_t>(b) * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
  CounterStream rng(seed, Stream::kHyperplaneSampler);
  SpanningCheck check;
  check.hyperplanes_checked = samples;
  check.incidence = -1;
  std::vector<std::uint64_t> acc(words);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const F2Vector eta = random_nonzero(d, rng);
    std::fill(acc.begin(), acc.end(), 0);
    for (int b = 0; b < d; ++b) {
      if (!eta.test(b)) continue;
      const std::uint64_t* col = &columns[static_cast<std::size_t>(b) * words];
      for (std::size_t w = 0; w < words; ++w) acc[w] ^= col[w];
    }
    std::int64_t odd = 0;
    for (auto w : acc) odd += std::popcount(w);
    const std::int64_t inc = static_cast<std::int64_t>(count) - odd;
    if (inc > check.incidence || (inc == check.incidence && eta < check.worst_hyperplane)) {
      check.incidence = inc;
      check.worst_hyperplane = eta;
    }
  }
  check.ok = incidence_bound_ok(check.incidence, static_cast<std::int64_t>(count), rho);
  return check;
}

SpanningFamily generate_spanning_family(int d, std::int64_t count, double rho, std::uint64_t seed,
                                        int retry_cap, std::uint64_t samples) {
  if (d < 1) throw PreconditionError("spanning family needs d >= 1");
  if (count < d) throw PreconditionError("spanning family needs count >= d");
  if (!(rho > 0.5 && rho <= 1.0)) throw PreconditionError("rho must lie in (1/2, 1]");
  const CounterStream base(seed, Stream::kSpanningFamily);
  for (int attempt = 1; attempt <= retry_cap; ++attempt) {
    CounterStream rng = base.substream(static_cast<std::uint64_t>(attempt));
    SpanningFamily family;
    family.attempts = attempt;
    family.vectors.reserve(static_cast<std::size_t>(count));
    for (std::int64_t j = 0; j < count; ++j) family.vectors.push_back(random_nonzero(d, rng));
    family.check = d <= dense_limit()
                       ? verify_spanning_family(family.vectors, rho)
                       : verify_spanning_family_sampled(family.vectors, rho, samples, rng.next());
    if (family.check.ok) return family;
  }
  throw RetryCapExceeded("no " + std::to_string(count) + "-vector family in F_2^" + std::to_string(d) +
                         " passed the rho = " + std::to_string(rho) + " check within " +
                         std::to_string(retry_cap) + " attempts");
}

// ---------------------------------------------------------------------- xi

XiFamily build_xi(const TowerParams& params, std::uint64_t seed, std::uint64_t samples) {
  const BlockStructure& blocks = require_blocks(params);
  XiFamily xi;
  xi.seed = seed;
  for (int i = 1; i <= blocks.count(); ++i) {
    const int d = blocks.size(i);
    const int prefix_bits = blocks.prefix(i - 1);
    require_dense(prefix_bits, "build_xi (prefix count)");
    const std::int64_t count = std::int64_t{1} << prefix_bits;
    XiBlock block;
    if (count == d) {
      // Canonical basis: prefix v -> e_{v+1}.
      block.basis = true;
      for (std::int64_t v = 0; v < count; ++v) block.entries.push_back(F2Vector::unit(d, static_cast<int>(v)));
      block.check = d <= dense_limit() ? verify_spanning_family(block.entries, 1.0) : SpanningCheck{};
      block.attempts = 0;
    } else {
      SpanningFamily family =
          generate_spanning_family(d, count, 0.75, mix64(seed ^ static_cast<std::uint64_t>(i)), kDefaultRetryCap, samples);
      block.entries = std::move(family.vectors);
      block.check = family.check;
      block.attempts = family.attempts;
    }
    xi.blocks.push_back(std::move(block));
  }
  return xi;
}

// ------------------------------------------------------------------ tables

VectorX<std::int64_t> build_count_table(const TowerParams& params, const XiFamily& xi) {
  const BlockStructure& blocks = require_blocks(params);
  require_xi(params, xi);
  const int n = blocks.ambient();
  require_dense(n, "build_function_table");
  struct Layout {
    int begin;
    std::uint64_t block_mask, prefix_mask;
    std::vector<std::uint64_t> xi;
  };
  std::vector<Layout> layout;
  for (int i = 1; i <= blocks.count(); ++i) {
    Layout l{blocks.begin(i), low_mask(blocks.size(i)), low_mask(blocks.prefix(i - 1)), {}};
    for (const auto& e : xi.blocks[i - 1].entries) l.xi.push_back(e.to_index());
    layout.push_back(std::move(l));
  }
  VectorX<std::int64_t> counts(Eigen::Index{1} << n);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    std::int64_t c = 0;
    for (const auto& l : layout) {
      const std::uint64_t block = (x >> l.begin) & l.block_mask;
      c += parity(block & l.xi[x & l.prefix_mask]) == 0 ? 1 : 0;
    }
    counts[static_cast<Eigen::Index>(x)] = c;
  }
  return counts;
}

FunctionTable build_function_table(const TowerParams& params, const XiFamily& xi) {
  const VectorX<std::int64_t> counts = build_count_table(params, xi);
  return FunctionTable(params.blocks->ambient(), counts.cast<double>() / static_cast<double>(params.s));
}

FunctionTable term_indicator(const TowerParams& params, const XiFamily& xi, int j) {
  const BlockStructure& blocks = require_blocks(params);
  require_xi(params, xi);
  if (j < 1 || j > params.s) throw PreconditionError("term index out of range");
  const int n = blocks.ambient();
  require_dense(n, "term_indicator");
  Eigen::VectorXd values(Eigen::Index{1} << n);
  const std::uint64_t prefix_mask = low_mask(blocks.prefix(j - 1));
  const std::uint64_t block_mask = low_mask(blocks.size(j));
  const auto& entries = xi.blocks[j - 1].entries;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    const std::uint64_t block = (x >> blocks.begin(j)) & block_mask;
    values[static_cast<Eigen::Index>(x)] = parity(block & entries[x & prefix_mask].to_index()) == 0 ? 1.0 : 0.0;
  }
  return FunctionTable(n, std::move(values));
}

int eval_count(const TowerParams& params, const XiFamily& xi, const F2Vector& x) {
  const BlockStructure& blocks = require_blocks(params);
  require_xi(params, xi);
  if (x.size() != blocks.ambient()) throw DimensionMismatch("eval_pointwise: point has wrong length");
  int c = 0;
  for (int i = 1; i <= blocks.count(); ++i) {
    const F2Vector& xi_i = xi.at(i, blocks.prefix_index(x, i));
    if (!dot(blocks.block(x, i), xi_i)) ++c;
  }
  return c;
}

double eval_pointwise(const TowerParams& params, const XiFamily& xi, const F2Vector& x) {
  return static_cast<double>(eval_count(params, xi, x)) / static_cast<double>(params.s);
}

Instance build_instance(const TowerParams& params, std::uint64_t seed, std::uint64_t samples) {
  Instance inst{params, build_xi(params, seed, samples), std::nullopt, std::nullopt};
  if (params.dense_possible()) {
    inst.counts = build_count_table(params, inst.xi);
    inst.table = FunctionTable(inst.n(), inst.counts->cast<double>() / static_cast<double>(params.s));
  }
  return inst;
}

}  // namespace f2reg
