#include "f2reg/report.hpp"

#include <boost/rational.hpp>
#include <iomanip>
#include <set>
#include <sstream>

namespace f2reg {
namespace {

using nlohmann::json;

json rational_pair(const Rational& r) {
  return {{"exact", rational_string(r)}, {"value", boost::rational_cast<double>(r)}};
}

const char* status_name(DecomposeStatus s) {
  switch (s) {
    case DecomposeStatus::kRegular:
      return "regular";
    case DecomposeStatus::kIndexGuard:
      return "index-guard";
    case DecomposeStatus::kIterationGuard:
      return "iteration-guard";
  }
  return "unknown";
}

const char* schedule_name(Schedule s) { return s == Schedule::kBatched ? "batched" : "single-witness"; }

json dim_json(const BigDim& d) {
  if (const auto small = d.small(); small) return *small;
  return d.text;
}

}  // namespace

std::string rational_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json vector_json(const F2Vector& v) {
  if (v.size() <= 64) return v.to_index();
  return v.to_hex();
}

json rational_json(const Rational& r) { return rational_pair(r); }

void to_json(json& j, const Subspace& h) {
  json basis = json::array();
  for (const auto& b : h.basis()) basis.push_back(vector_json(b));
  j = {{"n", h.ambient()}, {"dim", h.dim()}, {"codim", h.codim()}, {"basis", basis}};
}

void to_json(json& j, const RegularityReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"coset", vector_json(w.representative)},
                         {"character", vector_json(w.character)},
                         {"value", w.value}});
  }
  j = {{"subspace", r.subspace},
       {"epsilon", r.epsilon},
       {"total_cosets", r.total_cosets},
       {"regular_cosets", r.regular_cosets},
       {"fraction", r.regular_fraction()},
       {"regular", r.is_regular()},
       {"witnesses", witnesses}};
}

void to_json(json& j, const CosetSpectrum& s) {
  json classes = json::array();
  for (std::uint64_t t = 0; t < s.class_count(); ++t) {
    classes.push_back({{"class", vector_json(s.class_representative(t))},
                       {"value", s.coefficients[static_cast<Eigen::Index>(t)]}});
  }
  j = {{"subspace", s.coset.subspace()},
       {"representative", vector_json(s.coset.representative())},
       {"mean", s.mean()},
       {"classes", classes}};
}

void to_json(json& j, const WitnessCertificate& c) {
  json cosets = json::array();
  json coefficients = json::array();
  std::set<F2Vector> gammas;
  for (const auto& rec : c.cosets) {
    cosets.push_back({{"coset", vector_json(rec.representative)},
                      {"gamma", vector_json(rec.gamma)},
                      {"coefficient", rational_pair(rec.coefficient)},
                      {"gamma_nontrivial", rec.gamma_nontrivial},
                      {"certified", rec.certified}});
    coefficients.push_back(rational_string(rec.coefficient));
    gammas.insert(rec.gamma);
  }
  j = {{"subspace", c.subspace},
       {"epsilon", rational_pair(c.epsilon)},
       {"block", c.active.block},
       {"v", vector_json(c.active.v)},
       {"bad_fraction", rational_pair(c.bad_fraction)},
       {"bad_fraction_within_3_4", c.bad_fraction_within_bound},
       {"irregular_fraction", rational_pair(c.irregular_fraction)},
       {"cross_checked", c.cross_checked},
       {"coefficients", coefficients},
       {"cosets", cosets}};
  if (gammas.size() == 1) j["gamma"] = vector_json(*gammas.begin());
}

void to_json(json& j, const LowerBoundReport& r) {
  j = {{"s", r.s},
       {"n", r.n},
       {"epsilon", rational_pair(r.epsilon)},
       {"mode", r.mode == LowerBoundMode::kExhaustive ? "exhaustive" : "structured"},
       {"seed", r.seed},
       {"zero_subspace_regular", r.zero_subspace_regular},
       {"subspaces_tested", r.subspaces_tested},
       {"subspaces_irregular", r.subspaces_irregular},
       {"hyperplanes", r.hyperplanes},
       {"codim2", r.codim2},
       {"random", r.random},
       {"only_zero_regular", r.only_zero_regular()},
       {"summary", r.summary_line()},
       {"bad_fraction_violations", r.bad_fraction_violations},
       {"max_bad_fraction", rational_pair(r.max_bad_fraction)},
       {"min_irregular_fraction", rational_pair(r.min_irregular_fraction)},
       {"bad_fraction_example", r.bad_fraction_example}};
  if (!r.certificates.empty()) j["certificates"] = r.certificates;
}

void to_json(json& j, const DecompositionTrace& t) {
  json iterations = json::array();
  for (std::size_t k = 0; k < t.iterations.size(); ++k) {
    const auto& it = t.iterations[k];
    json added = json::array();
    for (const auto& a : it.added) added.push_back(vector_json(a));
    iterations.push_back({{"iteration", k},
                          {"dim", it.dim},
                          {"codim", it.codim},
                          {"index_log2", it.codim},
                          {"energy", it.energy},
                          {"irregular_cosets", it.irregular_cosets},
                          {"added", added}});
  }
  const int codim = t.final_subspace.codim();
  j = {{"epsilon", t.epsilon},
       {"schedule", schedule_name(t.schedule)},
       {"status", status_name(t.status)},
       {"iteration_cap", t.iteration_cap},
       {"rounds", t.rounds()},
       {"iterations", iterations},
       {"final_subspace", t.final_subspace},
       {"final_index_log2", codim},
       {"final_regular", t.final_report.is_regular()},
       {"final_regular_fraction", t.final_report.regular_fraction()}};
  if (codim < 63) j["final_index"] = std::uint64_t{1} << codim;
}

void to_json(json& j, const RoundingReport& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"subspace", rec.coset.subspace()},
                       {"representative", vector_json(rec.coset.representative())},
                       {"character", vector_json(rec.character)},
                       {"deviation", rec.deviation}});
  }
  j = {{"tau", r.tau},
       {"seed", r.seed},
       {"size_threshold", r.size_threshold},
       {"union_bound_pairs_log2", r.union_bound_log2},
       {"full_space_scanned", r.full_space_scanned},
       {"max_deviation", r.max_deviation},
       {"exceedances", r.exceedances},
       {"skipped_small", r.skipped_small},
       {"pairs", records}};
  if (r.full_space_scanned) {
    j["full_space_max"] = r.full_space_max;
    j["full_space_worst"] = vector_json(r.full_space_worst);
  }
}

void to_json(json& j, const TowerParams& p) {
  json dims = json::array();
  for (const auto& d : p.dims) dims.push_back(dim_json(d));
  j = {{"s", p.s},
       {"dims", dims},
       {"n", dim_json(p.n)},
       {"epsilon_max", rational_pair(p.epsilon_max)},
       {"custom", p.custom},
       {"dense", p.dense_possible()}};
}

void to_json(json& j, const SpanningCheck& c) {
  j = {{"ok", c.ok},
       {"certified", c.certified},
       {"hyperplanes_checked", c.hyperplanes_checked},
       {"worst_hyperplane", vector_json(c.worst_hyperplane)},
       {"incidence", c.incidence}};
}

json instance_manifest(const Instance& inst, std::size_t xi_cap) {
  std::size_t total = 0;
  for (const auto& b : inst.xi.blocks) total += b.entries.size();
  json blocks = json::array();
  for (std::size_t i = 0; i < inst.xi.blocks.size(); ++i) {
    const auto& b = inst.xi.blocks[i];
    json block = {{"block", i + 1},
                  {"count", b.entries.size()},
                  {"basis", b.basis},
                  {"attempts", b.attempts},
                  {"verification", b.check}};
    if (total <= xi_cap) {
      json entries = json::array();
      for (const auto& e : b.entries) entries.push_back(vector_json(e));
      block["xi"] = entries;
    }
    blocks.push_back(block);
  }
  json j = inst.params;
  j["seed"] = inst.xi.seed;
  j["xi_omitted"] = total > xi_cap;
  j["xi"] = blocks;
  j["table"] = inst.table.has_value();
  if (inst.table) j["mean"] = inst.table->mean();
  return j;
}

std::string emit_report(json record, const std::string& kind) {
  record["schema"] = "f2reglab." + kind + "/" + std::to_string(kReportSchemaVersion);
  return record.dump(2) + "\n";
}

std::string trace_csv(const DecompositionTrace& t) {
  std::ostringstream os;
  os << "iteration,dim,codim,index,energy,irregular_cosets,added\n";
  os << std::setprecision(17);
  for (std::size_t k = 0; k < t.iterations.size(); ++k) {
    const auto& it = t.iterations[k];
    os << k << ',' << it.dim << ',' << it.codim << ',' << (std::uint64_t{1} << it.codim) << ',' << it.energy << ','
       << it.irregular_cosets << ',' << it.added.size() << '\n';
  }
  return os.str();
}

}  // namespace f2reg
