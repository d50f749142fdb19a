#pragma once

// JSON and CSV serialization of every report type. Objects use nlohmann's
// sorted-key maps, so emitted text is stable. Exact rationals are written as
// {"exact": "1/6", "value": 0.1666...}.

#include <json.hpp>
#include <string>

#include "f2reg/decompose.hpp"
#include "f2reg/fourier.hpp"
#include "f2reg/instance.hpp"
#include "f2reg/rounding.hpp"
#include "f2reg/witness.hpp"

namespace f2reg {

inline constexpr int kReportSchemaVersion = 1;

/// "p/q", or "p" when q = 1.
std::string rational_string(const Rational& r);

nlohmann::json vector_json(const F2Vector& v);
nlohmann::json rational_json(const Rational& r);

void to_json(nlohmann::json& j, const Subspace& h);
void to_json(nlohmann::json& j, const RegularityReport& r);
void to_json(nlohmann::json& j, const CosetSpectrum& s);
void to_json(nlohmann::json& j, const WitnessCertificate& c);
void to_json(nlohmann::json& j, const LowerBoundReport& r);
void to_json(nlohmann::json& j, const DecompositionTrace& t);
void to_json(nlohmann::json& j, const RoundingReport& r);
void to_json(nlohmann::json& j, const TowerParams& p);
void to_json(nlohmann::json& j, const SpanningCheck& c);

/// Instance manifest; xi entries are omitted when the family holds more than
/// `xi_cap` vectors in total (they regenerate from the seed).
nlohmann::json instance_manifest(const Instance& inst, std::size_t xi_cap = 1 << 16);

/// Adds the "schema" tag and pretty-prints.
std::string emit_report(nlohmann::json record, const std::string& kind);

/// iteration,dim,codim,index,energy,irregular_cosets,added
std::string trace_csv(const DecompositionTrace& t);

}  // namespace f2reg
