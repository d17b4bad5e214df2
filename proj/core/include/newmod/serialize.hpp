#pragma once

// JSON mappings for every report type. Absent optionals serialize as null.
// Rationals are strings "num/den" (or "num" when den = 1).

#include <string>

#include <nlohmann/json.hpp>

#include "newmod/cusps.hpp"
#include "newmod/hecke.hpp"
#include "newmod/newman.hpp"
#include "newmod/partitions.hpp"
#include "newmod/qseries.hpp"

namespace newmod {

std::string rational_to_string(const cusps::Rational& r);
cusps::Rational rational_from_string(const std::string& text);

/// QSeries has no default constructor, so it is read through this function.
qs::QSeries series_from_json(const nlohmann::json& j);

}  // namespace newmod

namespace newmod::qs {
void to_json(nlohmann::json& j, const QSeries& f);
void to_json(nlohmann::json& j, const EtaQuotient& eq);
void from_json(const nlohmann::json& j, EtaQuotient& eq);
}  // namespace newmod::qs

namespace newmod::part {
void to_json(nlohmann::json& j, const SequenceSpec& spec);
void from_json(const nlohmann::json& j, SequenceSpec& spec);
}  // namespace newmod::part

namespace newmod::hecke {
void to_json(nlohmann::json& j, const HeckeContext& ctx);
void from_json(const nlohmann::json& j, HeckeContext& ctx);
void to_json(nlohmann::json& j, const HeckeReport& r);
void from_json(const nlohmann::json& j, HeckeReport& r);
}  // namespace newmod::hecke

namespace newmod::newman {
void to_json(nlohmann::json& j, const Checkpoint& c);
void from_json(const nlohmann::json& j, Checkpoint& c);
void to_json(nlohmann::json& j, const CensusReport& r);
void from_json(const nlohmann::json& j, CensusReport& r);
void to_json(nlohmann::json& j, const ResidueFit& f);
void to_json(nlohmann::json& j, const GrowthDiagnostic& g);
void to_json(nlohmann::json& j, const CongruenceViolation& v);
void from_json(const nlohmann::json& j, CongruenceViolation& v);
void to_json(nlohmann::json& j, const SearchCondition& c);
void from_json(const nlohmann::json& j, SearchCondition& c);
void to_json(nlohmann::json& j, const PrimeSearchResult& r);
void from_json(const nlohmann::json& j, PrimeSearchResult& r);
void to_json(nlohmann::json& j, const RecurrenceVerdict& v);
void from_json(const nlohmann::json& j, RecurrenceVerdict& v);
void to_json(nlohmann::json& j, const CertificatePrime& p);
void from_json(const nlohmann::json& j, CertificatePrime& p);
void to_json(nlohmann::json& j, const MCertificate& c);
void from_json(const nlohmann::json& j, MCertificate& c);
void to_json(nlohmann::json& j, const TCoreViolation& v);
void from_json(const nlohmann::json& j, TCoreViolation& v);
void to_json(nlohmann::json& j, const DensityRow& r);
void from_json(const nlohmann::json& j, DensityRow& r);
void to_json(nlohmann::json& j, const DensityTable& t);
void from_json(const nlohmann::json& j, DensityTable& t);
void to_json(nlohmann::json& j, const BdCounts& c);
void from_json(const nlohmann::json& j, BdCounts& c);
}  // namespace newmod::newman

namespace newmod::cusps {
void to_json(nlohmann::json& j, const CuspExpansionMeta& m);
void from_json(const nlohmann::json& j, CuspExpansionMeta& m);
void to_json(nlohmann::json& j, const ValenceCheck& v);
void to_json(nlohmann::json& j, const NegativeExponent& n);
void from_json(const nlohmann::json& j, NegativeExponent& n);
void to_json(nlohmann::json& j, const OmegaSummary& o);
void from_json(const nlohmann::json& j, OmegaSummary& o);
void to_json(nlohmann::json& j, const FrobeniusOmegaBound& b);
void to_json(nlohmann::json& j, const GaussSweep& s);
}  // namespace newmod::cusps
