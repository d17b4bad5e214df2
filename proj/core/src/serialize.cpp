#include "newmod/serialize.hpp"

#include <stdexcept>

namespace newmod {

using nlohmann::json;

std::string rational_to_string(const cusps::Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

cusps::Rational rational_from_string(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return cusps::Rational(std::stoll(text));
    return cusps::Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

qs::QSeries series_from_json(const json& j) {
  const auto m = j.at("modulus").get<std::uint32_t>();
  auto coeffs = j.at("coeffs").get<std::vector<qs::Residue>>();
  if (coeffs.empty()) return qs::QSeries::zero(m, j.at("end_num").get<std::int64_t>());
  for (auto c : coeffs) {
    if (c >= m) throw std::invalid_argument("series coefficient not reduced");
  }
  qs::QSeries f(m, j.at("offset_num").get<std::int64_t>(), j.at("step").get<std::int64_t>(),
                std::move(coeffs));
  if (j.contains("end_num") && j.at("end_num").get<std::int64_t>() != f.end_num()) {
    throw std::invalid_argument("series end_num inconsistent with coefficients");
  }
  return f;
}

namespace {

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

namespace qs {

void to_json(json& j, const QSeries& f) {
  j = json{{"modulus", f.modulus()},
           {"offset_num", f.offset_num()},
           {"step", f.step()},
           {"end_num", f.end_num()},
           {"coeffs", std::vector<Residue>(f.coeffs().begin(), f.coeffs().end())}};
}

void to_json(json& j, const EtaQuotient& eq) {
  j = json{{"terms", eq.to_string()}, {"level", eq.level()}};
}

void from_json(const json& j, EtaQuotient& eq) {
  eq = EtaQuotient::parse(j.at("terms").get<std::string>(), j.value("level", std::uint64_t{0}));
}

}  // namespace qs

namespace part {

void to_json(json& j, const SequenceSpec& spec) {
  j = json{{"modulus", spec.modulus}};
  if (std::holds_alternative<PartitionSeq>(spec.variant)) {
    j["kind"] = "partition";
  } else if (const auto* t = std::get_if<TCoreSeq>(&spec.variant)) {
    j["kind"] = "tcore";
    j["t"] = t->t;
  } else if (const auto* h = std::get_if<FrobeniusSeq>(&spec.variant)) {
    j["kind"] = "frobenius";
    j["h"] = h->h;
  } else {
    j["kind"] = "eta";
    j["quotient"] = std::get<EtaQuotientSeq>(spec.variant).quotient;
  }
}

void from_json(const json& j, SequenceSpec& spec) {
  spec.modulus = j.at("modulus").get<std::uint32_t>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "partition") {
    spec.variant = PartitionSeq{};
  } else if (kind == "tcore") {
    spec.variant = TCoreSeq{j.at("t").get<unsigned>()};
  } else if (kind == "frobenius") {
    spec.variant = FrobeniusSeq{j.at("h").get<unsigned>()};
  } else if (kind == "eta") {
    spec.variant = EtaQuotientSeq{j.at("quotient").get<qs::EtaQuotient>()};
  } else {
    throw std::invalid_argument("unknown sequence kind '" + kind + "'");
  }
}

}  // namespace part

namespace hecke {

void to_json(json& j, const HeckeContext& ctx) {
  j = json{{"weight_num", ctx.weight_num}, {"level", ctx.level}, {"disc", ctx.disc}};
}

void from_json(const json& j, HeckeContext& ctx) {
  ctx.weight_num = j.at("weight_num").get<std::int64_t>();
  ctx.level = j.at("level").get<std::uint64_t>();
  ctx.disc = j.at("disc").get<std::int64_t>();
}

void to_json(json& j, const HeckeReport& r) {
  j = json{{"p", r.p},
           {"lambda", r.lambda},
           {"modulus", r.modulus},
           {"checked_to", r.checked_to},
           {"verdict", r.consistent ? "consistent" : "violated"},
           {"violation_index", optional_to_json(r.violation_index)}};
}

void from_json(const json& j, HeckeReport& r) {
  r.p = j.at("p").get<std::uint64_t>();
  r.lambda = j.at("lambda").get<Residue>();
  r.modulus = j.at("modulus").get<std::uint32_t>();
  r.checked_to = j.at("checked_to").get<std::int64_t>();
  r.consistent = j.at("verdict").get<std::string>() == "consistent";
  r.violation_index = optional_from_json<std::int64_t>(j.at("violation_index"));
}

}  // namespace hecke

namespace newman {

void to_json(json& j, const Checkpoint& c) { j = json{{"x", c.x}, {"counts", c.counts}}; }

void from_json(const json& j, Checkpoint& c) {
  c.x = j.at("x").get<std::uint64_t>();
  c.counts = j.at("counts").get<std::vector<std::uint64_t>>();
}

void to_json(json& j, const CensusReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.first_witness) witnesses.push_back(optional_to_json(w));
  j = json{{"spec", r.spec},
           {"x", r.x},
           {"counts", r.counts},
           {"first_witness", witnesses},
           {"checkpoints", r.checkpoints},
           {"all_residues_attained", r.all_residues_attained}};
}

void from_json(const json& j, CensusReport& r) {
  r.spec = j.at("spec").get<part::SequenceSpec>();
  r.x = j.at("x").get<std::uint64_t>();
  r.counts = j.at("counts").get<std::vector<std::uint64_t>>();
  r.first_witness.clear();
  for (const auto& w : j.at("first_witness")) {
    r.first_witness.push_back(optional_from_json<std::uint64_t>(w));
  }
  r.checkpoints = j.at("checkpoints").get<std::vector<Checkpoint>>();
  r.all_residues_attained = j.at("all_residues_attained").get<bool>();
}

void to_json(json& j, const ResidueFit& f) {
  j = json{{"residue", f.residue}, {"degenerate", f.degenerate}};
  if (!f.degenerate) {
    j["exponent"] = f.exponent;
    j["residual"] = f.residual;
    j["residual_linear"] = f.residual_linear;
    j["residual_sqrt_log"] = f.residual_sqrt_log;
    j["closer"] = f.closer;
  }
}

void to_json(json& j, const GrowthDiagnostic& g) {
  j = json{{"label", g.label}, {"fits", g.fits}};
}

void to_json(json& j, const CongruenceViolation& v) {
  j = json{{"modulus", v.modulus}, {"n", v.n}, {"index", v.index}, {"residue", v.residue}};
}

void from_json(const json& j, CongruenceViolation& v) {
  v.modulus = j.at("modulus").get<std::uint32_t>();
  v.n = j.at("n").get<std::uint64_t>();
  v.index = j.at("index").get<std::uint64_t>();
  v.residue = j.at("residue").get<Residue>();
}

void to_json(json& j, const SearchCondition& c) {
  j = json{{"ell", c.ell},
           {"e", c.e},
           {"congruence_modulus", c.congruence_modulus},
           {"strict_modulus", c.strict_modulus},
           {"meets_strict", c.meets_strict}};
}

void from_json(const json& j, SearchCondition& c) {
  c.ell = j.at("ell").get<std::uint64_t>();
  c.e = j.at("e").get<unsigned>();
  c.congruence_modulus = j.at("congruence_modulus").get<std::uint64_t>();
  c.strict_modulus = j.at("strict_modulus").get<std::uint64_t>();
  c.meets_strict = j.at("meets_strict").get<bool>();
}

void to_json(json& j, const PrimeSearchResult& r) {
  j = json{{"found", r.found},
           {"p", r.found ? json(r.p) : json(nullptr)},
           {"satisfied", r.satisfied},
           {"kronecker_check", r.kronecker_check},
           {"hecke_reports", r.hecke_reports},
           {"truncation", r.truncation},
           {"n_check", r.n_check},
           {"progression_modulus", r.progression_modulus},
           {"last_candidate", r.last_candidate},
           {"candidates_examined", r.candidates_examined}};
}

void from_json(const json& j, PrimeSearchResult& r) {
  r.found = j.at("found").get<bool>();
  r.p = r.found ? j.at("p").get<std::uint64_t>() : 0;
  r.satisfied = j.at("satisfied").get<std::vector<SearchCondition>>();
  r.kronecker_check = j.at("kronecker_check").get<int>();
  r.hecke_reports = j.at("hecke_reports").get<std::vector<hecke::HeckeReport>>();
  r.truncation = j.at("truncation").get<std::int64_t>();
  r.n_check = j.at("n_check").get<std::int64_t>();
  r.progression_modulus = j.at("progression_modulus").get<std::uint64_t>();
  r.last_candidate = j.at("last_candidate").get<std::uint64_t>();
  r.candidates_examined = j.at("candidates_examined").get<std::uint64_t>();
}

void to_json(json& j, const RecurrenceVerdict& v) {
  j = json{{"e", v.e}, {"index", v.index}, {"lhs", v.lhs}, {"rhs", v.rhs},
           {"consistent", v.consistent}};
}

void from_json(const json& j, RecurrenceVerdict& v) {
  v.e = j.at("e").get<unsigned>();
  v.index = j.at("index").get<std::uint64_t>();
  v.lhs = j.at("lhs").get<Residue>();
  v.rhs = j.at("rhs").get<Residue>();
  v.consistent = j.at("consistent").get<bool>();
}

void to_json(json& j, const CertificatePrime& p) {
  j = json{{"ell", p.ell}, {"kronecker", p.kronecker}, {"residue", p.residue}};
}

void from_json(const json& j, CertificatePrime& p) {
  p.ell = j.at("ell").get<std::uint64_t>();
  p.kronecker = j.at("kronecker").get<int>();
  p.residue = j.at("residue").get<Residue>();
}

void to_json(json& j, const MCertificate& c) {
  j = json{{"modulus", c.modulus}, {"found", c.found}, {"x_search", c.x_search},
           {"r1", c.r1},           {"level", c.level}, {"note", c.note}};
  if (c.found) {
    j["n"] = c.n;
    j["j"] = c.j;
    j["n0"] = c.n0;
    j["m"] = c.m;
    j["primes"] = c.primes;
  }
}

void from_json(const json& j, MCertificate& c) {
  c.modulus = j.at("modulus").get<std::uint32_t>();
  c.found = j.at("found").get<bool>();
  c.x_search = j.at("x_search").get<std::uint64_t>();
  c.r1 = j.at("r1").get<std::int64_t>();
  c.level = j.at("level").get<std::uint64_t>();
  c.note = j.at("note").get<std::string>();
  if (c.found) {
    c.n = j.at("n").get<std::uint64_t>();
    c.j = j.at("j").get<std::uint64_t>();
    c.n0 = j.at("n0").get<std::uint64_t>();
    c.m = j.at("m").get<std::uint64_t>();
    c.primes = j.at("primes").get<std::vector<CertificatePrime>>();
  }
}

void to_json(json& j, const TCoreViolation& v) {
  j = json{{"t", v.t}, {"n0", v.n0}, {"n1", v.n1}};
}

void from_json(const json& j, TCoreViolation& v) {
  v.t = j.at("t").get<std::uint64_t>();
  v.n0 = j.at("n0").get<std::uint64_t>();
  v.n1 = j.at("n1").get<std::uint64_t>();
}

void to_json(json& j, const DensityRow& r) {
  j = json{{"x", r.x}, {"count_a", r.count_a}, {"count_all", r.count_all}, {"ratio", r.ratio}};
}

void from_json(const json& j, DensityRow& r) {
  r.x = j.at("x").get<std::uint64_t>();
  r.count_a = j.at("count_a").get<std::uint64_t>();
  r.count_all = j.at("count_all").get<std::uint64_t>();
  r.ratio = j.at("ratio").get<double>();
}

void to_json(json& j, const DensityTable& t) {
  j = json{{"m", t.m},           {"predicate", t.predicate}, {"density", t.density},
           {"target", t.target}, {"rows", t.rows}};
}

void from_json(const json& j, DensityTable& t) {
  t.m = j.at("m").get<unsigned>();
  t.predicate = j.at("predicate").get<std::string>();
  t.density = j.at("density").get<double>();
  t.target = j.at("target").get<double>();
  t.rows = j.at("rows").get<std::vector<DensityRow>>();
}

void to_json(json& j, const BdCounts& c) {
  j = json{{"all", c.all}, {"squarefree", c.squarefree}};
}

void from_json(const json& j, BdCounts& c) {
  c.all = j.at("all").get<std::uint64_t>();
  c.squarefree = j.at("squarefree").get<std::uint64_t>();
}

}  // namespace newman

namespace cusps {

void to_json(json& j, const CuspExpansionMeta& m) {
  j = json{{"c", m.c},
           {"width", m.width},
           {"multiplicity", m.multiplicity},
           {"leading_exponent", rational_to_string(m.leading_exponent)},
           {"order", rational_to_string(m.order)}};
}

void from_json(const json& j, CuspExpansionMeta& m) {
  m.c = j.at("c").get<std::uint64_t>();
  m.width = j.at("width").get<std::uint64_t>();
  m.multiplicity = j.at("multiplicity").get<std::uint64_t>();
  m.leading_exponent = rational_from_string(j.at("leading_exponent").get<std::string>());
  m.order = rational_from_string(j.at("order").get<std::string>());
}

void to_json(json& j, const ValenceCheck& v) {
  j = json{{"total", rational_to_string(v.total)},
           {"expected", rational_to_string(v.expected)},
           {"holds", v.holds}};
}

void to_json(json& j, const NegativeExponent& n) {
  j = json{{"c", n.c}, {"exponent", rational_to_string(n.exponent)},
           {"square_class", n.square_class}};
}

void from_json(const json& j, NegativeExponent& n) {
  n.c = j.at("c").get<std::uint64_t>();
  n.exponent = rational_from_string(j.at("exponent").get<std::string>());
  n.square_class = j.at("square_class").get<std::int64_t>();
}

void to_json(json& j, const OmegaSummary& o) {
  j = json{{"source", o.source},
           {"level", o.level},
           {"negatives", o.negatives},
           {"representatives", o.representatives},
           {"s", o.s},
           {"complete", o.complete}};
}

void from_json(const json& j, OmegaSummary& o) {
  o.source = j.at("source").get<qs::EtaQuotient>();
  o.level = j.at("level").get<std::uint64_t>();
  o.negatives = j.at("negatives").get<std::vector<NegativeExponent>>();
  o.representatives = j.at("representatives").get<std::vector<std::int64_t>>();
  o.s = j.at("s").get<std::size_t>();
  o.complete = j.at("complete").get<bool>();
}

void to_json(json& j, const FrobeniusOmegaBound& b) {
  json families = json::array();
  for (const auto& f : b.families) {
    families.push_back({{"denominator", f.denominator}, {"square_class", f.square_class}});
  }
  j = json{{"h", b.h}, {"bound", b.bound}, {"families", families},
           {"refined_classes", b.refined_classes}};
}

void to_json(json& j, const GaussSweep& s) {
  j = json{{"cases", s.cases},
           {"nonvanishing", s.nonvanishing},
           {"counterexamples", s.counterexamples},
           {"disagreements", s.disagreements},
           {"factorization_mismatches", s.factorization_mismatches},
           {"tolerance", s.tolerance}};
}

}  // namespace cusps

}  // namespace newmod
