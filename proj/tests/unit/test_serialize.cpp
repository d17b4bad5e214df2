#include <doctest.h>

#include "newmod/serialize.hpp"

using namespace newmod;
using nlohmann::json;

namespace {

template <typename T>
T round_trip(const T& value) {
  const json j = value;
  return json::parse(j.dump()).get<T>();
}

}  // namespace

TEST_SUITE("serialize") {
  TEST_CASE("rationals") {
    CHECK(rational_to_string(cusps::Rational(5, 3)) == "5/3");
    CHECK(rational_to_string(cusps::Rational(-6, 4)) == "-3/2");
    CHECK(rational_to_string(cusps::Rational(15)) == "15");
    CHECK(rational_from_string("-1/576") == cusps::Rational(-1, 576));
    CHECK(rational_from_string("7") == cusps::Rational(7));
    CHECK_THROWS_AS(rational_from_string("x/2"), std::invalid_argument);
  }

  TEST_CASE("series round trip including the zero series") {
    const auto f = qs::eta_expand(qs::EtaQuotient::parse("24:-1,96:4"), 30, 1000);
    CHECK(series_from_json(json(f)) == f);
    const auto z = qs::QSeries::zero(7, 96);
    CHECK(series_from_json(json(z)) == z);
    json bad = f;
    bad["end_num"] = f.end_num() + 24;
    CHECK_THROWS_AS(series_from_json(bad), std::invalid_argument);
    bad = f;
    bad["coeffs"][0] = 5000;
    CHECK_THROWS_AS(series_from_json(bad), std::invalid_argument);
  }

  TEST_CASE("sequence specs") {
    for (const auto& spec : {part::SequenceSpec{part::PartitionSeq{}, 5},
                             part::SequenceSpec{part::TCoreSeq{4}, 7},
                             part::SequenceSpec{part::FrobeniusSeq{2}, 11},
                             part::SequenceSpec{part::EtaQuotientSeq{qs::EtaQuotient::parse("24:-1")}, 13}}) {
      CHECK(round_trip(spec) == spec);
    }
    CHECK(json(part::SequenceSpec{part::TCoreSeq{4}, 7}) ==
          json::parse(R"({"modulus":7,"kind":"tcore","t":4})"));
    CHECK_THROWS(json::parse(R"({"modulus":7,"kind":"mystery"})").get<part::SequenceSpec>());
  }

  TEST_CASE("report round trips") {
    hecke::HeckeReport hr{7, 3, 49, 100, false, 12};
    CHECK(round_trip(hr) == hr);
    CHECK(json(hr)["verdict"] == "violated");
    hr.consistent = true;
    hr.violation_index.reset();
    CHECK(json(hr)["violation_index"].is_null());
    CHECK(round_trip(hr) == hr);

    const auto census = newman::census(part::SequenceSpec{part::PartitionSeq{}, 5}, 500);
    CHECK(round_trip(census) == census);

    newman::PrimeSearchResult none;
    none.truncation = 100;
    CHECK(json(none)["p"].is_null());
    CHECK_FALSE(json(none).contains("elapsed_seconds"));
    CHECK(round_trip(none) == none);

    newman::PrimeSearchResult found;
    found.found = true;
    found.p = 13;
    found.kronecker_check = -1;
    found.satisfied.push_back({3, 1, 12, 216, false});
    found.hecke_reports.push_back({13, 2, 3, 59, true, std::nullopt});
    found.elapsed_seconds = 1.5;
    CHECK(round_trip(found) == found);

    const auto cert = newman::certify_M_partition(35, 1000);
    CHECK(round_trip(cert) == cert);

    const newman::DensityTable table = newman::density_experiment(
        [](std::uint64_t p) { return p % 4 == 1; }, "p = 1 mod 4", 0.5, 1, {1000});
    CHECK(round_trip(table) == table);

    for (const auto& v : {newman::CongruenceViolation{5, 1, 9, 3}}) CHECK(round_trip(v) == v);
    for (const auto& v : {newman::TCoreViolation{8, 7, 87}}) CHECK(round_trip(v) == v);
    for (const auto& v : {newman::RecurrenceVerdict{1, 45, 2, 1, false}}) CHECK(round_trip(v) == v);
    CHECK(round_trip(newman::BdCounts{35, 25}) == newman::BdCounts{35, 25});
  }

  TEST_CASE("cusp records") {
    const auto eq = qs::EtaQuotient::parse("24:-1");
    for (const auto& meta : cusps::eta_cusp_table(eq, 576)) CHECK(round_trip(meta) == meta);
    const auto omega = cusps::omega_set(eq, 576);
    CHECK(round_trip(omega) == omega);
    CHECK(json(cusps::valence_check(eq, 576))["holds"] == true);
    const json g = cusps::gauss_sweep(4, 2, 1);
    CHECK(g["counterexamples"] == 0);
  }

  TEST_CASE("eta quotient JSON keeps the level") {
    const auto eq = qs::EtaQuotient::parse("96:4,24:-1", 2304);
    const json j = eq;
    CHECK(j["terms"] == "24:-1,96:4");
    CHECK(j["level"] == 2304);
    CHECK(j.get<qs::EtaQuotient>() == eq);
  }
}
