#include <doctest.h>

#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "newmod/cusps.hpp"
#include "newmod/numtheory.hpp"
#include "newmod/serialize.hpp"

using namespace newmod;
using cusps::Rational;

namespace {

std::complex<double> brute_phi(std::int64_t a, std::int64_t c, std::int64_t d, std::int64_t w) {
  // Floating-point arguments straight from the definition, no exact reduction.
  std::complex<double> s{0.0, 0.0};
  const double two_pi = 2.0 * 3.14159265358979323846;
  for (std::int64_t x = 0; x < c; ++x) {
    const double arg = static_cast<double>(24 * a * x * x + w * x) / static_cast<double>(c) +
                       static_cast<double>(d * w * w) / static_cast<double>(96 * c);
    s += std::polar(1.0, two_pi * (arg - std::floor(arg)));
  }
  return s;
}

}  // namespace

TEST_SUITE("cusps") {
  TEST_CASE("t = 4 golden cusp table") {
    std::ifstream in(std::string(NEWMOD_FIXTURE_DIR) + "/t4_cusps.json");
    REQUIRE(in.good());
    const auto golden = nlohmann::json::parse(in);
    const auto eq = qs::EtaQuotient::parse(golden.at("quotient").get<std::string>());
    const std::uint64_t level = golden.at("level").get<std::uint64_t>();
    const auto table = cusps::eta_cusp_table(eq, level);
    REQUIRE(table.size() == golden.at("leading_exponents").size());
    for (const auto& meta : table) {
      const auto expected = golden.at("leading_exponents").at(std::to_string(meta.c)).get<std::string>();
      CHECK(rational_to_string(meta.leading_exponent) == expected);
      CHECK(meta.width == level / std::gcd(meta.c * meta.c, level));
    }
    const auto omega = cusps::omega_set(eq, level);
    CHECK(omega.negatives.empty());
    CHECK(omega.s == golden.at("omega").size());
    CHECK(cusps::valence_check(eq, level).holds);
  }

  TEST_CASE("1/eta(24z) has Omega = {-1}") {
    const auto eq = qs::EtaQuotient::parse("24:-1");
    const auto omega = cusps::omega_set(eq, 576);
    CHECK(omega.representatives == std::vector<std::int64_t>{-1});
    CHECK(omega.s == 1);
    CHECK(omega.complete);
    for (const auto& neg : omega.negatives) {
      CHECK(neg.exponent == Rational(-static_cast<std::int64_t>(std::gcd(neg.c, std::uint64_t{24}) *
                                                               std::gcd(neg.c, std::uint64_t{24})),
                                     576));
    }
  }

  TEST_CASE("Delta(24z) leading exponents are (c,24)^2/24") {
    const auto eq = qs::EtaQuotient::parse("24:24");
    for (std::uint64_t c = 1; c <= 576; ++c) {
      if (576 % c != 0) continue;
      const auto g = static_cast<std::int64_t>(std::gcd(c, std::uint64_t{24}));
      CHECK(cusps::eta_leading_exponent(eq, c) == Rational(g * g, 24));
    }
  }

  TEST_CASE("valence formula on several quotients") {
    CHECK(cusps::valence_check(qs::EtaQuotient::parse("1:24"), 1).holds);
    CHECK(cusps::valence_check(qs::EtaQuotient::parse("1:24"), 1).total == Rational(1));
    CHECK(cusps::valence_check(qs::EtaQuotient::parse("1:8,2:8"), 2).holds);
    CHECK(cusps::valence_check(qs::EtaQuotient::parse("1:-2,2:5,4:-2"), 4).holds);
    CHECK(cusps::valence_check(qs::EtaQuotient::parse("24:-1"), 576).holds);
    CHECK(cusps::valence_check(qs::EtaQuotient::parse("1:27,9:-3"), 9).holds);
  }

  TEST_CASE("cusp multiplicities count all cusps of Gamma0(N)") {
    // Number of cusps of Gamma0(N) is sum_{c | N} phi(gcd(c, N/c)).
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> known{{1, 1}, {4, 3}, {9, 4}, {576, 48}};
    for (const auto& [n, count] : known) {
      std::uint64_t total = 0;
      for (const auto& m : cusps::eta_cusp_table(qs::EtaQuotient::parse("1:24"), n)) total += m.multiplicity;
      CHECK(total == count);
    }
  }

  TEST_CASE("cusp preconditions") {
    const auto eq = qs::EtaQuotient::parse("24:-1");
    CHECK_THROWS_AS(cusps::eta_cusp_order(eq, 576, 5), std::invalid_argument);
    CHECK_THROWS_AS(cusps::eta_cusp_table(eq, 36), std::invalid_argument);
    CHECK_THROWS_AS(cusps::eta_leading_exponent(eq, 0), std::invalid_argument);
    CHECK_THROWS(cusps::square_class(Rational(0)));
    CHECK(cusps::square_class(Rational(-1, 576)) == -1);
    CHECK(cusps::square_class(Rational(-4, 288)) == -2);
  }

  TEST_CASE("incomplete Omega is flagged") {
    // eta(z)^-48: leading q^-2 and the next exponent q^-1 is also negative.
    const auto omega = cusps::omega_set(qs::EtaQuotient::parse("1:-48"), 1);
    CHECK_FALSE(omega.complete);
  }

  TEST_CASE("Frobenius Omega bounds") {
    const auto b2 = cusps::frobenius_omega_bound(2);
    CHECK(b2.bound == 576 * 4);
    REQUIRE(b2.families.size() == 1);
    CHECK(b2.families[0].denominator == 288);
    CHECK(b2.refined_classes == std::vector<std::int64_t>{-2});
    const auto b3 = cusps::frobenius_omega_bound(3);
    CHECK(b3.bound == 576 * 9);
    CHECK(b3.refined_classes == std::vector<std::int64_t>{-3});
    CHECK(cusps::frobenius_omega_bound(4).families.empty());
    CHECK_THROWS(cusps::frobenius_omega_bound(1));
  }

  TEST_CASE("factored Gauss sum equals the direct and floating sums") {
    for (std::int64_t c = 1; c <= 30; ++c) {
      for (std::int64_t a = 1; a <= 7; ++a) {
        if (std::gcd(a, c) != 1) continue;
        const std::int64_t d = c == 1 ? 1 : static_cast<std::int64_t>(nt::invmod(a, c));
        const std::int64_t b = (a * d - 1) / c;
        for (std::int64_t w = -10; w <= 10; ++w) {
          const auto gv = cusps::gauss_phi_h2(a, b, c, d, w);
          const auto direct = cusps::gauss_phi_h2_direct(a, c, d, w);
          REQUIRE(std::abs(gv.value - direct) < 1e-8);
          REQUIRE(std::abs(brute_phi(a, c, d, w) - direct) < 1e-6);
          CHECK(gv.u_vanishes == (std::abs(gv.u_sum) < 1e-9));
          if (gv.u_vanishes) CHECK(std::abs(direct) < 1e-9);
        }
      }
    }
    CHECK_THROWS_AS(cusps::gauss_phi_h2(1, 0, 0, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(cusps::gauss_phi_h2(2, 1, 3, 1, 3), std::invalid_argument);
  }

  TEST_CASE("Gauss sweep reports no counterexamples") {
    const auto s = cusps::gauss_sweep(24, 12, 3);
    CHECK(s.cases == 24 * 3 * 25);
    CHECK(s.counterexamples == 0);
    CHECK(s.disagreements == 0);
    CHECK(s.factorization_mismatches == 0);
    CHECK(s.nonvanishing > 0);
  }
}
