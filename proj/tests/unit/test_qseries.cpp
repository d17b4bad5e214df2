#include <doctest.h>

#include <random>
#include <stdexcept>

#include "newmod/qseries.hpp"

using namespace newmod;
using qs::QSeries;
using qs::Residue;

namespace {

QSeries random_series(std::mt19937_64& rng, std::uint32_t mod, std::size_t len, std::int64_t first,
                      bool unit_lead = true) {
  std::vector<Residue> v(len);
  for (auto& x : v) x = static_cast<Residue>(rng() % mod);
  if (unit_lead) v[0] = 1;
  return QSeries::from_residues(mod, v, first);
}

// Dense convolution over integers, reduced at the end: the reference product.
std::vector<Residue> naive_product(const std::vector<Residue>& a, const std::vector<Residue>& b,
                                   std::uint32_t mod, std::size_t len) {
  std::vector<Residue> out(len, 0);
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j) {
      out[i + j] = static_cast<Residue>((out[i + j] + std::uint64_t{a[i]} * b[j]) % mod);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("qseries") {
  TEST_CASE("construction strips leading zeros and keeps the known range") {
    const std::vector<std::int64_t> vals{0, 0, 3, -1, 5};
    const auto f = QSeries::from_integers(7, vals);
    CHECK(f.offset_num() == 48);
    CHECK(f.end_num() == 5 * 24);
    CHECK(f.coeff(0) == 0);
    CHECK(f.coeff(2) == 3);
    CHECK(f.coeff(3) == 6);
    CHECK(f.integer_reach() == 5);
    CHECK_THROWS_AS(f.coeff(5), qs::InsufficientReach);

    const auto z = QSeries::zero(7, 240);
    CHECK(z.is_zero());
    CHECK(z.offset_num() == z.end_num());
    CHECK(z.coeff(9) == 0);
  }

  TEST_CASE("modulus bounds") {
    CHECK_THROWS_AS(qs::check_modulus(0), std::invalid_argument);
    CHECK_THROWS_AS(qs::check_modulus(qs::kModulusLimit), std::invalid_argument);
    CHECK_NOTHROW(qs::check_modulus(qs::kModulusLimit - 1));
    CHECK_NOTHROW(qs::check_modulus(1));
  }

  TEST_CASE("modulus one collapses every series to zero") {
    const auto f = QSeries::constant(1, 5, 10);
    CHECK(f.is_zero());
    CHECK(f.end_num() == 240);
  }

  TEST_CASE("Karatsuba and schoolbook agree with the naive product") {
    std::mt19937_64 rng(11);
    for (std::uint32_t mod : {2u, 1000003u, 2147483647u}) {
      for (std::size_t len : {1u, 7u, 64u, 129u, 700u}) {
        const auto f = random_series(rng, mod, len, 0, false);
        const auto g = random_series(rng, mod, len + 3, 0, false);
        const auto fs = mul(f, g, qs::MulAlgorithm::kSchoolbook);
        const auto fk = mul(f, g, qs::MulAlgorithm::kKaratsuba);
        const auto fa = mul(f, g);
        CHECK(fs == fk);
        CHECK(fs == fa);
        std::vector<Residue> a(len), b(len + 3);
        for (std::size_t i = 0; i < len; ++i) a[i] = f.coeff(static_cast<std::int64_t>(i));
        for (std::size_t i = 0; i < len + 3; ++i) b[i] = g.coeff(static_cast<std::int64_t>(i));
        const auto ref = naive_product(a, b, mod, len);
        // Stripped leading zeros can only extend the known range.
        CHECK(fs.integer_reach() >= static_cast<std::int64_t>(len));
        CHECK(fs.dense(0, static_cast<std::int64_t>(len)) == ref);
      }
    }
  }

  TEST_CASE("mul respects offsets and mismatched moduli throw") {
    std::mt19937_64 rng(3);
    const auto f = shift(random_series(rng, 101, 20, 0), 5);
    const auto g = shift(random_series(rng, 101, 30, 0), -3);
    const auto h = mul(f, g);
    CHECK(h.offset_num() == 2);
    CHECK(h.end_num() == std::min(f.end_num() + g.offset_num(), g.end_num() + f.offset_num()));
    CHECK_THROWS_AS(mul(f, QSeries::constant(7, 1, 4)), qs::ModulusMismatch);
  }

  TEST_CASE("invert and div are inverse to mul") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint32_t mod = trial % 2 ? 9973u : 1u << 20;
      auto f = random_series(rng, mod, 80, trial % 5 - 2);
      const auto g = random_series(rng, mod, 90, 1);
      const auto fi = invert(f);
      CHECK(fi.offset_num() == -f.offset_num());
      const auto one = mul(f, fi);
      CHECK(one.coeff(0) == 1 % mod);
      for (std::int64_t n = 1; n < one.integer_reach(); ++n) REQUIRE(one.coeff(n) == 0);
      const auto q = div(g, f);
      const auto back = mul(q, f);
      for (std::int64_t n = 0; n < back.integer_reach(); ++n) REQUIRE(back.coeff(n) == g.coeff(n));
    }
    const auto nonunit = QSeries::from_residues(10, {2, 1, 1});
    CHECK_THROWS_AS(invert(nonunit), qs::NonUnitLeading);
  }

  TEST_CASE("pow matches repeated multiplication") {
    std::mt19937_64 rng(9);
    const auto f = random_series(rng, 65537, 40, 0);
    QSeries acc = QSeries::constant(65537, 1, 40);
    for (std::uint64_t e = 0; e < 9; ++e) {
      CHECK(pow(f, e) == acc);
      acc = mul(acc, f);
    }
    const auto z = QSeries::zero(5, 48);
    CHECK(pow(z, 3).is_zero());
  }

  TEST_CASE("euler_product matches the finite product") {
    const std::int64_t n = 60;
    const std::uint32_t mod = 1000000007u;
    for (std::uint64_t delta : {1u, 2u, 5u}) {
      QSeries prod = QSeries::constant(mod, 1, n + 1);
      for (std::int64_t k = 1; k * static_cast<std::int64_t>(delta) <= n; ++k) {
        std::vector<std::int64_t> factor(static_cast<std::size_t>(n + 1), 0);
        factor[0] = 1;
        factor[static_cast<std::size_t>(k * static_cast<std::int64_t>(delta))] = -1;
        prod = mul(prod, QSeries::from_integers(mod, factor));
      }
      const auto e = qs::euler_product(n, mod, delta);
      CHECK(e.integer_reach() >= n + 1);
      CHECK(e.dense(0, n + 1) == prod.dense(0, n + 1));
    }
  }

  TEST_CASE("eta quotient parsing and expansion") {
    const auto eq = qs::EtaQuotient::parse("96:4,24:-1");
    CHECK(eq.offset_num() == 96 * 4 - 24);
    CHECK(eq.weight_num() == 3);
    CHECK(eq.to_string() == "24:-1,96:4");
    CHECK(qs::EtaQuotient::parse("2:1,2:-1").terms().empty());
    CHECK_THROWS_AS(qs::EtaQuotient::parse("x:1"), std::invalid_argument);
    CHECK_THROWS_AS(qs::EtaQuotient::parse("5:1", 12), std::invalid_argument);

    // eta(24z)^-1 = sum p(n) q^(24n - 1).
    const auto f = qs::eta_expand(qs::EtaQuotient::parse("24:-1"), 400, 1000003);
    CHECK(f.offset_num() == -24);
    CHECK(f.coeff(-1) == 1);
    CHECK(f.coeff(23) == 1);
    CHECK(f.coeff(47) == 2);
    CHECK(f.coeff(24 * 5 - 1) == 7);
    CHECK(f.coeff(24 * 10 - 1) == 42);
    CHECK(f.coeff(0) == 0);
    // The known range ends on the series' own exponent grid, at or past the request.
    CHECK(f.end_num() >= f.offset_num() + 24 * 401);
    CHECK(f.end_num() < f.offset_num() + 24 * 401 + f.step());

    // eta(z)^24 = Delta with tau(2) = -24, tau(3) = 252.
    const auto d = qs::eta_expand(qs::EtaQuotient::parse("1:24"), 5, 1000003);
    CHECK(d.coeff(1) == 1);
    CHECK(d.coeff(2) == 1000003 - 24);
    CHECK(d.coeff(3) == 252);
  }

  TEST_CASE("twist by trivial and Kronecker characters") {
    const std::vector<std::int64_t> vals{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    const auto f = QSeries::from_integers(97, vals, -2);
    const auto tr = qs::twist(f, qs::TwistKind::kTrivial, 5);
    const auto kr = qs::twist(f, qs::TwistKind::kKronecker, 5);
    for (std::int64_t n = -2; n <= 8; ++n) {
      CHECK(tr.coeff(n) == (n % 5 == 0 ? 0u : 1u));
      const int k = n % 5 == 0 ? 0 : ((n % 5 + 5) % 5 == 1 || (n % 5 + 5) % 5 == 4 ? 1 : -1);
      CHECK(kr.coeff(n) == static_cast<Residue>((k + 97) % 97));
    }
    const auto frac = QSeries(97, -1, 24, {1, 2});
    CHECK_THROWS(qs::twist(frac, qs::TwistKind::kTrivial, 5));
  }

  TEST_CASE("truncated, reduced and refined") {
    std::mt19937_64 rng(1);
    const auto f = random_series(rng, 1000, 50, 0);
    const auto t = f.truncated(24 * 10);
    CHECK(t.integer_reach() == 10);
    CHECK_THROWS(f.truncated(f.end_num() + 24));
    const auto r = f.reduced(10);
    for (std::int64_t n = 0; n < 50; ++n) CHECK(r.coeff(n) == f.coeff(n) % 10);
    CHECK_THROWS(f.reduced(7));
    const auto fine = f.refined(12);
    CHECK(fine.step() == 12);
    CHECK(fine.at_num(12) == 0);
    for (std::int64_t n = 0; n < 50; ++n) CHECK(fine.coeff(n) == f.coeff(n));
  }

  TEST_CASE("lattice theta of the Frobenius form") {
    // h = 2: sum over m in Z of q^(m^2): theta coefficients 1, 2, 0, 0, 2, ...
    const auto th = qs::lattice_theta(qs::GramForm::frobenius(2), 30, 1000);
    for (std::int64_t n = 0; n <= 30; ++n) {
      std::int64_t count = 0;
      for (std::int64_t m = -6; m <= 6; ++m) count += m * m == n ? 1 : 0;
      CHECK(th.coeff(n) == count);
    }
    // h = 3: representations by m1^2 + m1 m2 + m2^2.
    const auto th3 = qs::lattice_theta(qs::GramForm::frobenius(3), 40, 1000);
    for (std::int64_t n = 0; n <= 40; ++n) {
      std::int64_t count = 0;
      for (std::int64_t a = -10; a <= 10; ++a) {
        for (std::int64_t b = -10; b <= 10; ++b) count += a * a + a * b + b * b == n ? 1 : 0;
      }
      CHECK(th3.coeff(n) == count);
    }
  }
}
