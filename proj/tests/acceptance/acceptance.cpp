// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "newmod/cusps.hpp"
#include "newmod/hecke.hpp"
#include "newmod/newman.hpp"
#include "newmod/numtheory.hpp"
#include "newmod/partitions.hpp"

using namespace newmod;
using qs::Residue;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(const std::string& id, const std::string& title, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::printf("%s [%s] %s (%.2f s) %s\n", v.pass ? "PASS" : "FAIL", id.c_str(), title.c_str(),
              seconds_since(t0), v.detail.c_str());
  std::fflush(stdout);
}

Verdict ramanujan() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto v = newman::ramanujan_check(100000);
  const double s = seconds_since(t0);
  std::ostringstream d;
  d << v.size() << " violations for n <= 100000 in " << s << " s";
  return {v.empty() && s < 10.0, d.str()};
}

Verdict newman_cases() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream d;
  for (std::uint32_t m : {2u, 5u, 7u, 13u, 17u, 19u, 29u, 31u}) {
    const auto reduced = part::partition_mod(10000, m);
    const auto r = newman::census_from_values({part::PartitionSeq{}, m}, reduced);
    bool witnesses = true;
    for (std::uint32_t res = 0; res < m; ++res) {
      witnesses = witnesses && r.first_witness[res] && reduced[*r.first_witness[res]] == res;
      for (std::uint64_t n = 0; r.first_witness[res] && n < *r.first_witness[res]; ++n) {
        witnesses = witnesses && reduced[n] != res;
      }
    }
    ok = ok && r.all_residues_attained && witnesses;
    std::uint64_t latest = 0;
    for (const auto& w : r.first_witness) latest = std::max(latest, w.value_or(0));
    d << "M=" << m << (r.all_residues_attained ? " all" : " MISSING") << "(last first-witness n=" << latest
      << ") ";
  }
  const double s = seconds_since(t0);
  return {ok && s < 30.0, d.str()};
}

Verdict oracles() {
  bool ok = true;
  std::ostringstream d;
  for (std::uint32_t m : {2u, 3u, 5u, 1000003u, 2147483647u}) {
    ok = ok && part::partition_mod(2000, m) == part::partition_oracle_table(2000, m);
  }
  d << "partition DP " << (ok ? "match" : "MISMATCH");
  bool cores = true;
  for (unsigned t : {2u, 3u, 4u, 5u, 7u}) {
    const auto v = part::tcore_mod(t, 10, 1000003);
    for (unsigned n = 0; n <= 10; ++n) cores = cores && v[n] == part::tcore_oracle(t, n);
  }
  d << "; hooks " << (cores ? "match" : "MISMATCH");
  const bool phi1 = part::frobenius_mod(1, 500, 1000003) == part::partition_mod(500, 1000003);
  d << "; cphi_1 " << (phi1 ? "match" : "MISMATCH");
  // cphi_2 = theta * (two-colour DP).
  const std::uint32_t mod = 1000003;
  const auto p = part::partition_oracle_table(200, mod);
  std::vector<std::uint64_t> p2(201, 0), expected(201, 0);
  for (std::size_t i = 0; i <= 200; ++i) {
    for (std::size_t j = 0; i + j <= 200; ++j) p2[i + j] = (p2[i + j] + std::uint64_t{p[i]} * p[j]) % mod;
  }
  for (std::int64_t m = -15; m <= 15; ++m) {
    for (std::size_t n = static_cast<std::size_t>(m * m); n <= 200; ++n) {
      expected[n] = (expected[n] + p2[n - static_cast<std::size_t>(m * m)]) % mod;
    }
  }
  const auto phi2 = part::frobenius_mod(2, 200, mod);
  bool phi2_ok = true;
  for (std::size_t n = 0; n <= 200; ++n) phi2_ok = phi2_ok && phi2[n] == expected[n];
  d << "; cphi_2 " << (phi2_ok ? "match" : "MISMATCH");
  return {ok && cores && phi1 && phi2_ok, d.str()};
}

Verdict f_ell() {
  bool ok = true;
  std::ostringstream d;
  for (std::uint64_t ell : {3ull, 5ull, 7ull, 11ull, 13ull}) {
    const auto f = qs::eta_expand(hecke::f_ell_quotient(ell), 200, static_cast<std::uint32_t>(ell));
    bool one = f.coeff(0) == 1;
    for (std::int64_t n = 1; n <= 200; ++n) one = one && f.coeff(n) == 0;
    ok = ok && one;
    d << "ell=" << ell << (one ? " ok " : " BAD ");
  }
  return {ok, d.str()};
}

Verdict commutation() {
  std::mt19937_64 rng(20240611);
  const std::vector<std::uint64_t> levels{4, 8, 12, 16, 20, 28, 36, 44};
  const std::vector<std::int64_t> discs{1, -3, -4, 5, 8, -7, 12, -8, 13};
  const std::vector<std::uint64_t> ts{1, 2, 3, 5, 6, 7};
  const std::vector<std::uint64_t> ps{3, 5, 7, 11, 13};
  const std::int64_t n_out = 30;
  int cases = 0, mismatches = 0;
  while (cases < 60) {
    const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 3);
    const hecke::HeckeContext ctx{2 * k + 1, levels[rng() % levels.size()], discs[rng() % discs.size()]};
    const auto p = ps[rng() % ps.size()];
    if (ctx.level % p == 0) continue;
    const auto t = ts[rng() % ts.size()];
    const auto mod = static_cast<std::uint32_t>(2 + rng() % 2000000000u);
    const auto np = static_cast<std::uint64_t>(n_out) * p;
    const auto reach = static_cast<std::int64_t>(t * np * np) + 1;
    std::vector<Residue> a(static_cast<std::size_t>(reach));
    for (auto& x : a) x = static_cast<Residue>(rng() % mod);
    const auto f = qs::QSeries::from_residues(mod, std::move(a));
    const auto lhs = hecke::shimura_lift(hecke::hecke_half(f, ctx, p), ctx, t, n_out);
    const auto rhs = hecke::hecke_integral(
        hecke::shimura_lift(f, ctx, t, static_cast<std::int64_t>(np)), hecke::shimura_context(ctx), p, n_out);
    if (lhs.dense(0, n_out) != rhs.dense(0, n_out)) ++mismatches;
    ++cases;
  }
  std::ostringstream d;
  d << cases << " random cases, " << n_out << " output coefficients each, " << mismatches << " mismatches";
  return {mismatches == 0, d.str()};
}

Verdict twists() {
  std::mt19937_64 rng(99);
  bool ok = true;
  std::ostringstream d;
  const std::vector<std::pair<std::uint64_t, unsigned>> cases{{3, 1}, {5, 1}, {5, 2}, {7, 1}};
  for (const auto& [ell, e] : cases) {
    std::uint32_t mod = 1;
    for (unsigned i = 0; i < e; ++i) mod *= static_cast<std::uint32_t>(ell);
    // Partition generating function 1/eta(24z) and a random stream.
    std::vector<qs::QSeries> inputs{qs::eta_expand(qs::EtaQuotient::parse("24:-1"), 120, mod)};
    std::vector<Residue> a(130);
    for (auto& x : a) x = static_cast<Residue>(rng() % mod);
    inputs.push_back(qs::QSeries::from_residues(mod, a));
    bool pair_ok = true;
    for (const auto& f : inputs) {
      const auto hol = hecke::build_f_ell_holomorphic(f, ell, e);
      for (std::int64_t n = 0; n <= 100; ++n) {
        const Residue want = n % static_cast<std::int64_t>(ell) != 0 ? f.coeff(n) : 0;
        pair_ok = pair_ok && hol.coeff(n) == want;
      }
      for (std::int64_t r1 : {1, -1, 2}) {
        const auto tre = hecke::build_f_ell_treneer(f, ell, e, r1);
        for (std::int64_t n = 0; n <= 100; ++n) {
          const bool keep = nt::kronecker(r1 * n, static_cast<std::int64_t>(ell)) == -1;
          pair_ok = pair_ok && tre.coeff(n) == (keep ? f.coeff(n) : 0u);
        }
      }
    }
    ok = ok && pair_ok;
    d << "(" << ell << "," << e << ")" << (pair_ok ? " ok " : " BAD ");
  }
  return {ok, d.str()};
}

Verdict synthetic() {
  bool ok = true;
  std::ostringstream d;
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> seeds{{3, 13}, {5, 41}, {7, 29}};
  for (const auto& [ell, p] : seeds) {
    const auto s = newman::synthetic_eigenform(ell, p, 10000, 1);
    newman::PrimeSearchParams params;
    params.n0 = s.n0;
    params.progression_modulus = 4 * ell;
    params.p_max = p;
    params.n_check = 10000 / static_cast<std::int64_t>(p * p);
    const auto r = newman::prime_search({{ell, 1, s.form, s.ctx, 2}}, params);
    const auto coeffs = s.form.dense(0, s.form.integer_reach());
    const auto rec = newman::recurrence_check(coeffs, s.n0, p, static_cast<std::uint32_t>(ell),
                                              newman::RecurrenceMode::kHalf, 1);
    const bool this_ok = r.found && r.p == p && rec.size() == 2 && rec[1].consistent;
    ok = ok && this_ok;
    d << "ell=" << ell << " p=" << (r.found ? std::to_string(r.p) : "none") << " n0=" << s.n0
      << " a(n0 p^2)=" << rec[1].lhs << " 3a(n0)=" << rec[1].rhs << "; ";
  }
  return {ok, d.str()};
}

Verdict density() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto in_a = [](std::uint64_t p) { return p % 4 == 1; };
  const auto t1 = newman::density_experiment(in_a, "p = 1 mod 4", 0.5, 1, {1000000});
  const auto t2 = newman::density_experiment(in_a, "p = 1 mod 4", 0.5, 2, {1000000});
  const double r1 = t1.rows.at(0).ratio, r2 = t2.rows.at(0).ratio;
  const double s = seconds_since(t0);
  std::ostringstream d;
  // pi_2 converges to d^2 only like 1/log log X; an independent sieve gives 0.1641 here.
  d << "pi_1 ratio " << r1 << " (want 0.50 +- 0.02), pi_2 ratio " << r2
    << " (want 0.25 +- 0.03) at X=10^6";
  return {std::abs(r1 - 0.5) <= 0.02 && std::abs(r2 - 0.25) <= 0.03 && s < 60.0, d.str()};
}

Verdict bd() {
  const auto base = newman::bd_census(1, 100);
  bool ok = base == newman::BdCounts{35, 25};
  const std::uint64_t x = 10000;
  std::vector<unsigned> omega(x + 1, 0);
  std::vector<bool> sqfree(x + 1, true);
  for (std::uint64_t p = 2; p <= x; ++p) {
    if (omega[p] != 0) continue;  // composite: already hit by a smaller prime
    for (std::uint64_t m = p; m <= x; m += p) ++omega[m];
    for (std::uint64_t m = p * p; m <= x; m += p * p) sqfree[m] = false;
  }
  for (unsigned d = 1; d <= 3; ++d) {
    for (std::uint64_t lim : {100ull, 1000ull, 10000ull}) {
      newman::BdCounts brute;
      for (std::uint64_t n = 2; n <= lim; ++n) {
        if (omega[n] != d) continue;
        ++brute.all;
        brute.squarefree += sqfree[n] ? 1 : 0;
      }
      ok = ok && newman::bd_census(d, lim) == brute;
    }
  }
  std::ostringstream d;
  d << "(d=1, X=100) -> (" << base.all << ", " << base.squarefree << "); brute force d<=3, X<=10^4 "
    << (ok ? "agrees" : "DISAGREES");
  return {ok, d.str()};
}

Verdict cusp_analysis() {
  const auto omega = cusps::omega_set(qs::EtaQuotient::parse("24:-1"), 576);
  bool ok = omega.representatives == std::vector<std::int64_t>{-1} && omega.s == 1 && omega.complete;
  const auto delta24 = qs::EtaQuotient::parse("24:24");
  bool exps = true;
  for (std::uint64_t c = 1; c <= 576; ++c) {
    if (576 % c != 0) continue;
    const auto g = static_cast<std::int64_t>(std::gcd(c, std::uint64_t{24}));
    exps = exps && cusps::eta_cusp_order(delta24, 576, c).leading_exponent == cusps::Rational(g * g, 24);
  }
  const auto val = cusps::valence_check(qs::EtaQuotient::parse("1:24"), 1);
  std::ostringstream d;
  d << "Omega(1/eta(24z)) s=" << omega.s << "; Delta(24z) exponents " << (exps ? "match" : "MISMATCH")
    << "; valence " << (val.holds ? "holds" : "FAILS");
  return {ok && exps && val.holds, d.str()};
}

Verdict gauss() {
  const auto s = cusps::gauss_sweep(48, 24, 5, 1e-6);
  std::ostringstream d;
  d << s.cases << " cases, " << s.nonvanishing << " nonvanishing, " << s.counterexamples
    << " counterexamples, " << s.disagreements << " disagreements, " << s.factorization_mismatches
    << " factorization mismatches";
  return {s.counterexamples == 0 && s.disagreements == 0 && s.factorization_mismatches == 0, d.str()};
}

Verdict tcore_div() {
  const auto v = newman::tcore_divisibility_check(10000);
  std::ostringstream d;
  d << v.size() << " violations for even 2 < t <= 10^4";
  return {v.empty(), d.str()};
}

Verdict performance() {
  auto t0 = std::chrono::steady_clock::now();
  const auto values = part::partition_mod(1000000, 5);
  const double s1 = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto r = newman::census({part::PartitionSeq{}, 5}, 1000000);
  const double s2 = seconds_since(t0);
  std::ostringstream d;
  d << "partition_mod(10^6, 5) " << s1 << " s; census(10^6) " << s2 << " s; p(10^6) mod 5 = "
    << values.back();
  return {s1 < 30.0 && s2 < 60.0 && r.counts.size() == 5, d.str()};
}

Verdict certificates() {
  std::vector<std::uint32_t> missing;
  std::uint64_t largest_j = 0;
  int count = 0;
  for (std::uint32_t m = 1; m <= 200; ++m) {
    if (std::gcd(m, 6u) != 1) continue;
    ++count;
    const auto cert = newman::certify_M_partition(m, 10000);
    if (!cert.found) {
      missing.push_back(m);
    } else {
      largest_j = std::max(largest_j, cert.j);
    }
  }
  std::ostringstream d;
  d << count << " moduli, " << missing.size() << " without certificate";
  if (!missing.empty()) {
    d << " (";
    for (auto m : missing) d << m << " ";
    d << ")";
  }
  d << "; largest witness index j=" << largest_j;
  return {missing.empty(), d.str()};
}

}  // namespace

int main() {
  report("1", "Ramanujan congruences", ramanujan);
  report("2", "residue census for M in {2,5,7,13,17,19,29,31}", newman_cases);
  report("3", "oracle equivalences", oracles);
  report("4", "F_ell = 1 mod ell", f_ell);
  report("5", "Shimura-Hecke commutation", commutation);
  report("6", "twist-construction congruences", twists);
  report("7", "synthetic eigen pipeline", synthetic);
  report("8", "density ratios at X = 10^6", density);
  report("9", "B_d census", bd);
  report("10", "cusp analysis", cusp_analysis);
  report("11", "Gauss-sum vanishing criterion", gauss);
  report("12", "t-core divisibility", tcore_div);
  report("13", "performance", performance);
  report("cert", "certificates for M <= 200 coprime to 6", certificates);
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "SOME FAIL", failures);
  return failures == 0 ? 0 : 1;
}
