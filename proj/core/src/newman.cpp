#include "newmod/newman.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace newmod::newman {

namespace {

// Census tables hold one counter per residue.
constexpr std::uint32_t kCensusModulusLimit = 1u << 20;

std::uint64_t count_valid(const std::vector<std::uint64_t>& counts) {
  return static_cast<std::uint64_t>(
      std::count_if(counts.begin(), counts.end(), [](std::uint64_t c) { return c > 0; }));
}

double centered_rms(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace

CensusReport census_from_values(const part::SequenceSpec& spec, std::span<const Residue> values) {
  spec.validate();
  if (spec.modulus > kCensusModulusLimit) {
    throw std::invalid_argument("census: modulus above " + std::to_string(kCensusModulusLimit));
  }
  if (values.empty()) throw std::invalid_argument("census: empty stream");
  const std::uint64_t x = values.size() - 1;
  CensusReport report;
  report.spec = spec;
  report.x = x;
  report.counts.assign(spec.modulus, 0);
  report.first_witness.assign(spec.modulus, std::nullopt);

  std::vector<std::uint64_t> marks;
  for (std::uint64_t v = x; v >= 1 && marks.size() < 16; v /= 2) marks.push_back(v);
  std::reverse(marks.begin(), marks.end());
  std::size_t next = 0;

  for (std::uint64_t n = 0; n <= x; ++n) {
    const Residue r = values[n];
    if (r >= spec.modulus) throw std::invalid_argument("census: residue out of range");
    if (report.counts[r]++ == 0) report.first_witness[r] = n;
    if (next < marks.size() && marks[next] == n) {
      report.checkpoints.push_back({n, report.counts});
      ++next;
    }
  }
  if (report.checkpoints.empty() || report.checkpoints.back().x != x) {
    report.checkpoints.push_back({x, report.counts});
  }
  report.all_residues_attained = count_valid(report.counts) == spec.modulus;
  return report;
}

CensusReport census(const part::SequenceSpec& spec, std::uint64_t x) {
  if (x < 1) throw std::invalid_argument("census: X must be >= 1");
  spec.validate();
  if (spec.modulus > kCensusModulusLimit) {
    throw std::invalid_argument("census: modulus above " + std::to_string(kCensusModulusLimit));
  }
  const auto values = part::stream(spec, x);
  return census_from_values(spec, values);
}

CensusReport frobenius_census(unsigned h, std::uint32_t modulus, std::uint64_t x) {
  if (h < 2) throw std::invalid_argument("frobenius_census: h must be >= 2 (h = 1 is p(n))");
  return census(part::SequenceSpec{part::FrobeniusSeq{h}, modulus}, x);
}

GrowthDiagnostic growth_diagnostic(const CensusReport& report) {
  if (report.checkpoints.size() < 4) {
    throw std::invalid_argument("growth_diagnostic: needs at least 4 checkpoints");
  }
  GrowthDiagnostic out;
  for (std::uint32_t r = 0; r < report.counts.size(); ++r) {
    ResidueFit fit;
    fit.residue = r;
    std::vector<double> lx, lc;
    for (const auto& cp : report.checkpoints) {
      if (cp.x < 2 || cp.counts[r] == 0) continue;
      lx.push_back(std::log(static_cast<double>(cp.x)));
      lc.push_back(std::log(static_cast<double>(cp.counts[r])));
    }
    if (lx.size() < 2) {
      fit.degenerate = true;
      out.fits.push_back(fit);
      continue;
    }
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(lc.begin(), lc.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (lc[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) {
      fit.degenerate = true;
      out.fits.push_back(fit);
      continue;
    }
    fit.exponent = sxy / sxx;
    std::vector<double> resid, vs_linear, vs_sqrt_log;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      resid.push_back(lc[i] - my - fit.exponent * (lx[i] - mx));
      vs_linear.push_back(lc[i] - lx[i]);
      vs_sqrt_log.push_back(lc[i] - (0.5 * lx[i] - std::log(lx[i])));
    }
    fit.residual = centered_rms(resid);
    fit.residual_linear = centered_rms(vs_linear);
    fit.residual_sqrt_log = centered_rms(vs_sqrt_log);
    fit.closer = fit.residual_linear <= fit.residual_sqrt_log ? "linear" : "sqrt_over_log";
    out.fits.push_back(fit);
  }
  return out;
}

std::vector<CongruenceViolation> ramanujan_check_values(std::span<const Residue> p_mod_385,
                                                        std::uint64_t x) {
  struct Rule {
    std::uint32_t ell;
    std::uint64_t shift;
  };
  static constexpr Rule kRules[] = {{5, 4}, {7, 5}, {11, 6}};
  std::vector<CongruenceViolation> out;
  for (const auto& rule : kRules) {
    for (std::uint64_t n = 0; n <= x; ++n) {
      const std::uint64_t idx = rule.ell * n + rule.shift;
      if (idx >= p_mod_385.size()) {
        throw qs::InsufficientReach("ramanujan_check: table ends before p(" +
                                    std::to_string(idx) + ")");
      }
      const Residue r = p_mod_385[idx] % rule.ell;
      if (r != 0) out.push_back({rule.ell, n, idx, r});
    }
  }
  return out;
}

std::vector<CongruenceViolation> ramanujan_check(std::uint64_t x) {
  if (x < 1) throw std::invalid_argument("ramanujan_check: X must be >= 1");
  const auto table = part::partition_mod(11 * x + 6, 5 * 7 * 11);
  return ramanujan_check_values(table, x);
}

SyntheticEigenform synthetic_eigenform(std::uint64_t ell, std::uint64_t p, std::int64_t reach,
                                       std::uint64_t seed, std::int64_t k,
                                       std::optional<std::uint64_t> n0) {
  if (ell < 3 || !nt::is_prime(ell)) throw std::invalid_argument("synthetic: ell must be an odd prime");
  if (p < 3 || !nt::is_prime(p)) throw std::invalid_argument("synthetic: p must be an odd prime");
  if (k < 1) throw std::invalid_argument("synthetic: k must be >= 1");
  if (reach < 1) throw std::invalid_argument("synthetic: reach must be >= 1");
  const hecke::HeckeContext ctx{2 * k + 1, 4, 1};
  std::uint64_t base = 0;
  if (n0) {
    base = *n0;
  } else {
    for (std::uint64_t c = 3;; ++c) {
      if (nt::is_squarefree(c) && ctx.level % c != 0 &&
          nt::kronecker(static_cast<std::int64_t>(c), static_cast<std::int64_t>(p)) == -1) {
        base = c;
        break;
      }
    }
  }
  if (base == 0 || base >= static_cast<std::uint64_t>(reach)) {
    throw std::invalid_argument("synthetic: n0 must lie in [1, reach)");
  }
  const auto mod = static_cast<std::uint32_t>(ell);
  const auto p2 = static_cast<std::int64_t>(p * p);
  const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
  const int chi_p = ctx.chi(p);
  const std::uint64_t pk1 = nt::powmod(p, static_cast<std::uint64_t>(k - 1), mod);
  const std::uint64_t last =
      nt::mulmod(static_cast<std::uint64_t>(chi_p * chi_p),
                 nt::powmod(p, static_cast<std::uint64_t>(2 * k - 1), mod), mod);

  if (static_cast<std::int64_t>(base) % p2 == 0) {
    throw std::invalid_argument("synthetic: p^2 divides n0");
  }

  std::mt19937_64 rng(seed);
  std::vector<Residue> a(static_cast<std::size_t>(reach), 0);
  for (std::int64_t n = 1; n < reach; ++n) {
    if (n % p2 != 0) {
      const auto r = static_cast<Residue>(rng() % mod);
      a[static_cast<std::size_t>(n)] = n == static_cast<std::int64_t>(base) ? 1 : r;
      continue;
    }
    // a(p^2 m) = (2 - c_m) a(m) - chi(p)^2 p^(2k-1) a(m/p^2).
    const std::int64_t m = n / p2;
    const int sym = chi_p * nt::kronecker(sign * m, static_cast<std::int64_t>(p));
    const std::uint64_t cm = sym == 0 ? 0 : (sym > 0 ? pk1 : (mod - pk1) % mod);
    std::uint64_t v = nt::mulmod((2 + mod - cm) % mod, a[static_cast<std::size_t>(m)], mod);
    if (m % p2 == 0) {
      v = (v + mod - nt::mulmod(last, a[static_cast<std::size_t>(m / p2)], mod)) % mod;
    }
    a[static_cast<std::size_t>(n)] = static_cast<Residue>(v);
  }
  return SyntheticEigenform{ell, p, base, ctx, qs::QSeries::from_residues(mod, std::move(a))};
}

PrimeSearchResult prime_search(const std::vector<SearchTarget>& targets,
                               const PrimeSearchParams& params) {
  const auto start = std::chrono::steady_clock::now();
  if (targets.empty()) throw std::invalid_argument("prime_search: no targets");
  if (params.progression_modulus == 0) {
    throw std::invalid_argument("prime_search: progression modulus must be positive");
  }
  if (params.n_check < 1) throw std::invalid_argument("prime_search: N_check must be >= 1");
  if (params.n0 == 0) throw std::invalid_argument("prime_search: n0 must be positive");
  std::int64_t reach = std::numeric_limits<std::int64_t>::max();
  for (const auto& t : targets) {
    t.ctx.validate();
    reach = std::min(reach, t.form.integer_reach());
  }
  const auto pm = static_cast<std::int64_t>(params.p_max);
  if (pm > 0 && (pm > reach || pm * pm > reach / params.n_check)) {
    throw TruncationBudget("prime_search: reach " + std::to_string(reach) +
                           " is below p_max^2 * N_check = " + std::to_string(pm) + "^2 * " +
                           std::to_string(params.n_check));
  }
  PrimeSearchResult result;
  result.truncation = reach;
  result.n_check = params.n_check;
  result.progression_modulus = params.progression_modulus;
  result.last_candidate = params.resume_after;

  const auto candidates = nt::primes_in_progression(1, params.progression_modulus, params.p_max);
  for (std::uint64_t p : candidates) {
    if (p <= params.resume_after) continue;
    ++result.candidates_examined;
    result.last_candidate = p;
    bool admissible = p % 2 == 1;
    for (const auto& t : targets) admissible = admissible && t.ctx.level % p != 0;
    const int sym = nt::kronecker(static_cast<std::int64_t>(params.n0), static_cast<std::int64_t>(p));
    if (!admissible || sym != -1) {
      if (params.on_candidate) params.on_candidate(p);
      continue;
    }
    std::vector<hecke::HeckeReport> reports;
    bool all = true;
    for (const auto& t : targets) {
      std::uint64_t mod = 1;
      for (unsigned i = 0; i < t.e; ++i) mod *= t.ell;
      reports.push_back(hecke::eigencongruence_check(t.form, t.ctx, p, t.lambda,
                                                     static_cast<std::uint32_t>(mod),
                                                     params.n_check));
      if (!reports.back().consistent) {
        all = false;
        break;
      }
    }
    if (params.on_candidate) params.on_candidate(p);
    if (!all) continue;
    result.found = true;
    result.p = p;
    result.kronecker_check = sym;
    result.hecke_reports = std::move(reports);
    for (const auto& t : targets) {
      std::uint64_t strict = 2 * t.ctx.level;
      for (unsigned i = 0; i < t.e + 2; ++i) strict *= t.ell;
      result.satisfied.push_back(
          {t.ell, t.e, params.progression_modulus, strict, p % strict == 1});
    }
    break;
  }
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<RecurrenceVerdict> recurrence_check(std::span<const Residue> a, std::uint64_t n0,
                                                std::uint64_t p, std::uint32_t modulus,
                                                RecurrenceMode mode, unsigned e_max) {
  qs::check_modulus(modulus);
  if (n0 == 0 || p < 2) throw std::invalid_argument("recurrence_check: need n0 >= 1 and p >= 2");
  const std::uint64_t step = mode == RecurrenceMode::kHalf ? p * p : p;
  std::vector<RecurrenceVerdict> out;
  std::uint64_t index = n0;
  if (n0 >= a.size()) throw qs::InsufficientReach("recurrence_check: n0 beyond the stream");
  const std::uint64_t base = a[n0] % modulus;
  for (unsigned e = 0; e <= e_max; ++e) {
    if (e > 0) {
      if (index > (a.size() - 1) / step) {
        throw qs::InsufficientReach("recurrence_check: a(" + std::to_string(n0) + " p^" +
                                    std::to_string(mode == RecurrenceMode::kHalf ? 2 * e : e) +
                                    ") beyond the stream");
      }
      index *= step;
    }
    const std::uint64_t factor = mode == RecurrenceMode::kHalf ? 2 * e + 1 : e + 1;
    RecurrenceVerdict v;
    v.e = e;
    v.index = index;
    v.lhs = a[index] % modulus;
    v.rhs = static_cast<Residue>(nt::mulmod(factor % modulus, base, modulus));
    v.consistent = v.lhs == v.rhs;
    out.push_back(v);
  }
  return out;
}

MCertificate certify_M_partition(std::uint32_t modulus, std::uint64_t x_search) {
  qs::check_modulus(modulus);
  if (std::gcd(modulus, 6u) != 1) {
    throw std::invalid_argument("certify: M must be coprime to 6");
  }
  if (x_search < 1) throw std::invalid_argument("certify: X_search must be >= 1");
  MCertificate cert;
  cert.modulus = modulus;
  cert.x_search = x_search;
  cert.note =
      "sufficient condition on a single index n; the further existence of a suitable "
      "Hecke prime p is not computed here";
  std::vector<std::uint64_t> ells;
  std::uint32_t radical = 1;
  for (const auto& [ell, e] : nt::factorize(modulus)) {
    ells.push_back(ell);
    radical *= static_cast<std::uint32_t>(ell);
  }
  const auto p = part::partition_mod(x_search, radical);
  for (std::uint64_t j = 1; j <= x_search; ++j) {
    const std::uint64_t n = 24 * j - 1;
    const auto split = nt::squarefree_split(n);
    if (576 % split.n0 == 0) continue;
    std::vector<CertificatePrime> primes;
    bool ok = true;
    for (std::uint64_t ell : ells) {
      const int sym = nt::kronecker(-static_cast<std::int64_t>(n), static_cast<std::int64_t>(ell));
      const Residue r = p[j] % static_cast<Residue>(ell);
      if (sym != -1 || r == 0) {
        ok = false;
        break;
      }
      primes.push_back({ell, sym, r});
    }
    if (!ok) continue;
    cert.found = true;
    cert.n = n;
    cert.j = j;
    cert.n0 = split.n0;
    cert.m = split.m;
    cert.primes = std::move(primes);
    break;
  }
  return cert;
}

std::vector<TCoreViolation> tcore_divisibility_check(std::uint64_t t_max) {
  if (t_max < 4) throw std::invalid_argument("tcore_divisibility_check: t_max must be >= 4");
  std::vector<TCoreViolation> out;
  for (std::uint64_t t = 4; t <= t_max; t += 2) {
    const std::uint64_t n0 = nt::squarefree_split(t * t - 1).n0;
    const std::uint64_t n1 = nt::squarefree_split(t * t + 23).n0;
    const std::uint64_t bound = 576 * t;
    if (bound % n0 == 0 && bound % n1 == 0) out.push_back({t, n0, n1});
  }
  return out;
}

DensityTable density_experiment(const nt::PrimePredicate& in_set, const std::string& label,
                                double density, unsigned m, const std::vector<std::uint64_t>& xs) {
  if (m < 1) throw std::invalid_argument("density_experiment: m must be >= 1");
  if (density < 0.0 || density > 1.0) {
    throw std::invalid_argument("density_experiment: density must lie in [0, 1]");
  }
  DensityTable table;
  table.m = m;
  table.predicate = label;
  table.density = density;
  table.target = std::pow(density, m);
  const nt::PrimePredicate all = [](std::uint64_t) { return true; };
  for (std::uint64_t x : xs) {
    if (x < 1) throw std::invalid_argument("density_experiment: X must be >= 1");
    DensityRow row;
    row.x = x;
    row.count_a = nt::count_pi_m(m, x, in_set);
    row.count_all = nt::count_pi_m(m, x, all);
    row.ratio = row.count_all == 0 ? 0.0
                                   : static_cast<double>(row.count_a) /
                                         static_cast<double>(row.count_all);
    table.rows.push_back(row);
  }
  return table;
}

BdCounts bd_census(unsigned d, std::uint64_t x) {
  if (d < 1) throw std::invalid_argument("bd_census: d must be >= 1");
  if (x > std::numeric_limits<std::uint32_t>::max() - 1) {
    throw std::invalid_argument("bd_census: X too large");
  }
  const auto spf = nt::smallest_prime_factors(static_cast<std::uint32_t>(x));
  BdCounts out;
  for (std::uint64_t n = 2; n <= x; ++n) {
    unsigned distinct = 0;
    bool squarefree = true;
    std::uint64_t r = n;
    while (r > 1) {
      const std::uint64_t q = spf[r];
      unsigned e = 0;
      while (r % q == 0) {
        r /= q;
        ++e;
      }
      ++distinct;
      if (e > 1) squarefree = false;
    }
    if (distinct != d) continue;
    ++out.all;
    if (squarefree) ++out.squarefree;
  }
  return out;
}

}  // namespace newmod::newman
