#include "newmod/numtheory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace newmod::nt {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kTrialBound = 1'000'000;

// Primes up to the trial-division bound.
const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> table = [] {
    std::vector<std::uint64_t> out;
    std::vector<bool> composite(kTrialBound + 1, false);
    for (std::uint64_t i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return table;
}

std::uint64_t rho_factor(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = rho_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1 && m != 1) throw std::domain_error("invmod: argument is not a unit");
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                               17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization result;
  for (std::uint64_t p : small_primes()) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result.push_back({p, e});
  }
  if (n > 1) {
    std::vector<std::uint64_t> rest;
    factor_into(n, rest);
    std::sort(rest.begin(), rest.end());
    for (std::uint64_t p : rest) {
      if (!result.empty() && result.back().prime == p) {
        ++result.back().exponent;
      } else {
        result.push_back({p, 1});
      }
    }
  }
  return result;
}

std::uint64_t multiply_out(const Factorization& f) {
  std::uint64_t n = 1;
  for (const auto& [p, e] : f) {
    for (unsigned i = 0; i < e; ++i) n *= p;
  }
  return n;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  unsigned twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((a & 1) == 0) return 0;
    const std::int64_t a8 = ((a % 8) + 8) % 8;
    if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol (a/n) for odd n > 0.
  std::int64_t x = ((a % n) + n) % n;
  std::int64_t y = n;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const std::int64_t y8 = y % 8;
      if (y8 == 3 || y8 == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

SquarefreeSplit squarefree_split(std::uint64_t n) {
  SquarefreeSplit out;
  for (const auto& [p, e] : factorize(n)) {
    if (e % 2 == 1) out.n0 *= p;
    for (unsigned i = 0; i < e / 2; ++i) out.m *= p;
  }
  return out;
}

std::int64_t squarefree_part(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("squarefree_part: zero has no class");
  const auto magnitude = static_cast<std::uint64_t>(n < 0 ? -n : n);
  const auto n0 = static_cast<std::int64_t>(squarefree_split(magnitude).n0);
  return n < 0 ? -n0 : n0;
}

unsigned omega(std::uint64_t n) {
  return static_cast<unsigned>(factorize(n).size());
}

bool is_squarefree(std::uint64_t n) {
  const auto f = factorize(n);
  return std::all_of(f.begin(), f.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit), odd_composite_(limit / 2 + 1, false) {
  if (limit >= 2) primes_.push_back(2);
  for (std::uint64_t i = 3; i <= limit; i += 2) {
    if (odd_composite_[i / 2]) continue;
    primes_.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += 2 * i) odd_composite_[j / 2] = true;
  }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
  if (n > limit_) throw std::out_of_range("PrimeSieve::is_prime: beyond sieve limit");
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  return !odd_composite_[n / 2];
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

std::vector<std::uint64_t> primes_in_progression(std::int64_t a, std::uint64_t q,
                                                 std::uint64_t limit) {
  if (q == 0) throw std::invalid_argument("primes_in_progression: modulus must be positive");
  const auto qq = static_cast<std::int64_t>(q);
  const auto residue = static_cast<std::uint64_t>(((a % qq) + qq) % qq);
  if (std::gcd(residue, q) != 1) {
    throw std::invalid_argument("primes_in_progression: gcd(a, q) must be 1");
  }
  std::vector<std::uint64_t> out;
  const PrimeSieve sieve(limit);
  for (std::uint64_t p : sieve.primes()) {
    if (p % q == residue) out.push_back(p);
  }
  return out;
}

namespace {

// Counts products of `m` distinct primes from `set[start..]` whose product is <= bound.
std::uint64_t count_products(std::span<const std::uint64_t> set, std::size_t start, unsigned m,
                             std::uint64_t bound) {
  if (start >= set.size()) return 0;
  if (m == 1) {
    const auto end = std::upper_bound(set.begin(), set.end(), bound);
    const auto first = set.begin() + static_cast<std::ptrdiff_t>(start);
    return end > first ? static_cast<std::uint64_t>(end - first) : 0;
  }
  std::uint64_t total = 0;
  for (std::size_t i = start; i < set.size(); ++i) {
    const std::uint64_t p = set[i];
    // p^m > bound rules out p and every larger prime as the smallest factor.
    std::uint64_t power = 1;
    bool fits = true;
    for (unsigned j = 0; j < m; ++j) {
      if (power > bound / p) {
        fits = false;
        break;
      }
      power *= p;
    }
    if (!fits) break;
    total += count_products(set, i + 1, m - 1, bound / p);
  }
  return total;
}

}  // namespace

std::uint64_t count_pi_m(unsigned m, std::uint64_t x, const PrimePredicate& in_set) {
  if (m == 0) throw std::invalid_argument("count_pi_m: m must be positive");
  const PrimeSieve sieve(x);
  std::vector<std::uint64_t> set;
  for (std::uint64_t p : sieve.primes()) {
    if (in_set(p)) set.push_back(p);
  }
  return count_products(set, 0, m, x);
}

}  // namespace newmod::nt
