#pragma once

// Exact 64-bit integer number theory: primality, factorization, Kronecker
// symbols, squarefree parts, primes in progressions and almost-prime counts.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace newmod::nt {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime powers sorted by ascending prime. The empty list is the factorization of 1.
using Factorization = std::vector<PrimePower>;

/// n = n0 * m^2 with n0 squarefree.
struct SquarefreeSplit {
  std::uint64_t n0 = 1;
  std::uint64_t m = 1;

  friend bool operator==(const SquarefreeSplit&, const SquarefreeSplit&) = default;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Deterministic Miller-Rabin; the witness set {2, ..., 37} is exact for all 64-bit n.
bool is_prime(std::uint64_t n);

/// Trial division to 10^6, then Brent's variant of Pollard rho with fixed seeds.
Factorization factorize(std::uint64_t n);

std::uint64_t multiply_out(const Factorization& f);

/// Full Kronecker symbol (a/n), defined for every pair of integers.
int kronecker(std::int64_t a, std::int64_t n);

SquarefreeSplit squarefree_split(std::uint64_t n);

/// Squarefree kernel class of a nonzero integer, sign preserved: -12 -> -3.
std::int64_t squarefree_part(std::int64_t n);

/// Number of distinct prime divisors.
unsigned omega(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

/// Primes p <= limit with p = a (mod q), ascending. Throws std::invalid_argument
/// when gcd(a, q) != 1 or q == 0.
std::vector<std::uint64_t> primes_in_progression(std::int64_t a, std::uint64_t q,
                                                 std::uint64_t limit);

/// Immutable prime table up to a fixed bound (sieve of Eratosthenes, odd-only bitmap).
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  bool is_prime(std::uint64_t n) const;
  const std::vector<std::uint64_t>& primes() const { return primes_; }

 private:
  std::uint64_t limit_;
  std::vector<bool> odd_composite_;
  std::vector<std::uint64_t> primes_;
};

/// Smallest-prime-factor table for [0, limit]; spf[0] = spf[1] = 0.
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit);

using PrimePredicate = std::function<bool(std::uint64_t)>;

/// pi_{m,A}(X): the number of products p_1 * ... * p_m <= X of m distinct primes,
/// each satisfying `in_set`.
std::uint64_t count_pi_m(unsigned m, std::uint64_t x, const PrimePredicate& in_set);

}  // namespace newmod::nt
