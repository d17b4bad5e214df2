#include "newmod/partitions.hpp"

#include <stdexcept>

namespace newmod::part {

void SequenceSpec::validate() const {
  qs::check_modulus(modulus);
  if (const auto* tc = std::get_if<TCoreSeq>(&variant); tc && tc->t < 2) {
    throw std::invalid_argument("t-core sequence needs t >= 2");
  }
  if (const auto* fr = std::get_if<FrobeniusSeq>(&variant); fr && fr->h < 1) {
    throw std::invalid_argument("Frobenius sequence needs h >= 1");
  }
  if (const auto* eq = std::get_if<EtaQuotientSeq>(&variant)) {
    if (eq->quotient.offset_num() % qs::kUnitsPerQ != 0) {
      throw std::invalid_argument("eta quotient stream needs an integral leading exponent");
    }
  }
}

std::string SequenceSpec::label() const {
  struct Visitor {
    std::string operator()(const PartitionSeq&) const { return "partition"; }
    std::string operator()(const TCoreSeq& s) const { return "tcore(" + std::to_string(s.t) + ")"; }
    std::string operator()(const FrobeniusSeq& s) const {
      return "frob(" + std::to_string(s.h) + ")";
    }
    std::string operator()(const EtaQuotientSeq& s) const {
      return "eta(" + s.quotient.to_string() + ")";
    }
  };
  return std::visit(Visitor{}, variant);
}

std::vector<Residue> partition_mod(std::uint64_t x, std::uint32_t modulus) {
  qs::check_modulus(modulus);
  const std::uint64_t m = modulus;
  std::vector<Residue> p(x + 1, 0);
  p[0] = static_cast<Residue>(1 % m);
  // j-th pair of generalized pentagonal numbers j(3j-1)/2, j(3j+1)/2 carries sign (-1)^(j+1).
  std::vector<std::uint64_t> lo, hi;
  for (std::uint64_t j = 1; j * (3 * j - 1) / 2 <= x; ++j) {
    lo.push_back(j * (3 * j - 1) / 2);
    hi.push_back(j * (3 * j + 1) / 2);
  }
  for (std::uint64_t n = 1; n <= x; ++n) {
    std::uint64_t plus = 0, minus = 0;
    for (std::size_t j = 0; j < lo.size() && lo[j] <= n; ++j) {
      std::uint64_t s = p[n - lo[j]];
      if (hi[j] <= n) s += p[n - hi[j]];
      if (j % 2 == 0) {
        plus += s;
      } else {
        minus += s;
      }
    }
    p[n] = static_cast<Residue>((plus % m + m - minus % m) % m);
  }
  return p;
}

std::vector<Residue> partition_oracle_table(std::uint64_t x, std::uint32_t modulus) {
  qs::check_modulus(modulus);
  std::vector<Residue> dp(x + 1, 0);
  dp[0] = static_cast<Residue>(1 % modulus);
  for (std::uint64_t part = 1; part <= x; ++part) {
    for (std::uint64_t s = part; s <= x; ++s) {
      dp[s] = static_cast<Residue>((std::uint64_t{dp[s]} + dp[s - part]) % modulus);
    }
  }
  return dp;
}

Residue partition_oracle(std::uint64_t n, std::uint32_t modulus) {
  return partition_oracle_table(n, modulus)[n];
}

std::vector<Residue> tcore_mod(unsigned t, std::uint64_t x, std::uint32_t modulus) {
  if (t < 2) throw std::invalid_argument("tcore_mod: t must be >= 2");
  qs::check_modulus(modulus);
  const auto n = static_cast<std::int64_t>(x);
  const qs::QSeries num = qs::pow(qs::euler_product(n, modulus, t), t);
  const qs::QSeries gen = qs::div(num, qs::euler_product(n, modulus));
  return gen.dense(0, n + 1);
}

namespace {

// Hook lengths of a partition given as a weakly decreasing row list.
bool is_t_core(const std::vector<unsigned>& rows, unsigned t) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (unsigned j = 0; j < rows[i]; ++j) {
      const unsigned arm = rows[i] - j - 1;
      unsigned leg = 0;
      for (std::size_t k = i + 1; k < rows.size() && rows[k] > j; ++k) ++leg;
      if ((arm + leg + 1) % t == 0) return false;
    }
  }
  return true;
}

void enumerate(unsigned remaining, unsigned max_part, std::vector<unsigned>& rows, unsigned t,
               std::uint64_t& count) {
  if (remaining == 0) {
    if (is_t_core(rows, t)) ++count;
    return;
  }
  for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
    rows.push_back(part);
    enumerate(remaining - part, part, rows, t, count);
    rows.pop_back();
  }
}

}  // namespace

std::uint64_t tcore_oracle(unsigned t, unsigned n) {
  if (t < 1) throw std::invalid_argument("tcore_oracle: t must be positive");
  std::uint64_t count = 0;
  std::vector<unsigned> rows;
  enumerate(n, n, rows, t, count);
  return count;
}

std::vector<Residue> frobenius_mod(unsigned h, std::uint64_t x, std::uint32_t modulus) {
  if (h < 1) throw std::invalid_argument("frobenius_mod: h must be >= 1");
  qs::check_modulus(modulus);
  const auto n = static_cast<std::int64_t>(x);
  const qs::QSeries theta = qs::lattice_theta(qs::GramForm::frobenius(h), n, modulus);
  const qs::QSeries colored = qs::pow(qs::euler_product(n, modulus), h);
  return qs::div(theta, colored).dense(0, n + 1);
}

std::vector<Residue> stream(const SequenceSpec& spec, std::uint64_t x) {
  spec.validate();
  const std::uint32_t m = spec.modulus;
  struct Visitor {
    std::uint64_t x;
    std::uint32_t m;
    std::vector<Residue> operator()(const PartitionSeq&) const { return partition_mod(x, m); }
    std::vector<Residue> operator()(const TCoreSeq& s) const { return tcore_mod(s.t, x, m); }
    std::vector<Residue> operator()(const FrobeniusSeq& s) const {
      return frobenius_mod(s.h, x, m);
    }
    std::vector<Residue> operator()(const EtaQuotientSeq& s) const {
      const std::int64_t lead = s.quotient.offset_num() / qs::kUnitsPerQ;
      const auto top = static_cast<std::int64_t>(x);
      // Product part must reach q^x; a negative lead needs correspondingly more.
      const std::int64_t n_trunc = std::max<std::int64_t>(top - lead, 0);
      return qs::eta_expand(s.quotient, n_trunc, m).dense(0, top + 1);
    }
  };
  return std::visit(Visitor{x, m}, spec.variant);
}

}  // namespace newmod::part
