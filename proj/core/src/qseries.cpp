#include "newmod/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "newmod/numtheory.hpp"

namespace newmod::qs {

namespace {

constexpr std::uint64_t kLazyLimit = std::uint64_t{1} << 63;

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  const std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

Residue neg_mod(Residue x, std::uint32_t m) { return x == 0 ? 0 : m - x; }

void require_same_modulus(const QSeries& f, const QSeries& g) {
  if (f.modulus() != g.modulus()) {
    throw ModulusMismatch("q-series moduli differ: " + std::to_string(f.modulus()) + " vs " +
                          std::to_string(g.modulus()));
  }
}

// Coefficients of f on the lattice offset + i*step for i < count (step divides f's lattice).
std::vector<Residue> sample(const QSeries& f, std::int64_t offset, std::int64_t step,
                            std::int64_t count) {
  std::vector<Residue> out(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)), 0);
  if (f.is_zero()) return out;
  const std::int64_t ratio = f.step() / step;
  const std::int64_t first = (f.offset_num() - offset) / step;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::int64_t idx = first + static_cast<std::int64_t>(i) * ratio;
    if (idx >= 0 && idx < count) out[static_cast<std::size_t>(idx)] = f.coeffs()[i];
  }
  return out;
}

std::size_t count_nonzero(std::span<const Residue> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Residue x) { return x != 0; }));
}

// Truncated product out[k] = sum_{i+j=k} a[i] b[j] for k < n_out. Rows run over the
// nonzero entries of `rows`, so a sparse `rows` costs O(nnz * n_out).
std::vector<Residue> schoolbook(std::span<const Residue> rows, std::span<const Residue> cols,
                                std::size_t n_out, std::uint32_t m) {
  std::vector<std::uint64_t> acc(n_out, 0);
  unsigned pending = 0;
  std::size_t low_water = n_out;
  const std::size_t nr = std::min(rows.size(), n_out);
  for (std::size_t i = 0; i < nr; ++i) {
    const std::uint64_t ai = rows[i];
    if (ai == 0) continue;
    const std::size_t span = std::min(cols.size(), n_out - i);
    std::uint64_t* out = acc.data() + i;
    for (std::size_t j = 0; j < span; ++j) out[j] += ai * cols[j];
    low_water = std::min(low_water, i);
    // Each row adds < 2^62 per slot; three rows stay below 2^64.
    if (++pending == 3) {
      for (std::size_t k = low_water; k < n_out; ++k) acc[k] %= m;
      pending = 0;
      low_water = n_out;
    }
  }
  std::vector<Residue> out(n_out);
  for (std::size_t k = 0; k < n_out; ++k) out[k] = static_cast<Residue>(acc[k] % m);
  return out;
}

constexpr std::size_t kKaratsubaBase = 48;

// Full product of a[0..n) and b[0..n) into out[0..2n-1), residues mod m.
void karatsuba(const Residue* a, const Residue* b, std::size_t n, Residue* out, std::uint32_t m) {
  if (n <= kKaratsubaBase) {
    auto prod = schoolbook({a, n}, {b, n}, 2 * n - 1, m);
    std::copy(prod.begin(), prod.end(), out);
    return;
  }
  const std::size_t lo = n / 2;
  const std::size_t hi = n - lo;
  // z0 = a_lo*b_lo lands in out[0, 2lo-1), z2 = a_hi*b_hi in out[2lo, 2n-1).
  std::fill(out, out + 2 * n - 1, 0);
  karatsuba(a, b, lo, out, m);
  karatsuba(a + lo, b + lo, hi, out + 2 * lo, m);

  std::vector<Residue> sa(hi), sb(hi), z1(2 * hi - 1);
  for (std::size_t i = 0; i < hi; ++i) {
    const std::uint64_t x = (i < lo ? a[i] : 0) + std::uint64_t{a[lo + i]};
    const std::uint64_t y = (i < lo ? b[i] : 0) + std::uint64_t{b[lo + i]};
    sa[i] = static_cast<Residue>(x % m);
    sb[i] = static_cast<Residue>(y % m);
  }
  karatsuba(sa.data(), sb.data(), hi, z1.data(), m);
  for (std::size_t i = 0; i < 2 * lo - 1; ++i) z1[i] = (z1[i] + m - out[i]) % m;
  for (std::size_t i = 0; i < 2 * hi - 1; ++i) z1[i] = (z1[i] + m - out[2 * lo + i]) % m;
  for (std::size_t i = 0; i < 2 * hi - 1; ++i) {
    out[lo + i] = static_cast<Residue>((std::uint64_t{out[lo + i]} + z1[i]) % m);
  }
}

std::vector<Residue> convolve(std::span<const Residue> a, std::span<const Residue> b,
                              std::size_t n_out, std::uint32_t m, MulAlgorithm algo) {
  a = a.first(std::min(a.size(), n_out));
  b = b.first(std::min(b.size(), n_out));
  if (n_out == 0) return {};
  const std::size_t nza = count_nonzero(a);
  const std::size_t nzb = count_nonzero(b);
  const bool a_sparser = nza <= nzb;
  const bool sparse = std::min(nza, nzb) * 8 < n_out;
  if (algo == MulAlgorithm::kSchoolbook ||
      (algo == MulAlgorithm::kAuto && (sparse || n_out < 96))) {
    return a_sparser ? schoolbook(a, b, n_out, m) : schoolbook(b, a, n_out, m);
  }
  std::vector<Residue> pa(n_out, 0), pb(n_out, 0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  std::vector<Residue> full(2 * n_out - 1);
  karatsuba(pa.data(), pb.data(), n_out, full.data(), m);
  full.resize(n_out);
  return full;
}

struct Lattice {
  std::int64_t offset;
  std::int64_t step;
  std::int64_t count;
};

// Common lattice for sums: covers both operands' supports, ends at the smaller reach.
Lattice additive_lattice(const QSeries& f, const QSeries& g) {
  std::int64_t step = std::gcd(f.step(), g.step());
  step = std::gcd(step, std::abs(f.offset_num() - g.offset_num()));
  if (step == 0) step = f.step();
  const std::int64_t offset = std::min(f.offset_num(), g.offset_num());
  const std::int64_t end = std::min(f.end_num(), g.end_num());
  const std::int64_t count = end > offset ? ceil_div(end - offset, step) : 0;
  return {offset, step, count};
}

QSeries combine(const QSeries& f, const QSeries& g, bool subtract) {
  require_same_modulus(f, g);
  const std::uint32_t m = f.modulus();
  const Lattice lat = additive_lattice(f, g);
  if (lat.count == 0) return QSeries::zero(m, std::min(f.end_num(), g.end_num()));
  auto a = sample(f, lat.offset, lat.step, lat.count);
  const auto b = sample(g, lat.offset, lat.step, lat.count);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Residue rhs = subtract ? neg_mod(b[i], m) : b[i];
    a[i] = static_cast<Residue>((std::uint64_t{a[i]} + rhs) % m);
  }
  return QSeries(m, lat.offset, lat.step, std::move(a));
}

}  // namespace

void check_modulus(std::uint64_t modulus) {
  if (modulus == 0 || modulus >= kModulusLimit) {
    throw std::invalid_argument("modulus must lie in [1, 2^31), got " + std::to_string(modulus));
  }
}

QSeries::QSeries(std::uint32_t modulus, std::int64_t offset_num, std::int64_t step,
                 std::vector<Residue> coeffs)
    : modulus_(modulus), offset_num_(offset_num), step_(step), coeffs_(std::move(coeffs)) {
  check_modulus(modulus);
  if (step <= 0) throw std::invalid_argument("q-series step must be positive");
  end_num_ = offset_num_ + static_cast<std::int64_t>(coeffs_.size()) * step_;
  for (auto& c : coeffs_) c %= modulus_;
  normalize();
}

void QSeries::normalize() {
  const auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](Residue c) { return c != 0; });
  const auto lead = first - coeffs_.begin();
  if (lead == 0) return;
  offset_num_ += lead * step_;
  coeffs_.erase(coeffs_.begin(), first);
}

QSeries QSeries::from_integers(std::uint32_t modulus, std::span<const std::int64_t> values,
                               std::int64_t first_exponent) {
  check_modulus(modulus);
  std::vector<Residue> res(values.size());
  const auto m = static_cast<std::int64_t>(modulus);
  for (std::size_t i = 0; i < values.size(); ++i) {
    res[i] = static_cast<Residue>(floor_mod(values[i], m));
  }
  return QSeries(modulus, first_exponent * kUnitsPerQ, kUnitsPerQ, std::move(res));
}

QSeries QSeries::from_residues(std::uint32_t modulus, std::vector<Residue> values,
                               std::int64_t first_exponent) {
  return QSeries(modulus, first_exponent * kUnitsPerQ, kUnitsPerQ, std::move(values));
}

QSeries QSeries::constant(std::uint32_t modulus, std::uint64_t value, std::int64_t count) {
  check_modulus(modulus);
  std::vector<Residue> res(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)), 0);
  if (!res.empty()) res[0] = static_cast<Residue>(value % modulus);
  return QSeries(modulus, 0, kUnitsPerQ, std::move(res));
}

QSeries QSeries::zero(std::uint32_t modulus, std::int64_t end_num) {
  return QSeries(modulus, end_num, kUnitsPerQ, {});
}

bool QSeries::integral_exponents() const {
  return is_zero() || (floor_mod(offset_num_, kUnitsPerQ) == 0 && step_ % kUnitsPerQ == 0);
}

Residue QSeries::at_num(std::int64_t exponent_num) const {
  if (exponent_num >= end_num_) {
    throw InsufficientReach("coefficient at exponent " + std::to_string(exponent_num) +
                            "/24 lies beyond the truncation " + std::to_string(end_num_) + "/24");
  }
  if (exponent_num < offset_num_) return 0;
  const std::int64_t delta = exponent_num - offset_num_;
  if (delta % step_ != 0) return 0;
  return coeffs_[static_cast<std::size_t>(delta / step_)];
}

std::int64_t QSeries::integer_reach() const {
  return end_num_ > 0 ? ceil_div(end_num_, kUnitsPerQ) : 0;
}

std::vector<Residue> QSeries::dense(std::int64_t first, std::int64_t count) const {
  std::vector<Residue> out(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  if (count > 0 && (first + count - 1) * kUnitsPerQ >= end_num_) {
    throw InsufficientReach("dense: requested q^" + std::to_string(first + count - 1) +
                            " beyond integer reach " + std::to_string(integer_reach()));
  }
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = at_num((first + i) * kUnitsPerQ);
  }
  return out;
}

QSeries QSeries::truncated(std::int64_t end) const {
  if (end > end_num_) throw InsufficientReach("truncated: end beyond known range");
  if (end <= offset_num_) return zero(modulus_, end);
  const auto keep = static_cast<std::size_t>(ceil_div(end - offset_num_, step_));
  std::vector<Residue> c(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(keep));
  return QSeries(modulus_, offset_num_, step_, std::move(c));
}

QSeries QSeries::reduced(std::uint32_t modulus) const {
  check_modulus(modulus);
  if (modulus_ % modulus != 0) {
    throw ModulusMismatch("reduced: " + std::to_string(modulus) + " does not divide " +
                          std::to_string(modulus_));
  }
  QSeries out = *this;
  out.modulus_ = modulus;
  for (auto& c : out.coeffs_) c %= modulus;
  const std::int64_t end = out.end_num_;
  out.normalize();
  if (out.coeffs_.empty()) out.offset_num_ = end;
  return out;
}

QSeries QSeries::refined(std::int64_t step) const {
  if (step <= 0 || step_ % step != 0) throw std::invalid_argument("refined: step must divide");
  const std::int64_t count = (end_num_ - offset_num_) / step;
  if (is_zero()) return zero(modulus_, end_num_);
  return QSeries(modulus_, offset_num_, step, sample(*this, offset_num_, step, count));
}

QSeries add(const QSeries& f, const QSeries& g) { return combine(f, g, false); }
QSeries sub(const QSeries& f, const QSeries& g) { return combine(f, g, true); }

QSeries negate(const QSeries& f) {
  std::vector<Residue> c(f.coeffs().begin(), f.coeffs().end());
  for (auto& x : c) x = neg_mod(x, f.modulus());
  if (c.empty()) return f;
  return QSeries(f.modulus(), f.offset_num(), f.step(), std::move(c));
}

QSeries scale(const QSeries& f, std::uint64_t factor) {
  if (f.is_zero()) return f;
  const std::uint64_t k = factor % f.modulus();
  std::vector<Residue> c(f.coeffs().begin(), f.coeffs().end());
  for (auto& x : c) x = static_cast<Residue>(x * k % f.modulus());
  auto out = QSeries(f.modulus(), f.offset_num(), f.step(), std::move(c));
  if (out.is_zero()) return QSeries::zero(f.modulus(), f.end_num());
  return out;
}

QSeries shift(const QSeries& f, std::int64_t delta_num) {
  if (f.is_zero()) return QSeries::zero(f.modulus(), f.end_num() + delta_num);
  return QSeries(f.modulus(), f.offset_num() + delta_num, f.step(),
                 std::vector<Residue>(f.coeffs().begin(), f.coeffs().end()));
}

QSeries mul(const QSeries& f, const QSeries& g, MulAlgorithm algo) {
  require_same_modulus(f, g);
  const std::uint32_t m = f.modulus();
  const std::int64_t offset = f.offset_num() + g.offset_num();
  const std::int64_t end = std::min(f.end_num() + g.offset_num(), g.end_num() + f.offset_num());
  if (f.is_zero() || g.is_zero()) return QSeries::zero(m, end);
  const std::int64_t step = std::gcd(f.step(), g.step());
  const std::int64_t nf = (f.end_num() - f.offset_num()) / step;
  const std::int64_t ng = (g.end_num() - g.offset_num()) / step;
  const std::int64_t n_out = std::min(nf, ng);
  const auto a = sample(f, f.offset_num(), step, nf);
  const auto b = sample(g, g.offset_num(), step, ng);
  auto c = convolve(a, b, static_cast<std::size_t>(n_out), m, algo);
  return QSeries(m, offset, step, std::move(c));
}

namespace {

// h with h * g = f on the common lattice, for g with unit leading coefficient.
std::vector<Residue> triangular_solve(std::span<const Residue> f, std::span<const Residue> g,
                                      std::size_t n_out, std::uint32_t m) {
  std::uint64_t inv0 = 0;
  try {
    inv0 = nt::invmod(g[0], m);
  } catch (const std::domain_error&) {
    throw NonUnitLeading("leading coefficient " + std::to_string(g[0]) +
                         " is not a unit modulo " + std::to_string(m));
  }
  std::vector<std::size_t> nz;
  for (std::size_t j = 1; j < std::min(g.size(), n_out); ++j) {
    if (g[j] != 0) nz.push_back(j);
  }
  std::vector<Residue> h(n_out, 0);
  for (std::size_t n = 0; n < n_out; ++n) {
    std::uint64_t acc = 0;
    for (std::size_t j : nz) {
      if (j > n) break;
      acc += std::uint64_t{g[j]} * h[n - j];
      if (acc >= kLazyLimit) acc %= m;
    }
    acc %= m;
    const std::uint64_t rhs = n < f.size() ? f[n] : 0;
    const std::uint64_t val = (rhs + m - acc) % m;
    h[n] = static_cast<Residue>(val * inv0 % m);
  }
  return h;
}

}  // namespace

QSeries div(const QSeries& f, const QSeries& g) {
  require_same_modulus(f, g);
  const std::uint32_t m = f.modulus();
  if (g.is_zero()) {
    if (m == 1) return QSeries::zero(m, f.end_num() - g.end_num());
    throw NonUnitLeading("division by a series with no known nonzero term");
  }
  const std::int64_t offset = f.offset_num() - g.offset_num();
  const std::int64_t step = std::gcd(f.step(), g.step());
  const std::int64_t ng = (g.end_num() - g.offset_num()) / step;
  const std::int64_t nf = (f.end_num() - f.offset_num()) / step;
  if (f.is_zero()) {
    const std::int64_t end = std::min(f.end_num() - g.offset_num(), offset + ng * step);
    return QSeries::zero(m, end);
  }
  const std::int64_t n_out = std::min(nf, ng);
  const auto a = sample(f, f.offset_num(), step, nf);
  const auto b = sample(g, g.offset_num(), step, ng);
  auto h = triangular_solve(a, b, static_cast<std::size_t>(n_out), m);
  return QSeries(m, offset, step, std::move(h));
}

QSeries invert(const QSeries& f) {
  const std::uint32_t m = f.modulus();
  if (f.is_zero()) {
    if (m == 1) return QSeries::zero(m, 0);
    throw NonUnitLeading("cannot invert a series with no known nonzero term");
  }
  const auto n = static_cast<std::int64_t>(f.size());
  const std::vector<Residue> one{1};
  auto h = triangular_solve(one, f.coeffs(), static_cast<std::size_t>(n), m);
  return QSeries(m, -f.offset_num(), f.step(), std::move(h));
}

QSeries pow(const QSeries& f, std::uint64_t e) {
  const std::uint32_t m = f.modulus();
  if (e == 0) {
    std::vector<Residue> c(f.size(), 0);
    if (!c.empty()) c[0] = 1 % m;
    if (c.empty()) return QSeries::zero(m, 0);
    return QSeries(m, 0, f.step(), std::move(c));
  }
  if (f.is_zero()) return QSeries::zero(m, f.end_num() * static_cast<std::int64_t>(e));
  if (e == 1) return f;
  const bool sparse = count_nonzero(f.coeffs()) * 16 < f.size();
  if (sparse && e <= 64) {
    QSeries acc = f;
    for (std::uint64_t i = 1; i < e; ++i) acc = mul(acc, f);
    return acc;
  }
  QSeries base = f;
  QSeries result = f;
  bool have = false;
  while (e > 0) {
    if (e & 1) {
      result = have ? mul(result, base) : base;
      have = true;
    }
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

QSeries euler_product(std::int64_t n_trunc, std::uint32_t modulus, std::uint64_t delta) {
  check_modulus(modulus);
  if (n_trunc < 0) throw std::invalid_argument("euler_product: n_trunc must be >= 0");
  if (delta == 0) throw std::invalid_argument("euler_product: delta must be positive");
  const auto d = static_cast<std::int64_t>(delta);
  const std::int64_t count = n_trunc / d + 1;
  std::vector<Residue> c(static_cast<std::size_t>(count), 0);
  c[0] = 1 % modulus;
  const Residue minus_one = neg_mod(1 % modulus, modulus);
  for (std::int64_t j = 1;; ++j) {
    const std::int64_t k1 = j * (3 * j - 1) / 2;
    if (k1 >= count) break;
    const Residue sign = (j % 2 == 0) ? 1 % modulus : minus_one;
    c[static_cast<std::size_t>(k1)] = sign;
    const std::int64_t k2 = j * (3 * j + 1) / 2;
    if (k2 < count) c[static_cast<std::size_t>(k2)] = sign;
  }
  return QSeries(modulus, 0, kUnitsPerQ * d, std::move(c));
}

EtaQuotient::EtaQuotient(std::vector<EtaTerm> terms, std::uint64_t level) : level_(level) {
  std::sort(terms.begin(), terms.end(),
            [](const EtaTerm& a, const EtaTerm& b) { return a.delta < b.delta; });
  for (const auto& t : terms) {
    if (t.delta == 0) throw std::invalid_argument("eta quotient: delta must be positive");
    if (!terms_.empty() && terms_.back().delta == t.delta) {
      terms_.back().power += t.power;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const EtaTerm& t) { return t.power == 0; });
  if (level_ != 0) {
    for (const auto& t : terms_) {
      if (level_ % t.delta != 0) {
        throw std::invalid_argument("eta quotient: delta " + std::to_string(t.delta) +
                                    " does not divide level " + std::to_string(level_));
      }
    }
  }
}

EtaQuotient EtaQuotient::parse(const std::string& text, std::uint64_t level) {
  std::vector<EtaTerm> terms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("eta quotient term '" + item + "' is not delta:power");
    }
    try {
      std::size_t used = 0;
      const auto delta = std::stoull(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("trailing characters");
      const std::string power_text = item.substr(colon + 1);
      const auto power = std::stoll(power_text, &used);
      if (used != power_text.size()) throw std::invalid_argument("trailing characters");
      terms.push_back({delta, power});
    } catch (const std::logic_error&) {
      throw std::invalid_argument("eta quotient term '" + item + "' is not delta:power");
    }
  }
  return EtaQuotient(std::move(terms), level);
}

std::int64_t EtaQuotient::offset_num() const {
  std::int64_t total = 0;
  for (const auto& t : terms_) total += static_cast<std::int64_t>(t.delta) * t.power;
  return total;
}

std::int64_t EtaQuotient::weight_num() const {
  std::int64_t total = 0;
  for (const auto& t : terms_) total += t.power;
  return total;
}

std::string EtaQuotient::to_string() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += ',';
    out += std::to_string(t.delta) + ':' + std::to_string(t.power);
  }
  return out;
}

QSeries eta_expand(const EtaQuotient& eq, std::int64_t n_trunc, std::uint32_t modulus) {
  check_modulus(modulus);
  if (n_trunc < 0) throw std::invalid_argument("eta_expand: n_trunc must be >= 0");
  std::uint64_t g = 0;
  for (const auto& t : eq.terms()) g = std::gcd(g, t.delta);
  if (g == 0) g = 1;
  const auto gi = static_cast<std::int64_t>(g);
  std::vector<Residue> unit(static_cast<std::size_t>(n_trunc / gi + 1), 0);
  unit[0] = 1 % modulus;
  QSeries num(modulus, 0, kUnitsPerQ * gi, std::move(unit));
  if (num.is_zero()) return QSeries::zero(modulus, eq.offset_num() + kUnitsPerQ * (n_trunc + 1));
  std::vector<QSeries> den;
  for (const auto& t : eq.terms()) {
    const QSeries e = euler_product(n_trunc, modulus, t.delta);
    const auto r = static_cast<std::uint64_t>(t.power < 0 ? -t.power : t.power);
    if (t.power > 0) {
      num = mul(num, pow(e, r));
    } else {
      den.push_back(pow(e, r));
    }
  }
  QSeries out = num;
  for (const auto& d : den) out = div(out, d);
  return shift(out, eq.offset_num()).truncated(eq.offset_num() + kUnitsPerQ * (n_trunc + 1));
}

QSeries twist(const QSeries& f, TwistKind kind, std::uint64_t ell) {
  if (ell < 2) throw std::invalid_argument("twist: modulus of the character must be >= 2");
  if (!f.integral_exponents()) throw std::invalid_argument("twist: series has fractional exponents");
  if (f.is_zero()) return f;
  const std::uint32_t m = f.modulus();
  const auto l = static_cast<std::int64_t>(ell);
  std::vector<Residue> c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t n =
        (f.offset_num() + static_cast<std::int64_t>(i) * f.step()) / kUnitsPerQ;
    if (kind == TwistKind::kTrivial) {
      if (n % l == 0) c[i] = 0;
    } else {
      const int chi = nt::kronecker(n, l);
      if (chi == 0) c[i] = 0;
      if (chi < 0) c[i] = neg_mod(c[i], m);
    }
  }
  auto out = QSeries(m, f.offset_num(), f.step(), std::move(c));
  if (out.is_zero()) return QSeries::zero(m, f.end_num());
  return out;
}

std::int64_t GramForm::value(std::span<const std::int64_t> m) const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) total += m[i] * at(i, j) * m[j];
  }
  return total;
}

GramForm GramForm::frobenius(unsigned h) {
  if (h == 0) throw std::invalid_argument("frobenius gram form needs h >= 1");
  GramForm g;
  g.dim = h - 1;
  g.entries.assign(g.dim * g.dim, 12);
  for (std::size_t i = 0; i < g.dim; ++i) g.entries[i * g.dim + i] = 24;
  return g;
}

namespace {

// Diagonal of A^{-1} by Gauss-Jordan; throws unless A is symmetric positive definite.
std::vector<double> inverse_diagonal(const GramForm& form) {
  const std::size_t n = form.dim;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (form.at(i, j) != form.at(j, i)) throw std::invalid_argument("gram form is not symmetric");
    }
  }
  // Cholesky as the definiteness test.
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = static_cast<double>(form.at(j, j));
    for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (d <= 0.0) throw std::invalid_argument("gram form is not positive definite");
    l[j * n + j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = static_cast<double>(form.at(i, j));
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / l[j * n + j];
    }
  }
  // (A^{-1})_ii = |L^{-1} e_i|^2
  std::vector<double> diag(n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = (i == col) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * y[k];
      y[i] = s / l[i * n + i];
    }
    for (double v : y) diag[col] += v * v;
  }
  return diag;
}

}  // namespace

QSeries lattice_theta(const GramForm& form, std::int64_t n_trunc, std::uint32_t modulus) {
  check_modulus(modulus);
  if (n_trunc < 0) throw std::invalid_argument("lattice_theta: n_trunc must be >= 0");
  if (form.entries.size() != form.dim * form.dim) {
    throw std::invalid_argument("gram form entries do not match its dimension");
  }
  const std::int64_t end = kUnitsPerQ * (n_trunc + 1);
  if (form.dim == 0) return QSeries::constant(modulus, 1, n_trunc + 1);

  std::int64_t step = 0;
  for (std::size_t i = 0; i < form.dim; ++i) {
    step = std::gcd(step, form.at(i, i));
    for (std::size_t j = i + 1; j < form.dim; ++j) step = std::gcd(step, 2 * form.at(i, j));
  }
  const auto diag = inverse_diagonal(form);
  const std::int64_t bound = end - 1;  // m^T A m <= bound
  const std::size_t d = form.dim;
  std::vector<std::int64_t> radius(d);
  for (std::size_t i = 0; i < d; ++i) {
    radius[i] = static_cast<std::int64_t>(std::sqrt(static_cast<double>(bound) * diag[i])) + 1;
  }
  const std::int64_t count = ceil_div(end, step);
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(count), 0);
  std::vector<std::int64_t> m(d, 0);
  const std::size_t last = d - 1;
  const std::int64_t a = form.at(last, last);

  // Odometer over the first d-1 coordinates; the last is solved from the quadratic.
  for (std::size_t i = 0; i < last; ++i) m[i] = -radius[i];
  while (true) {
    std::int64_t prefix = 0;
    std::int64_t lin = 0;
    for (std::size_t i = 0; i < last; ++i) {
      for (std::size_t j = 0; j < last; ++j) prefix += m[i] * form.at(i, j) * m[j];
      lin += 2 * form.at(last, i) * m[i];
    }
    const double disc = static_cast<double>(lin) * static_cast<double>(lin) -
                        4.0 * static_cast<double>(a) * static_cast<double>(prefix - bound);
    if (disc >= 0.0) {
      const double root = std::sqrt(disc);
      const auto lo = static_cast<std::int64_t>(std::floor((-lin - root) / (2.0 * a))) - 1;
      const auto hi = static_cast<std::int64_t>(std::ceil((-lin + root) / (2.0 * a))) + 1;
      for (std::int64_t x = lo; x <= hi; ++x) {
        const std::int64_t v = prefix + lin * x + a * x * x;
        if (v >= 0 && v <= bound) ++hits[static_cast<std::size_t>(v / step)];
      }
    }
    std::size_t k = 0;
    while (k < last) {
      if (++m[k] <= radius[k]) break;
      m[k] = -radius[k];
      ++k;
    }
    if (k == last) break;
  }
  std::vector<Residue> c(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) c[i] = static_cast<Residue>(hits[i] % modulus);
  return QSeries(modulus, 0, step, std::move(c));
}

}  // namespace newmod::qs
