#include "satake/series.hpp"

#include "satake/ntt.hpp"
#include "satake/parallel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace satake {

IntSeries::IntSeries(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("IntSeries needs at least the constant term");
}

IntSeries IntSeries::one(std::size_t precision) {
  IntSeries s(precision);
  s[0] = 1;
  return s;
}

std::size_t IntSeries::max_bits() const {
  std::size_t bits = 0;
  for (const auto& c : coeffs_) bits = std::max(bits, bit_length(c));
  return bits;
}

SparseSeries::SparseSeries(std::vector<SparseTerm> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coefficient == 0)
      throw std::invalid_argument("sparse series stores no zero coefficients");
    if (i > 0 && terms_[i].exponent <= terms_[i - 1].exponent)
      throw std::invalid_argument("sparse series exponents must be strictly increasing");
  }
}

IntSeries SparseSeries::to_dense(std::size_t precision) const {
  IntSeries out(precision);
  for (const auto& t : terms_) {
    if (t.exponent > precision) break;
    out[t.exponent] = t.coefficient;
  }
  return out;
}

SparseSeries eta_power_series(int r, std::size_t precision) {
  std::vector<SparseTerm> terms;
  if (r == 1) {
    // Generalized pentagonal numbers k(3k-1)/2 for k = 0, 1, -1, 2, -2, ...
    terms.push_back({0, 1});
    for (std::uint64_t k = 1;; ++k) {
      const std::uint64_t e1 = k * (3 * k - 1) / 2;
      const std::uint64_t e2 = k * (3 * k + 1) / 2;
      const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
      if (e1 > precision) break;
      terms.push_back({e1, sign});
      if (e2 > precision) break;
      terms.push_back({e2, sign});
    }
  } else if (r == 3) {
    for (std::uint64_t k = 0;; ++k) {
      const std::uint64_t e = k * (k + 1) / 2;
      if (e > precision) break;
      const auto c = static_cast<std::int64_t>(2 * k + 1);
      terms.push_back({e, (k % 2 == 0) ? c : -c});
    }
  } else {
    throw std::invalid_argument("eta_power_series supports r = 1 or r = 3, got " + std::to_string(r));
  }
  return SparseSeries(std::move(terms));
}

IntSeries mul_schoolbook(const IntSeries& a, const IntSeries& b) {
  const std::size_t x = std::min(a.precision(), b.precision());
  IntSeries out(x);
  for (std::size_t i = 0; i <= x; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= x; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

IntSeries mul_sparse(const IntSeries& a, const SparseSeries& b) {
  const std::size_t x = a.precision();
  IntSeries out(x);
  for (const auto& t : b.terms()) {
    if (t.exponent > x) break;
    for (std::size_t i = 0; i + t.exponent <= x; ++i) out[i + t.exponent] += a[i] * t.coefficient;
  }
  return out;
}

IntSeries mul(const IntSeries& a, const IntSeries& b, unsigned threads) {
  const std::size_t x = std::min(a.precision(), b.precision());
  const std::size_t a_bits = a.max_bits();
  const std::size_t b_bits = b.max_bits();
  if (a_bits == 0 || b_bits == 0) return IntSeries(x);

  // |c_n| <= (x + 1) * max|a| * max|b|; the modulus must exceed twice that.
  const std::size_t needed = a_bits + b_bits + bit_length(BigInt(x + 1)) + 1;
  const ntt::CrtBasis basis(ntt::primes_for_bits(needed));

  std::vector<std::vector<std::uint32_t>> residues(basis.size());
  parallel_for(basis.size(), threads, [&](std::size_t i) {
    const auto p = basis.prime(i);
    std::vector<std::uint32_t> ra(x + 1), rb(x + 1);
    for (std::size_t n = 0; n <= x; ++n) {
      ra[n] = ntt::reduce(a[n], p.modulus);
      rb[n] = ntt::reduce(b[n], p.modulus);
    }
    residues[i] = ntt::multiply(ra, rb, x, p);
  });

  IntSeries out(x);
  std::vector<std::uint32_t> column(basis.size());
  for (std::size_t n = 0; n <= x; ++n) {
    for (std::size_t i = 0; i < basis.size(); ++i) column[i] = residues[i][n];
    out[n] = basis.reconstruct(column);
  }
  return out;
}

}  // namespace satake
