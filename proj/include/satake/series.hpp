#pragma once

// Exact integer power series truncated at a fixed precision X, i.e. the
// coefficients of q^0 .. q^X.

#include "satake/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace satake {

class IntSeries {
 public:
  IntSeries() : coeffs_(1) {}
  /// The zero series of the given precision.
  explicit IntSeries(std::size_t precision) : coeffs_(precision + 1) {}
  /// Takes ownership of q^0..q^(size-1); coeffs must be non-empty.
  explicit IntSeries(std::vector<BigInt> coeffs);

  static IntSeries one(std::size_t precision);

  std::size_t precision() const { return coeffs_.size() - 1; }
  const BigInt& operator[](std::size_t n) const { return coeffs_[n]; }
  BigInt& operator[](std::size_t n) { return coeffs_[n]; }
  std::span<const BigInt> coeffs() const { return coeffs_; }

  /// Largest |coefficient|, as a bit count.
  std::size_t max_bits() const;

  friend bool operator==(const IntSeries&, const IntSeries&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

struct SparseTerm {
  std::size_t exponent;
  std::int64_t coefficient;
  friend bool operator==(const SparseTerm&, const SparseTerm&) = default;
};

/// Sparse series with strictly increasing exponents and no zero terms.
class SparseSeries {
 public:
  SparseSeries() = default;
  /// Validates the ordering/non-zero invariants; throws std::invalid_argument.
  explicit SparseSeries(std::vector<SparseTerm> terms);

  std::span<const SparseTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  IntSeries to_dense(std::size_t precision) const;

  friend bool operator==(const SparseSeries&, const SparseSeries&) = default;

 private:
  std::vector<SparseTerm> terms_;
};

/// prod_{n>=1} (1 - q^n)^r truncated at q^X, for r in {1, 3}. r = 1 uses the
/// pentagonal-number theorem, r = 3 Jacobi's triangular-number identity.
SparseSeries eta_power_series(int r, std::size_t precision);

/// Truncated Cauchy product via NTT over several primes with CRT
/// reconstruction. The prime count is chosen from a proven bound on the output
/// magnitude; std::overflow_error if the available primes cannot cover it.
IntSeries mul(const IntSeries& a, const IntSeries& b, unsigned threads = 1);

/// Reference O(X^2) Cauchy product.
IntSeries mul_schoolbook(const IntSeries& a, const IntSeries& b);

/// Dense times sparse, O(X * #terms). Output precision is a.precision().
IntSeries mul_sparse(const IntSeries& a, const SparseSeries& b);

}  // namespace satake
