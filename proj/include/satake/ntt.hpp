#pragma once

// Number-theoretic transforms over word-size primes and Chinese-remainder
// reconstruction of exact integers from their residues.

#include "satake/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace satake::ntt {

struct Prime {
  std::uint32_t modulus;
  std::uint32_t generator;  // primitive root
  unsigned max_log2;        // largest supported transform length is 2^max_log2
};

/// All primes of the form c * 2^25 + 1 below 2^31, largest first.
std::span<const Prime> primes();

/// Largest truncated-product length supported by every prime.
std::size_t max_transform_length();

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp, std::uint32_t mod);

/// In-place cyclic NTT; a.size() must be a power of two <= 2^max_log2.
void transform(std::vector<std::uint32_t>& a, const Prime& prime, bool inverse);

/// Product of a and b modulo prime, truncated to indices 0..precision.
std::vector<std::uint32_t> multiply(std::span<const std::uint32_t> a,
                                    std::span<const std::uint32_t> b,
                                    std::size_t precision, const Prime& prime);

std::vector<std::uint32_t> square(std::span<const std::uint32_t> a, std::size_t precision,
                                  const Prime& prime);

/// Reduces a signed exact integer into [0, modulus).
std::uint32_t reduce(const BigInt& v, std::uint32_t modulus);
std::uint32_t reduce(std::int64_t v, std::uint32_t modulus);

/// Garner reconstruction for a fixed set of pairwise-coprime moduli. Values are
/// returned in the symmetric range (-M/2, M/2].
class CrtBasis {
 public:
  explicit CrtBasis(std::vector<Prime> moduli);

  std::size_t size() const { return moduli_.size(); }
  const Prime& prime(std::size_t i) const { return moduli_[i]; }
  const BigInt& modulus() const { return product_; }
  /// floor(log2(M)); any |v| < 2^(modulus_bits() - 1) reconstructs uniquely.
  std::size_t modulus_bits() const;

  BigInt reconstruct(std::span<const std::uint32_t> residues) const;

 private:
  std::vector<Prime> moduli_;
  std::vector<std::vector<std::uint32_t>> inverses_;  // inverses_[i][j] = p_j^{-1} mod p_i, j < i
  BigInt product_;
  BigInt half_;
};

/// Smallest prefix of primes() (largest first) whose product exceeds 2^bits.
/// Throws std::overflow_error when every available prime together is not
/// enough.
std::vector<Prime> primes_for_bits(std::size_t bits);

}  // namespace satake::ntt
