#include "satake/ntt.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace satake::ntt {
namespace {

constexpr std::array<Prime, 7> kPrimes{{
    {2113929217u, 5u, 25u},
    {2013265921u, 31u, 27u},
    {1811939329u, 13u, 26u},
    {1711276033u, 29u, 25u},
    {1107296257u, 10u, 25u},
    {469762049u, 3u, 26u},
    {167772161u, 3u, 25u},
}};

constexpr unsigned kCommonLog2 = 25;

// Montgomery arithmetic with R = 2^32 for odd moduli below 2^31.
struct Montgomery {
  std::uint32_t mod;
  std::uint32_t neg_inv;  // -mod^{-1} mod 2^32
  std::uint32_t r2;       // R^2 mod mod

  explicit Montgomery(std::uint32_t m) : mod(m) {
    std::uint32_t inv = m;
    for (int i = 0; i < 5; ++i) inv *= 2u - m * inv;
    neg_inv = 0u - inv;
    r2 = static_cast<std::uint32_t>((static_cast<unsigned __int128>(1) << 64) % m);
  }

  std::uint32_t redc(std::uint64_t t) const {
    const std::uint32_t q = static_cast<std::uint32_t>(t) * neg_inv;
    const std::uint64_t u = (t + static_cast<std::uint64_t>(q) * mod) >> 32;
    return u >= mod ? static_cast<std::uint32_t>(u - mod) : static_cast<std::uint32_t>(u);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return redc(static_cast<std::uint64_t>(a) * b);
  }
  std::uint32_t to(std::uint32_t a) const { return mul(a, r2); }
  std::uint32_t from(std::uint32_t a) const { return redc(a); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= mod ? s - mod : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + mod - b;
  }
};

// Transform on Montgomery-form data. Output of the forward pass is in
// bit-reversed order (decimation in frequency) and the inverse pass consumes
// bit-reversed input (decimation in time), so no permutation is needed for
// convolution.
void forward_dif(std::vector<std::uint32_t>& a, const Montgomery& mg, const Prime& prime) {
  const std::size_t n = a.size();
  std::vector<std::uint32_t> w(n / 2);
  for (std::size_t len = n; len >= 2; len >>= 1) {
    const std::size_t half = len / 2;
    const std::uint32_t root = mg.to(pow_mod(prime.generator, (prime.modulus - 1) / len, prime.modulus));
    w[0] = mg.to(1);
    for (std::size_t j = 1; j < half; ++j) w[j] = mg.mul(w[j - 1], root);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::uint32_t u = a[i + j];
        const std::uint32_t v = a[i + j + half];
        a[i + j] = mg.add(u, v);
        a[i + j + half] = mg.mul(mg.sub(u, v), w[j]);
      }
    }
  }
}

void inverse_dit(std::vector<std::uint32_t>& a, const Montgomery& mg, const Prime& prime) {
  const std::size_t n = a.size();
  std::vector<std::uint32_t> w(n / 2);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::uint32_t root = mg.to(pow_mod(
        pow_mod(prime.generator, (prime.modulus - 1) / len, prime.modulus), prime.modulus - 2,
        prime.modulus));
    w[0] = mg.to(1);
    for (std::size_t j = 1; j < half; ++j) w[j] = mg.mul(w[j - 1], root);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::uint32_t u = a[i + j];
        const std::uint32_t v = mg.mul(a[i + j + half], w[j]);
        a[i + j] = mg.add(u, v);
        a[i + j + half] = mg.sub(u, v);
      }
    }
  }
}

std::size_t transform_length(std::size_t a_len, std::size_t b_len, std::size_t precision) {
  // Wrap-around must not reach indices <= precision.
  const std::size_t needed = std::min(a_len + b_len - 1, 2 * precision + 1);
  const std::size_t n = std::bit_ceil(std::max<std::size_t>(needed, 2));
  if (n > (std::size_t{1} << kCommonLog2))
    throw std::length_error("NTT length 2^" + std::to_string(std::countr_zero(n)) +
                            " exceeds the supported maximum 2^" + std::to_string(kCommonLog2));
  return n;
}

std::vector<std::uint32_t> load(std::span<const std::uint32_t> src, std::size_t keep, std::size_t n,
                                const Montgomery& mg) {
  std::vector<std::uint32_t> out(n, 0);
  const std::size_t m = std::min(src.size(), keep);
  for (std::size_t i = 0; i < m; ++i) out[i] = mg.to(src[i]);
  return out;
}

std::vector<std::uint32_t> finish(std::vector<std::uint32_t>& fa, std::size_t precision,
                                  const Montgomery& mg, const Prime& prime) {
  inverse_dit(fa, mg, prime);
  const std::uint32_t n_inv =
      pow_mod(static_cast<std::uint32_t>(fa.size() % prime.modulus), prime.modulus - 2, prime.modulus);
  std::vector<std::uint32_t> out(precision + 1, 0);
  const std::size_t m = std::min(out.size(), fa.size());
  for (std::size_t i = 0; i < m; ++i) out[i] = mg.mul(fa[i], n_inv);
  return out;
}

}  // namespace

std::span<const Prime> primes() { return kPrimes; }

std::size_t max_transform_length() { return std::size_t{1} << kCommonLog2; }

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp, std::uint32_t mod) {
  std::uint64_t result = 1 % mod;
  std::uint64_t b = base % mod;
  while (exp > 0) {
    if (exp & 1u) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

void transform(std::vector<std::uint32_t>& a, const Prime& prime, bool inverse) {
  const std::size_t n = a.size();
  if (!std::has_single_bit(n) || n > (std::size_t{1} << prime.max_log2))
    throw std::invalid_argument("NTT length must be a supported power of two");
  if (n == 1) return;
  const Montgomery mg(prime.modulus);
  for (auto& x : a) x = mg.to(x % prime.modulus);
  // Natural-order interface: permute around the DIF/DIT kernels.
  const unsigned bits = static_cast<unsigned>(std::countr_zero(n));
  auto bit_reverse = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (unsigned b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      if (i < r) std::swap(a[i], a[r]);
    }
  };
  if (!inverse) {
    forward_dif(a, mg, prime);
    bit_reverse();
    for (auto& x : a) x = mg.from(x);
  } else {
    bit_reverse();
    inverse_dit(a, mg, prime);
    const std::uint32_t n_inv =
        pow_mod(static_cast<std::uint32_t>(n % prime.modulus), prime.modulus - 2, prime.modulus);
    for (auto& x : a) x = mg.mul(x, n_inv);
  }
}

std::vector<std::uint32_t> multiply(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                    std::size_t precision, const Prime& prime) {
  if (a.empty() || b.empty()) return std::vector<std::uint32_t>(precision + 1, 0);
  const std::size_t a_len = std::min(a.size(), precision + 1);
  const std::size_t b_len = std::min(b.size(), precision + 1);
  const std::size_t n = transform_length(a_len, b_len, precision);
  const Montgomery mg(prime.modulus);
  auto fa = load(a, a_len, n, mg);
  auto fb = load(b, b_len, n, mg);
  forward_dif(fa, mg, prime);
  forward_dif(fb, mg, prime);
  for (std::size_t i = 0; i < n; ++i) fa[i] = mg.mul(fa[i], fb[i]);
  fb = {};
  return finish(fa, precision, mg, prime);
}

std::vector<std::uint32_t> square(std::span<const std::uint32_t> a, std::size_t precision,
                                  const Prime& prime) {
  if (a.empty()) return std::vector<std::uint32_t>(precision + 1, 0);
  const std::size_t a_len = std::min(a.size(), precision + 1);
  const std::size_t n = transform_length(a_len, a_len, precision);
  const Montgomery mg(prime.modulus);
  auto fa = load(a, a_len, n, mg);
  forward_dif(fa, mg, prime);
  for (auto& x : fa) x = mg.mul(x, x);
  return finish(fa, precision, mg, prime);
}

std::uint32_t reduce(const BigInt& v, std::uint32_t modulus) {
  BigInt r = v % modulus;
  if (r < 0) r += modulus;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(std::int64_t v, std::uint32_t modulus) {
  std::int64_t r = v % static_cast<std::int64_t>(modulus);
  if (r < 0) r += modulus;
  return static_cast<std::uint32_t>(r);
}

CrtBasis::CrtBasis(std::vector<Prime> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw std::invalid_argument("CRT basis needs at least one modulus");
  inverses_.resize(moduli_.size());
  product_ = 1;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const std::uint32_t pi = moduli_[i].modulus;
    for (std::size_t j = 0; j < i; ++j)
      inverses_[i].push_back(pow_mod(moduli_[j].modulus % pi, pi - 2, pi));
    product_ *= pi;
  }
  half_ = product_ / 2;
}

std::size_t CrtBasis::modulus_bits() const { return bit_length(product_) - 1; }

BigInt CrtBasis::reconstruct(std::span<const std::uint32_t> residues) const {
  const std::size_t k = moduli_.size();
  if (residues.size() != k) throw std::invalid_argument("residue count does not match CRT basis");
  // Mixed-radix digits: x = d0 + d1 p0 + d2 p0 p1 + ...
  std::array<std::uint32_t, kPrimes.size()> digits{};
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t pi = moduli_[i].modulus;
    std::uint64_t x = residues[i] % pi;
    for (std::size_t j = 0; j < i; ++j) {
      x = (x + pi - digits[j] % pi) % pi;
      x = x * inverses_[i][j] % pi;
    }
    digits[i] = static_cast<std::uint32_t>(x);
  }
  BigInt value = digits[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) {
    value *= moduli_[i].modulus;
    value += digits[i];
  }
  if (value > half_) value -= product_;
  return value;
}

std::vector<Prime> primes_for_bits(std::size_t bits) {
  std::vector<Prime> chosen;
  BigInt product = 1;
  const BigInt target = BigInt(1) << bits;
  for (const auto& p : kPrimes) {
    if (product > target) break;
    chosen.push_back(p);
    product *= p.modulus;
  }
  if (product <= target)
    throw std::overflow_error("CRT modulus insufficient: " + std::to_string(bits) +
                              " bits required, available primes provide " +
                              std::to_string(bit_length(product) - 1));
  return chosen;
}

}  // namespace satake::ntt
