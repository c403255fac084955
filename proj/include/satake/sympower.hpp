#pragma once

// Multiplicative coefficient streams for L_m(s, f) = sum lambda_f(n^m) n^-s
// and L(s, sym^m f) = sum lambda_{sym^m f}(n) n^-s.

#include "satake/hecke.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace satake {

/// h_0..h_K of the m+1 unitary eigenvalues e^{i(m-2j)theta}, j = 0..m: the
/// power-series coefficients of the unramified sym^m local Euler factor.
/// Throws std::logic_error if an imaginary residue above 1e-6 survives.
std::vector<double> sym_local_coefficients(double theta, unsigned m, unsigned max_exponent);

/// Contiguous run of stream values, value(first), value(first + 1), ...
struct StreamBlock {
  std::uint64_t first;
  std::span<const double> values;
};

/// Sequential producer of real coefficients value(1..bound).
class CoefficientStream {
 public:
  virtual ~CoefficientStream() = default;
  virtual std::uint64_t bound() const = 0;
  virtual void reset() = 0;
  /// Next block in increasing n, or nullopt once bound() is passed. The span
  /// stays valid until the next call.
  virtual std::optional<StreamBlock> next_block() = 0;
};

/// value(n) = c for all n; a synthetic stream for checking the consumers.
class ConstantStream final : public CoefficientStream {
 public:
  ConstantStream(double value, std::uint64_t bound, std::size_t block_size = std::size_t{1} << 16)
      : value_(value), bound_(bound), block_size_(block_size) {}

  std::uint64_t bound() const override { return bound_; }
  void reset() override { next_ = 1; }
  std::optional<StreamBlock> next_block() override {
    if (next_ > bound_) return std::nullopt;
    const std::uint64_t lo = next_;
    const std::uint64_t len = std::min<std::uint64_t>(block_size_, bound_ - lo + 1);
    values_.assign(len, value_);
    next_ = lo + len;
    return StreamBlock{lo, values_};
  }

 private:
  double value_;
  std::uint64_t bound_;
  std::size_t block_size_;
  std::uint64_t next_ = 1;
  std::vector<double> values_;
};

enum class StreamKind { sym, power };

const char* to_string(StreamKind kind);

class SymCoefficientStream final : public CoefficientStream {
 public:
  SymCoefficientStream(const ThetaTable& table, unsigned m, std::uint64_t bound, StreamKind kind,
                       std::size_t block_size);

  std::uint64_t bound() const override { return bound_; }
  unsigned m() const { return m_; }
  StreamKind kind() const { return kind_; }
  const FormDescriptor& form() const { return form_; }
  void reset() override { next_ = 1; }
  std::optional<StreamBlock> next_block() override;

  /// Local value at p^e (e <= floor(log bound / log p)).
  double local(std::uint64_t p, unsigned e) const;

 private:
  std::size_t prime_index(std::uint64_t p) const;

  FormDescriptor form_;
  unsigned m_;
  std::uint64_t bound_;
  StreamKind kind_;
  std::size_t block_size_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::size_t> offsets_;  // local values of primes_[i] live at [offsets_[i], offsets_[i+1])
  std::vector<double> locals_;
  std::uint64_t next_ = 1;
  std::vector<double> values_;
  std::vector<std::uint64_t> residual_;
};

inline constexpr std::size_t kDefaultBlockSize = std::size_t{1} << 20;

/// kind = power: value(p^e) = lambda_f(p^(e m)) (Chebyshev; lambda_f(p)^(e m)
/// at ramified p). kind = sym: value(p^e) = h_e, level 1 only
/// (std::invalid_argument otherwise). bound must not exceed table.bound.
SymCoefficientStream assemble_multiplicative(const ThetaTable& table, unsigned m, std::uint64_t bound,
                                             StreamKind kind,
                                             std::size_t block_size = kDefaultBlockSize);

/// Collects a whole stream; for tests and small bounds.
std::vector<double> collect(CoefficientStream& stream);

/// d_{m+1}(n): ordered factorizations of n into m+1 factors.
std::uint64_t divisor_bound(std::uint64_t n, unsigned m);

/// d_{m+1}(0..limit) by m-fold Dirichlet convolution of the constant 1
/// (entry 0 is 0).
std::vector<std::uint64_t> divisor_bound_table(std::uint64_t limit, unsigned m);

}  // namespace satake
