#pragma once

// Built-in newforms given as eta quotients, and their exact q-expansions.

#include "satake/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace satake {

/// One factor eta(multiplier * z)^exponent of an eta quotient.
struct EtaFactor {
  std::uint32_t multiplier;
  std::int32_t exponent;
  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

struct FormDescriptor {
  std::string name;
  int weight = 0;
  std::uint64_t level = 1;
  bool cm = false;
  std::vector<EtaFactor> eta_recipe;
  friend bool operator==(const FormDescriptor&, const FormDescriptor&) = default;
};

/// Throws std::invalid_argument explaining the first violated recipe rule:
/// positive multipliers and exponents, sum(d*e) divisible by 24, weight equal
/// to sum(e)/2 and even, positive level.
void validate(const FormDescriptor& form);

/// Integral exponent of the q-prefactor, sum(d*e)/24.
std::uint64_t q_shift(const FormDescriptor& form);

/// delta, lvl11, lvl27, lvl32.
std::span<const FormDescriptor> builtin_forms();

/// Registry lookup; std::invalid_argument for unknown names.
const FormDescriptor& find_form(std::string_view name);

/// Exact coefficients a_f(1..X) of a normalized newform.
class CoefficientSeries {
 public:
  /// a[0] is ignored (cusp forms have no constant term) and stored as 0.
  CoefficientSeries(FormDescriptor form, std::vector<BigInt> a);

  const FormDescriptor& form() const { return form_; }
  std::size_t precision() const { return a_.size() - 1; }
  int weight() const { return form_.weight; }
  std::uint64_t level() const { return form_.level; }
  bool ramified(std::uint64_t p) const { return form_.level % p == 0; }

  /// a_f(n); std::out_of_range unless 1 <= n <= X.
  const BigInt& a(std::size_t n) const;
  /// a_f(1..X) as a span indexed from 0 (entry i is a_f(i + 1)).
  std::span<const BigInt> coefficients() const { return std::span<const BigInt>(a_).subspan(1); }

 private:
  FormDescriptor form_;
  std::vector<BigInt> a_;
};

/// Expands the eta quotient to precision X. Coefficients are computed modulo
/// enough NTT primes to exceed twice the Deligne bound d(n) n^((k-1)/2) and
/// checked against one extra prime; any disagreement is a hard failure.
CoefficientSeries expand(const FormDescriptor& form, std::size_t precision, unsigned threads = 1);

/// a_f(n) / n^((k-1)/2).
double lambda_at(const CoefficientSeries& series, std::size_t n);

}  // namespace satake
