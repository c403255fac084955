#include "satake/forms.hpp"

#include "satake/ntt.hpp"
#include "satake/parallel.hpp"
#include "satake/series.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>

namespace satake {
namespace {

const std::array<FormDescriptor, 4>& registry() {
  static const std::array<FormDescriptor, 4> forms{{
      {"delta", 12, 1, false, {{1, 24}}},
      {"lvl11", 2, 11, false, {{1, 2}, {11, 2}}},
      {"lvl27", 2, 27, true, {{3, 2}, {9, 2}}},
      {"lvl32", 2, 32, true, {{4, 2}, {8, 2}}},
  }};
  return forms;
}

using Residues = std::vector<std::uint32_t>;

Residues sparse_mod(const SparseSeries& s, std::size_t precision, std::uint32_t modulus) {
  Residues out(precision + 1, 0);
  for (const auto& t : s.terms()) {
    if (t.exponent > precision) break;
    out[t.exponent] = ntt::reduce(t.coefficient, modulus);
  }
  return out;
}

// prod (1 - q^n)^e mod p, precision M.
Residues eta_power_mod(std::int32_t e, std::size_t precision, const ntt::Prime& p) {
  std::optional<Residues> acc;
  auto times = [&](const Residues& f) {
    acc = acc ? ntt::multiply(*acc, f, precision, p) : f;
  };
  if (const std::int32_t cubes = e / 3; cubes > 0) {
    Residues base = sparse_mod(eta_power_series(3, precision), precision, p.modulus);
    for (std::int32_t k = cubes;;) {
      if (k & 1) times(base);
      k >>= 1;
      if (k == 0) break;
      base = ntt::square(base, precision, p);
    }
  }
  if (const std::int32_t rest = e % 3; rest > 0) {
    Residues eta = sparse_mod(eta_power_series(1, precision), precision, p.modulus);
    if (rest == 2) eta = ntt::square(eta, precision, p);
    times(eta);
  }
  return acc ? std::move(*acc) : Residues{1};
}

Residues eta_quotient_mod(const FormDescriptor& form, std::size_t precision, const ntt::Prime& p) {
  std::optional<Residues> acc;
  for (const auto& f : form.eta_recipe) {
    const std::size_t inner = precision / f.multiplier;
    const Residues g = eta_power_mod(f.exponent, inner, p);
    Residues stretched(precision + 1, 0);
    for (std::size_t i = 0; i < g.size() && i <= inner; ++i) stretched[i * f.multiplier] = g[i];
    acc = acc ? ntt::multiply(*acc, stretched, precision, p) : std::move(stretched);
  }
  if (!acc) {
    Residues one(precision + 1, 0);
    one[0] = 1;
    return one;
  }
  return std::move(*acc);
}

}  // namespace

void validate(const FormDescriptor& form) {
  if (form.name.empty()) throw std::invalid_argument("form name must not be empty");
  if (form.level == 0) throw std::invalid_argument("level must be a positive integer");
  if (form.eta_recipe.empty()) throw std::invalid_argument("eta recipe must not be empty");
  std::int64_t exponent_sum = 0;
  std::int64_t weighted_sum = 0;
  for (const auto& f : form.eta_recipe) {
    if (f.multiplier == 0) throw std::invalid_argument("eta multiplier must be positive");
    if (f.exponent <= 0)
      throw std::invalid_argument("eta exponents must be positive (holomorphic products only)");
    exponent_sum += f.exponent;
    weighted_sum += static_cast<std::int64_t>(f.multiplier) * f.exponent;
  }
  if (weighted_sum % 24 != 0)
    throw std::invalid_argument("sum of d*e is " + std::to_string(weighted_sum) +
                                ", not divisible by 24: the q-prefactor would be fractional");
  if (exponent_sum % 2 != 0 || exponent_sum / 2 != form.weight)
    throw std::invalid_argument("weight " + std::to_string(form.weight) +
                                " does not equal sum(e)/2 = " + std::to_string(exponent_sum) + "/2");
  if (form.weight <= 0 || form.weight % 2 != 0)
    throw std::invalid_argument("weight must be an even positive integer");
}

std::uint64_t q_shift(const FormDescriptor& form) {
  std::uint64_t weighted_sum = 0;
  for (const auto& f : form.eta_recipe)
    weighted_sum += static_cast<std::uint64_t>(f.multiplier) * static_cast<std::uint64_t>(f.exponent);
  return weighted_sum / 24;
}

std::span<const FormDescriptor> builtin_forms() { return registry(); }

const FormDescriptor& find_form(std::string_view name) {
  for (const auto& f : registry())
    if (f.name == name) return f;
  throw std::invalid_argument("unknown form '" + std::string(name) +
                              "' (built-ins: delta, lvl11, lvl27, lvl32)");
}

CoefficientSeries::CoefficientSeries(FormDescriptor form, std::vector<BigInt> a)
    : form_(std::move(form)), a_(std::move(a)) {
  if (a_.size() < 2) throw std::invalid_argument("coefficient series needs precision >= 1");
  a_[0] = 0;
}

const BigInt& CoefficientSeries::a(std::size_t n) const {
  if (n == 0 || n >= a_.size())
    throw std::out_of_range("coefficient index " + std::to_string(n) + " outside 1.." +
                            std::to_string(precision()));
  return a_[n];
}

CoefficientSeries expand(const FormDescriptor& form, std::size_t precision, unsigned threads) {
  validate(form);
  if (precision < 1) throw std::invalid_argument("precision must be at least 1");
  const std::uint64_t shift = q_shift(form);
  if (shift < 1) throw std::invalid_argument("q-prefactor exponent must be a positive integer");

  std::vector<BigInt> a(precision + 1);
  if (shift > precision) return CoefficientSeries(form, std::move(a));
  const std::size_t inner = precision - shift;

  // Deligne: |a(n)| <= d(n) n^((k-1)/2) <= 2 X^(k/2) using d(n) <= 2 sqrt(n).
  const BigInt bound = 2 * boost::multiprecision::pow(BigInt(precision), form.weight / 2);
  const std::size_t needed = bit_length(bound) + 1;
  std::vector<ntt::Prime> moduli = ntt::primes_for_bits(needed);
  const auto all = ntt::primes();
  if (moduli.size() >= all.size())
    throw std::overflow_error("CRT modulus insufficient: no prime left for the verification residue");
  moduli.push_back(all[moduli.size()]);
  const ntt::CrtBasis basis(std::vector<ntt::Prime>(moduli.begin(), moduli.end() - 1));
  const ntt::Prime check = moduli.back();

  std::vector<Residues> residues(moduli.size());
  parallel_for(moduli.size(), threads,
               [&](std::size_t i) { residues[i] = eta_quotient_mod(form, inner, moduli[i]); });

  std::vector<std::uint32_t> column(basis.size());
  for (std::size_t j = 0; j <= inner; ++j) {
    for (std::size_t i = 0; i < basis.size(); ++i) column[i] = residues[i][j];
    BigInt v = basis.reconstruct(column);
    if (ntt::reduce(v, check.modulus) != residues.back()[j])
      throw std::runtime_error("CRT verification failed at q^" + std::to_string(j + shift) +
                               ": coefficient exceeds the reconstruction modulus");
    a[j + shift] = std::move(v);
  }
  if (a[1] != 1)
    throw std::invalid_argument("recipe for '" + form.name + "' does not give a normalized form (a(1) = " +
                                a[1].str() + ")");
  return CoefficientSeries(form, std::move(a));
}

double lambda_at(const CoefficientSeries& series, std::size_t n) {
  return scaled_ratio(series.a(n), n, (series.weight() - 1) / 2.0);
}

}  // namespace satake
