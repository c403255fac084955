#include "satake/hecke.hpp"

#include "satake/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace satake {

const ThetaEntry* ThetaTable::find(std::uint64_t p) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), p,
                             [](const ThetaEntry& e, std::uint64_t q) { return e.p < q; });
  return (it != entries.end() && it->p == p) ? &*it : nullptr;
}

ThetaTable theta_table(const CoefficientSeries& series) {
  ThetaTable table;
  table.form = series.form();
  table.bound = series.precision();
  const auto ps = primes_up_to(series.precision());
  table.entries.reserve(ps.size());
  for (const std::uint64_t p : ps) {
    const double lambda = lambda_at(series, p);
    if (series.ramified(p)) {
      table.ramified.push_back({p, lambda});
      continue;
    }
    double theta;
    if (series.a(p) == 0) {
      theta = std::numbers::pi / 2;
    } else {
      double c = lambda / 2;
      if (c > 1.0 || c < -1.0) {
        ++table.clamp_events;
        c = std::clamp(c, -1.0, 1.0);
      }
      theta = std::acos(c);
    }
    table.entries.push_back({p, lambda, theta});
  }
  return table;
}

std::vector<BigInt> prime_power_coefficients(const CoefficientSeries& series, std::uint64_t p,
                                             unsigned max_m) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  const BigInt& ap = series.a(p);
  std::vector<BigInt> out(max_m + 1);
  out[0] = 1;
  if (max_m == 0) return out;
  out[1] = ap;
  if (series.ramified(p)) {
    for (unsigned j = 2; j <= max_m; ++j) out[j] = out[j - 1] * ap;
  } else {
    const BigInt pk = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(series.weight() - 1));
    for (unsigned j = 2; j <= max_m; ++j) out[j] = ap * out[j - 1] - pk * out[j - 2];
  }
  return out;
}

PrimePowerValue lambda_prime_power_exact(const CoefficientSeries& series, std::uint64_t p, unsigned m) {
  if (m == 0) throw std::invalid_argument("prime power exponent must be positive");
  auto seq = prime_power_coefficients(series, p, m);
  PrimePowerValue v;
  v.p = p;
  v.m = m;
  v.a_value = std::move(seq[m]);
  v.lambda_value = scaled_ratio(v.a_value, p, m * (series.weight() - 1) / 2.0);
  v.sign = v.a_value.sign();
  return v;
}

double lambda_prime_power_chebyshev(double theta, unsigned m) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw std::domain_error("theta must lie in [0, pi]");
  const double s = std::sin(theta);
  if (s >= 1e-6) return std::sin((m + 1) * theta) / s;
  // U_0 = 1, U_1 = 2x, U_{j+1} = 2x U_j - U_{j-1}
  const double x = std::cos(theta);
  double prev = 1.0;
  double cur = 2 * x;
  if (m == 0) return prev;
  for (unsigned j = 1; j < m; ++j) {
    const double next = 2 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace satake
