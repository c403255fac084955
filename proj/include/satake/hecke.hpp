#pragma once

// Prime-power eigenvalues and Satake angles.

#include "satake/bigint.hpp"
#include "satake/forms.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace satake {

struct ThetaEntry {
  std::uint64_t p;
  double lambda;  // a_f(p) / p^((k-1)/2)
  double theta;   // arccos(lambda / 2) in [0, pi]
};

struct RamifiedEntry {
  std::uint64_t p;
  double lambda;
};

/// Angles theta_p for unramified primes p <= bound, increasing in p. The
/// finitely many ramified primes are kept apart with their lambda only.
struct ThetaTable {
  FormDescriptor form;
  std::size_t bound = 0;
  std::vector<ThetaEntry> entries;
  std::vector<RamifiedEntry> ramified;
  std::size_t clamp_events = 0;  // |lambda| > 2 by rounding only

  const ThetaEntry* find(std::uint64_t p) const;
};

ThetaTable theta_table(const CoefficientSeries& series);

struct PrimePowerValue {
  std::uint64_t p;
  unsigned m;
  BigInt a_value;
  double lambda_value;
  int sign;
};

/// a_f(p^0), ..., a_f(p^max_m) exactly: the three-term Hecke recursion
/// a(p^(j+1)) = a(p) a(p^j) - p^(k-1) a(p^(j-1)) for p not dividing N and
/// a(p^j) = a(p)^j otherwise. Needs p <= X and p prime.
std::vector<BigInt> prime_power_coefficients(const CoefficientSeries& series, std::uint64_t p,
                                             unsigned max_m);

PrimePowerValue lambda_prime_power_exact(const CoefficientSeries& series, std::uint64_t p, unsigned m);

/// sin((m+1) theta) / sin(theta), i.e. U_m(cos theta). Falls back to the
/// Chebyshev recurrence when sin(theta) < 1e-6 so the endpoint limits m+1 and
/// (-1)^m (m+1) come out continuously. std::domain_error outside [0, pi].
double lambda_prime_power_chebyshev(double theta, unsigned m);

}  // namespace satake
