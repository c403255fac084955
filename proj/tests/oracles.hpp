#pragma once

// Independent reference computations used only by the test suites.

#include "satake/bigint.hpp"
#include "satake/forms.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace satake::oracle {

// Multiplies out prod_{n>=1} (1 - q^(d n))^e factor by factor with exact
// integers; returns a_f(0..X) after the q^shift prefactor.
inline std::vector<BigInt> eta_quotient_schoolbook(const FormDescriptor& form, std::size_t precision) {
  std::vector<BigInt> c(precision + 1, 0);
  c[0] = 1;
  for (const auto& f : form.eta_recipe) {
    for (std::int32_t rep = 0; rep < f.exponent; ++rep) {
      for (std::size_t step = f.multiplier; step <= precision; step += f.multiplier) {
        // c *= (1 - q^step), in place from the top down.
        for (std::size_t i = precision; i >= step; --i) c[i] -= c[i - step];
      }
    }
  }
  std::uint64_t shift = q_shift(form);
  std::vector<BigInt> a(precision + 1, 0);
  for (std::size_t n = shift; n <= precision; ++n) a[n] = c[n - shift];
  return a;
}

// Ordered (m+1)-tuples of positive integers with product n, by enumeration.
inline std::uint64_t ordered_factorizations(std::uint64_t n, unsigned parts) {
  if (parts == 1) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) total += ordered_factorizations(n / d, parts - 1);
  return total;
}

// Composite Simpson rule with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

inline double sato_tate_density(double t) { return 2.0 / M_PI * std::sin(t) * std::sin(t); }

}  // namespace satake::oracle
