#include "satake/bigint.hpp"

#include <cmath>

namespace satake {

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return boost::multiprecision::msb(abs(v)) + 1;
}

double scaled_ratio(const BigInt& v, std::uint64_t base, double exponent) {
  if (v == 0) return 0.0;
  const BigInt mag = abs(v);
  const std::size_t bits = bit_length(mag);
  const std::size_t shift = bits > 64 ? bits - 64 : 0;
  const auto top = static_cast<std::uint64_t>(mag >> shift);
  const long double log2_scale =
      static_cast<long double>(shift) -
      static_cast<long double>(exponent) * std::log2(static_cast<long double>(base));
  const long double r = static_cast<long double>(top) * std::exp2(log2_scale);
  return static_cast<double>(v < 0 ? -r : r);
}

}  // namespace satake
