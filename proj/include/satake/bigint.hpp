#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace satake {

/// Arbitrary-precision signed integer used for every exact coefficient.
using BigInt = boost::multiprecision::cpp_int;

/// Number of significant bits of |v| (0 for v == 0).
std::size_t bit_length(const BigInt& v);

/// v / base^(exponent) as a double, without forming base^exponent in floating
/// point. Relative accuracy is a few ulps times log2(base) * exponent.
double scaled_ratio(const BigInt& v, std::uint64_t base, double exponent);

}  // namespace satake
