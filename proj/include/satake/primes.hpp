#pragma once

#include <cstdint>
#include <vector>

namespace satake {

/// All primes p <= limit, increasing.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Trial division; intended for small arguments and assertions.
bool is_prime(std::uint64_t n);

/// Number of divisors of every n in [0, limit] (entry 0 is 0).
std::vector<std::uint32_t> divisor_counts(std::uint64_t limit);

}  // namespace satake
