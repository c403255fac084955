#pragma once

// On-disk cache of expanded coefficient tables.
//
// Layout (all integers little-endian):
//   8 bytes  magic "SATKCOEF"
//   u32      format version (1)
//   u32      name length L, then L bytes of form name
//   u32      weight k
//   u64      level N
//   u64      precision X
//   X records, one per a_f(1..X): u32 byte count B, then B bytes of the
//   minimal two's-complement encoding (B = 0 encodes zero).

#include "satake/forms.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace satake {

inline constexpr std::uint32_t kCacheFormatVersion = 1;

std::vector<std::uint8_t> encode_signed(const BigInt& v);
BigInt decode_signed(std::span<const std::uint8_t> bytes);

void write_cache(const std::filesystem::path& path, const CoefficientSeries& series);

/// Reads a cache file; std::runtime_error on a bad magic, version, truncated
/// data, or a header that does not match `expected`.
CoefficientSeries read_cache(const std::filesystem::path& path, const FormDescriptor& expected);

/// <dir>/<name>_X<precision>.coef
std::filesystem::path cache_file(const std::filesystem::path& dir, const FormDescriptor& form,
                                 std::size_t precision);

/// $SATAKE_CACHE_DIR if set, otherwise ".satake-cache".
std::filesystem::path default_cache_dir();

struct CacheLoad {
  CoefficientSeries series;
  bool computed;  // false when served from disk
};

CacheLoad load_or_expand(const std::filesystem::path& dir, const FormDescriptor& form,
                         std::size_t precision, unsigned threads = 1);

}  // namespace satake
