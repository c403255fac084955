#include "satake/cache.hpp"

#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace satake {
namespace {

constexpr std::array<char, 8> kMagic{'S', 'A', 'T', 'K', 'C', 'O', 'E', 'F'};

template <class T>
void put_le(std::ostream& out, T v) {
  std::array<char, sizeof(T)> buf{};
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xffu);
  out.write(buf.data(), buf.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size()))
    throw std::runtime_error("cache file truncated");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

std::vector<std::uint8_t> encode_signed(const BigInt& v) {
  std::vector<std::uint8_t> out;
  if (v == 0) return out;
  // Smallest byte count B with -2^(8B-1) <= v < 2^(8B-1).
  std::size_t bytes = bit_length(v) / 8 + 1;
  if (v < 0 && bytes > 1 && -v == (BigInt(1) << (8 * (bytes - 1) - 1))) --bytes;
  BigInt u = v < 0 ? (BigInt(1) << (8 * bytes)) + v : v;
  out.reserve(bytes);
  for (std::size_t i = 0; i < bytes; ++i) {
    out.push_back(static_cast<std::uint8_t>(u & 0xff));
    u >>= 8;
  }
  return out;
}

BigInt decode_signed(std::span<const std::uint8_t> bytes) {
  BigInt u = 0;
  for (std::size_t i = bytes.size(); i-- > 0;) {
    u <<= 8;
    u += bytes[i];
  }
  if (!bytes.empty() && (bytes.back() & 0x80u)) u -= BigInt(1) << (8 * bytes.size());
  return u;
}

void write_cache(const std::filesystem::path& path, const CoefficientSeries& series) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open cache file " + tmp.string() + " for writing");
    const auto& form = series.form();
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kCacheFormatVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(form.name.size()));
    out.write(form.name.data(), static_cast<std::streamsize>(form.name.size()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(form.weight));
    put_le<std::uint64_t>(out, form.level);
    put_le<std::uint64_t>(out, series.precision());
    for (const auto& c : series.coefficients()) {
      const auto rec = encode_signed(c);
      put_le<std::uint32_t>(out, static_cast<std::uint32_t>(rec.size()));
      out.write(reinterpret_cast<const char*>(rec.data()), static_cast<std::streamsize>(rec.size()));
    }
    if (!out) throw std::runtime_error("failed writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CoefficientSeries read_cache(const std::filesystem::path& path, const FormDescriptor& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open cache file " + path.string());
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw std::runtime_error(path.string() + " is not a coefficient cache (bad magic)");
  if (const auto version = get_le<std::uint32_t>(in); version != kCacheFormatVersion)
    throw std::runtime_error("unsupported cache format version " + std::to_string(version));
  const auto name_len = get_le<std::uint32_t>(in);
  std::string name(name_len, '\0');
  if (!in.read(name.data(), name_len)) throw std::runtime_error("cache file truncated");
  const auto weight = get_le<std::uint32_t>(in);
  const auto level = get_le<std::uint64_t>(in);
  const auto precision = get_le<std::uint64_t>(in);
  if (name != expected.name || static_cast<int>(weight) != expected.weight || level != expected.level)
    throw std::runtime_error("cache header (" + name + ", k=" + std::to_string(weight) +
                             ", N=" + std::to_string(level) + ") does not match form " + expected.name);
  std::vector<BigInt> a(precision + 1);
  std::vector<std::uint8_t> buf;
  for (std::uint64_t n = 1; n <= precision; ++n) {
    const auto len = get_le<std::uint32_t>(in);
    buf.resize(len);
    if (len > 0 && !in.read(reinterpret_cast<char*>(buf.data()), len))
      throw std::runtime_error("cache file truncated");
    a[n] = decode_signed(buf);
  }
  return CoefficientSeries(expected, std::move(a));
}

std::filesystem::path cache_file(const std::filesystem::path& dir, const FormDescriptor& form,
                                 std::size_t precision) {
  return dir / (form.name + "_X" + std::to_string(precision) + ".coef");
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("SATAKE_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return ".satake-cache";
}

CacheLoad load_or_expand(const std::filesystem::path& dir, const FormDescriptor& form,
                         std::size_t precision, unsigned threads) {
  const auto path = cache_file(dir, form, precision);
  if (std::filesystem::exists(path)) return {read_cache(path, form), false};
  CoefficientSeries series = expand(form, precision, threads);
  write_cache(path, series);
  return {std::move(series), true};
}

}  // namespace satake
