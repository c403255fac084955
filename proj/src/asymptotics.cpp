#include "satake/asymptotics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace satake {

double delta_m(unsigned m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  const double md = m;
  const double cot = 1.0 / std::tan(std::numbers::pi / (2 * (md + 1)));
  return 1.0 - 4 * (md + 1) / (std::numbers::pi * md * (md + 2)) * cot;
}

std::vector<Checkpoint> partial_sums(CoefficientStream& stream, std::span<const std::uint64_t> checkpoints,
                                     double delta) {
  std::vector<std::uint64_t> xs(checkpoints.begin(), checkpoints.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (!xs.empty() && (xs.front() < 1 || xs.back() > stream.bound()))
    throw std::invalid_argument("checkpoints must lie in [1, " + std::to_string(stream.bound()) + "]");

  std::vector<Checkpoint> out;
  out.reserve(xs.size());
  long double sum = 0;
  auto next = xs.begin();
  stream.reset();
  while (next != xs.end()) {
    auto block = stream.next_block();
    if (!block) break;
    for (std::size_t i = 0; i < block->values.size() && next != xs.end(); ++i) {
      const std::uint64_t n = block->first + i;
      sum += std::abs(static_cast<long double>(block->values[i]));
      if (n == *next) {
        const double x = static_cast<double>(n);
        const double a = static_cast<double>(sum);
        // (log 1)^delta = 0, so R(1) = 0.
        out.push_back({n, a, a * std::pow(std::log(x), delta) / x});
        ++next;
      }
    }
  }
  return out;
}

AsymptoticsReport partial_sums(SymCoefficientStream& stream, std::span<const std::uint64_t> checkpoints) {
  AsymptoticsReport r;
  r.form = stream.form().name;
  r.m = stream.m();
  r.kind = stream.kind();
  r.bound = stream.bound();
  r.delta = delta_m(stream.m());
  r.checkpoints = partial_sums(static_cast<CoefficientStream&>(stream), checkpoints, r.delta);
  return r;
}

PartialSummation partial_summation_check(CoefficientStream& stream, double beta, std::uint64_t limit) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  if (limit < 1 || limit > stream.bound())
    throw std::invalid_argument("N must lie in [1, " + std::to_string(stream.bound()) + "]");
  long double lhs = 0;
  long double partial = 0;   // A(n)
  long double integral = 0;  // beta * int_1^n A(u) u^(-beta-1) du
  long double prev_power = 1;  // n^-beta for the previous n
  bool done = false;
  stream.reset();
  while (!done) {
    auto block = stream.next_block();
    if (!block) break;
    for (std::size_t i = 0; i < block->values.size(); ++i) {
      const std::uint64_t n = block->first + i;
      const long double power = std::pow(static_cast<long double>(n), -static_cast<long double>(beta));
      // A is constant A(n-1) on [n-1, n).
      if (n > 1) integral += partial * (prev_power - power);
      const long double v = std::abs(static_cast<long double>(block->values[i]));
      lhs += v * power;
      partial += v;
      prev_power = power;
      if (n == limit) {
        done = true;
        break;
      }
    }
  }
  const long double rhs = partial * prev_power + integral;
  return {static_cast<double>(lhs), static_cast<double>(rhs), static_cast<double>(std::abs(lhs - rhs) / lhs)};
}

std::vector<BlockIncrement> abscissa_probe(CoefficientStream& stream, double sigma, unsigned j_first,
                                           unsigned j_last) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  if (j_first > j_last || j_last >= 63 || (std::uint64_t{1} << (j_last + 1)) > stream.bound())
    throw std::invalid_argument("dyadic blocks must satisfy 2^(j+1) <= stream bound");
  std::vector<BlockIncrement> out;
  for (unsigned j = j_first; j <= j_last; ++j) out.push_back({sigma, j, 0.0});
  std::vector<long double> acc(out.size(), 0);
  const std::uint64_t lo = std::uint64_t{1} << j_first;
  const std::uint64_t hi = std::uint64_t{1} << (j_last + 1);
  stream.reset();
  bool done = false;
  while (!done) {
    auto block = stream.next_block();
    if (!block) break;
    for (std::size_t i = 0; i < block->values.size(); ++i) {
      const std::uint64_t n = block->first + i;
      if (n <= lo) continue;
      if (n > hi) {
        done = true;
        break;
      }
      // Block j holds 2^j < n <= 2^(j+1).
      const unsigned j = static_cast<unsigned>(std::bit_width(n - 1)) - 1;
      acc[j - j_first] += std::abs(static_cast<long double>(block->values[i])) *
                          std::pow(static_cast<long double>(n), -static_cast<long double>(sigma));
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k].increment = static_cast<double>(acc[k]);
  return out;
}

double geometric_mean_ratio(std::span<const BlockIncrement> increments) {
  if (increments.size() < 2) throw std::invalid_argument("need at least two block increments");
  long double log_sum = 0;
  for (std::size_t k = 1; k < increments.size(); ++k)
    log_sum += std::log(static_cast<long double>(increments[k].increment) / increments[k - 1].increment);
  return static_cast<double>(std::exp(log_sum / (increments.size() - 1)));
}

}  // namespace satake
