#pragma once

// Partial sums of |coefficients|, the logarithmic saving exponent delta_m,
// the partial-summation identity and a dyadic probe of the abscissa of
// absolute convergence.

#include "satake/sympower.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace satake {

/// 1 - 4(m+1) / (pi m (m+2)) * cot(pi / (2(m+1))).
double delta_m(unsigned m);

struct Checkpoint {
  std::uint64_t x;
  double partial_sum;  // A(x) = sum_{n<=x} |value(n)|
  double ratio;        // A(x) (log x)^delta / x
};

struct BlockIncrement {
  double sigma;
  unsigned j;
  double increment;  // sum_{2^j < n <= 2^(j+1)} |value(n)| n^-sigma
};

struct AsymptoticsReport {
  std::string form;
  unsigned m = 0;
  StreamKind kind = StreamKind::power;
  std::uint64_t bound = 0;
  double delta = 0;
  std::vector<Checkpoint> checkpoints;
  std::vector<BlockIncrement> block_increments;
};

/// A(x) and R(x) at each checkpoint in one pass. Checkpoints are sorted and
/// must lie in [1, stream.bound()].
std::vector<Checkpoint> partial_sums(CoefficientStream& stream, std::span<const std::uint64_t> checkpoints,
                                     double delta);

AsymptoticsReport partial_sums(SymCoefficientStream& stream, std::span<const std::uint64_t> checkpoints);

struct PartialSummation {
  double lhs;
  double rhs;
  double residual;  // |lhs - rhs| / lhs
};

/// sum_{n<=N} |a(n)| n^-beta against A(N) N^-beta + beta int_1^N A(u) u^(-beta-1) du,
/// the integral taken exactly over the step function A.
PartialSummation partial_summation_check(CoefficientStream& stream, double beta, std::uint64_t limit);

/// T_j for j in [j_first, j_last]; needs 2^(j_last+1) <= stream.bound().
std::vector<BlockIncrement> abscissa_probe(CoefficientStream& stream, double sigma, unsigned j_first,
                                           unsigned j_last);

/// Geometric mean of T_{j+1} / T_j over consecutive increments.
double geometric_mean_ratio(std::span<const BlockIncrement> increments);

}  // namespace satake
