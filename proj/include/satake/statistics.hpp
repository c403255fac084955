#pragma once

// Sign densities of lambda_f(p^m) over primes, Sato-Tate / Deuring reference
// distributions and the Kolmogorov-Smirnov test against them.

#include "satake/forms.hpp"
#include "satake/hecke.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace satake {

struct DensityTriple {
  double positive = 0;
  double negative = 0;
  double zero = 0;
};

/// Limiting proportions of unramified primes with lambda_f(p^m) > 0, < 0, = 0.
/// std::invalid_argument for m < 1.
DensityTriple predicted_density(unsigned m, bool cm);

struct SignCounts {
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::uint64_t zero = 0;
  std::uint64_t total() const { return positive + negative + zero; }
  friend bool operator==(const SignCounts&, const SignCounts&) = default;
};

struct SignDensityReport {
  std::string form;
  bool cm = false;
  unsigned m = 0;
  std::size_t bound = 0;
  SignCounts counts;
  DensityTriple frequencies;
  DensityTriple predicted;
  DensityTriple abs_errors;
};

/// Counts exact-integer signs of a_f(p^m) over primes p <= bound, p not
/// dividing N. bound must not exceed the series precision.
SignDensityReport empirical_sign_density(const CoefficientSeries& series, unsigned m, std::size_t bound,
                                         unsigned threads = 1);

/// Same for several m in one pass over the primes.
std::vector<SignDensityReport> empirical_sign_densities(const CoefficientSeries& series,
                                                        std::span<const unsigned> ms, std::size_t bound,
                                                        unsigned threads = 1);

/// F(theta) = theta/pi - sin(2 theta)/(2 pi), the Sato-Tate CDF on [0, pi].
double sato_tate_cdf(double theta);
/// Inverse of sato_tate_cdf on [0, 1].
double sato_tate_quantile(double u);

struct Interval {
  double lo;
  double hi;
};

/// Open intervals of (0, pi) where sin((m+1) theta) > 0, resp. < 0.
std::vector<Interval> positivity_intervals(unsigned m);
std::vector<Interval> negativity_intervals(unsigned m);

enum class Measure { sato_tate, uniform };

double measure_of(const Interval& interval, Measure measure);
double measure_of_positivity_set(unsigned m, Measure measure);
double measure_of_negativity_set(unsigned m, Measure measure);

enum class Reference { sato_tate, deuring_mixture };

const char* to_string(Reference reference);

/// Reference CDF and its left limit. deuring_mixture is half uniform on
/// [0, pi] and half an atom at pi/2.
double reference_cdf(Reference reference, double theta);
double reference_cdf_left(Reference reference, double theta);
double reference_quantile(Reference reference, double u);

/// Two-sided KS distance sup |F_n - F|, taking left and right limits at every
/// sample point and at every atom of F.
double ks_statistic(std::vector<double> sample, Reference reference);

struct DistributionTestReport {
  std::string form;
  std::size_t bound = 0;
  double ks_statistic = 0;
  Reference reference = Reference::sato_tate;
  std::size_t sample_size = 0;
};

DistributionTestReport ks_test(const ThetaTable& table, Reference reference);

struct HistogramBin {
  double left;
  double right;
  std::uint64_t count;
  double reference_mass;  // probability of [left, right) under the reference
};

/// Equal-width bins over [0, pi]; the last bin is closed.
std::vector<HistogramBin> histogram(const ThetaTable& table, Reference reference, unsigned bins = 50);

}  // namespace satake
