#include "satake/statistics.hpp"

#include "satake/parallel.hpp"
#include "satake/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace satake {

using std::numbers::pi;

DensityTriple predicted_density(unsigned m, bool cm) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  const double md = m;
  if (!cm) {
    if (m % 2 == 1) return {0.5, 0.5, 0.0};
    const double t = std::tan(pi / (md + 1)) / (2 * pi);
    return {(md + 2) / (2 * (md + 1)) - t, md / (2 * (md + 1)) + t, 0.0};
  }
  if (m % 2 == 1) return {0.25, 0.25, 0.5};
  // Half the primes have theta_p = pi/2, where lambda_f(p^m) = sin((m+1) pi/2) = +-1.
  if (m % 4 == 0) return {(md + 2) / (4 * (md + 1)) + 0.5, md / (4 * (md + 1)), 0.0};
  return {(md + 2) / (4 * (md + 1)), md / (4 * (md + 1)) + 0.5, 0.0};
}

std::vector<SignDensityReport> empirical_sign_densities(const CoefficientSeries& series,
                                                        std::span<const unsigned> ms, std::size_t bound,
                                                        unsigned threads) {
  if (bound > series.precision())
    throw std::invalid_argument("sign-density bound exceeds the series precision");
  if (ms.empty()) return {};
  for (unsigned m : ms)
    if (m < 1) throw std::invalid_argument("m must be at least 1");
  const unsigned max_m = *std::max_element(ms.begin(), ms.end());

  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : primes_up_to(bound))
    if (!series.ramified(p)) primes.push_back(p);

  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(primes.size(), 64));
  std::vector<std::vector<SignCounts>> partial(chunks, std::vector<SignCounts>(ms.size()));
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t lo = primes.size() * c / chunks;
    const std::size_t hi = primes.size() * (c + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto seq = prime_power_coefficients(series, primes[i], max_m);
      for (std::size_t j = 0; j < ms.size(); ++j) {
        const int s = seq[ms[j]].sign();
        auto& cnt = partial[c][j];
        (s > 0 ? cnt.positive : s < 0 ? cnt.negative : cnt.zero) += 1;
      }
    }
  });

  std::vector<SignDensityReport> reports;
  for (std::size_t j = 0; j < ms.size(); ++j) {
    SignDensityReport r;
    r.form = series.form().name;
    r.cm = series.form().cm;
    r.m = ms[j];
    r.bound = bound;
    for (const auto& part : partial) {
      r.counts.positive += part[j].positive;
      r.counts.negative += part[j].negative;
      r.counts.zero += part[j].zero;
    }
    const double total = static_cast<double>(r.counts.total());
    if (total > 0)
      r.frequencies = {r.counts.positive / total, r.counts.negative / total, r.counts.zero / total};
    r.predicted = predicted_density(r.m, r.cm);
    r.abs_errors = {std::abs(r.frequencies.positive - r.predicted.positive),
                    std::abs(r.frequencies.negative - r.predicted.negative),
                    std::abs(r.frequencies.zero - r.predicted.zero)};
    reports.push_back(r);
  }
  return reports;
}

SignDensityReport empirical_sign_density(const CoefficientSeries& series, unsigned m, std::size_t bound,
                                         unsigned threads) {
  const unsigned ms[] = {m};
  return empirical_sign_densities(series, ms, bound, threads).front();
}

double sato_tate_cdf(double theta) {
  if (!(theta >= 0.0 && theta <= pi)) throw std::domain_error("theta must lie in [0, pi]");
  return theta / pi - std::sin(2 * theta) / (2 * pi);
}

double sato_tate_quantile(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("probability must lie in [0, 1]");
  // F is strictly increasing; bisection to full double resolution.
  double lo = 0.0;
  double hi = pi;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (sato_tate_cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<Interval> positivity_intervals(unsigned m) {
  std::vector<Interval> out;
  const double w = pi / (m + 1);
  for (unsigned j = 0; 2 * j + 1 <= m + 1; ++j) out.push_back({2 * j * w, (2 * j + 1) * w});
  return out;
}

std::vector<Interval> negativity_intervals(unsigned m) {
  std::vector<Interval> out;
  const double w = pi / (m + 1);
  for (unsigned j = 1; 2 * j <= m + 1; ++j) out.push_back({(2 * j - 1) * w, 2 * j * w});
  return out;
}

double measure_of(const Interval& interval, Measure measure) {
  if (measure == Measure::uniform) return (interval.hi - interval.lo) / pi;
  return (interval.hi - interval.lo) / pi -
         (std::sin(2 * interval.hi) - std::sin(2 * interval.lo)) / (2 * pi);
}

double measure_of_positivity_set(unsigned m, Measure measure) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  double total = 0;
  for (const auto& i : positivity_intervals(m)) total += measure_of(i, measure);
  return total;
}

double measure_of_negativity_set(unsigned m, Measure measure) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  double total = 0;
  for (const auto& i : negativity_intervals(m)) total += measure_of(i, measure);
  return total;
}

const char* to_string(Reference reference) {
  return reference == Reference::sato_tate ? "sato_tate" : "deuring_mixture";
}

double reference_cdf(Reference reference, double theta) {
  if (reference == Reference::sato_tate) return sato_tate_cdf(theta);
  if (!(theta >= 0.0 && theta <= pi)) throw std::domain_error("theta must lie in [0, pi]");
  return 0.5 * theta / pi + (theta >= pi / 2 ? 0.5 : 0.0);
}

double reference_cdf_left(Reference reference, double theta) {
  if (reference == Reference::sato_tate) return sato_tate_cdf(theta);
  if (!(theta >= 0.0 && theta <= pi)) throw std::domain_error("theta must lie in [0, pi]");
  return 0.5 * theta / pi + (theta > pi / 2 ? 0.5 : 0.0);
}

double reference_quantile(Reference reference, double u) {
  if (reference == Reference::sato_tate) return sato_tate_quantile(u);
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("probability must lie in [0, 1]");
  if (u < 0.25) return 2 * pi * u;
  if (u < 0.75) return pi / 2;
  return 2 * pi * (u - 0.5);
}

double ks_statistic(std::vector<double> sample, Reference reference) {
  if (sample.empty()) throw std::invalid_argument("KS test needs a non-empty sample");
  std::sort(sample.begin(), sample.end());
  std::vector<double> points = sample;
  if (reference == Reference::deuring_mixture) points.push_back(pi / 2);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const double n = static_cast<double>(sample.size());
  double d = 0;
  std::size_t below = 0;  // samples < v
  for (const double v : points) {
    while (below < sample.size() && sample[below] < v) ++below;
    std::size_t upto = below;  // samples <= v
    while (upto < sample.size() && sample[upto] == v) ++upto;
    d = std::max(d, std::abs(below / n - reference_cdf_left(reference, v)));
    d = std::max(d, std::abs(upto / n - reference_cdf(reference, v)));
  }
  return std::min(d, 1.0);
}

DistributionTestReport ks_test(const ThetaTable& table, Reference reference) {
  std::vector<double> sample;
  sample.reserve(table.entries.size());
  for (const auto& e : table.entries) sample.push_back(e.theta);
  DistributionTestReport r;
  r.form = table.form.name;
  r.bound = table.bound;
  r.reference = reference;
  r.sample_size = sample.size();
  r.ks_statistic = ks_statistic(std::move(sample), reference);
  return r;
}

std::vector<HistogramBin> histogram(const ThetaTable& table, Reference reference, unsigned bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  std::vector<HistogramBin> out(bins);
  for (unsigned b = 0; b < bins; ++b) {
    out[b].left = pi * b / bins;
    out[b].right = b + 1 == bins ? pi : pi * (b + 1) / bins;
    out[b].count = 0;
    const double hi = b + 1 == bins ? reference_cdf(reference, pi) : reference_cdf_left(reference, out[b].right);
    out[b].reference_mass = hi - reference_cdf_left(reference, out[b].left);
  }
  for (const auto& e : table.entries) {
    auto b = static_cast<unsigned>(e.theta / pi * bins);
    b = std::min(b, bins - 1);
    // Keep bin membership consistent with the half-open edges above.
    while (b > 0 && e.theta < out[b].left) --b;
    while (b + 1 < bins && e.theta >= out[b + 1].left) ++b;
    ++out[b].count;
  }
  return out;
}

}  // namespace satake
