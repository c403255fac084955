#include "satake/statistics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace satake;
using std::numbers::pi;

TEST_CASE("predicted densities") {
  auto d = predicted_density(1, false);
  CHECK(d.positive == 0.5);
  CHECK(d.negative == 0.5);
  CHECK(d.zero == 0.0);
  d = predicted_density(2, false);
  CHECK(d.positive == doctest::Approx(0.391002).epsilon(1e-6));
  CHECK(d.negative == doctest::Approx(0.608998).epsilon(1e-6));
  d = predicted_density(4, false);
  CHECK(d.positive == doctest::Approx(0.484367).epsilon(1e-6));
  d = predicted_density(2, true);
  CHECK(d.positive == doctest::Approx(1.0 / 3));
  CHECK(d.negative == doctest::Approx(2.0 / 3));
  d = predicted_density(4, true);
  CHECK(d.positive == doctest::Approx(0.8));
  CHECK(d.negative == doctest::Approx(0.2));
  d = predicted_density(3, true);
  CHECK(d.zero == 0.5);
  CHECK_THROWS_AS(predicted_density(0, false), std::invalid_argument);

  for (unsigned m = 1; m <= 100; ++m)
    for (bool cm : {false, true}) {
      const auto t = predicted_density(m, cm);
      CHECK(t.positive >= 0);
      CHECK(t.negative >= 0);
      CHECK(t.zero >= 0);
      CHECK(std::abs(t.positive + t.negative + t.zero - 1) <= 1e-12);
    }
}

TEST_CASE("Sato-Tate CDF") {
  CHECK(sato_tate_cdf(0.0) == 0.0);
  CHECK(sato_tate_cdf(pi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sato_tate_cdf(pi / 2) == doctest::Approx(0.5).epsilon(1e-15));
  const double simpson = oracle::simpson(oracle::sato_tate_density, 0.0, pi / 3, 10000);
  CHECK(std::abs(simpson - 0.195501) < 1e-6);
  CHECK(std::abs(sato_tate_cdf(pi / 3) - simpson) < 1e-12);
  CHECK_THROWS_AS(sato_tate_cdf(-1.0), std::domain_error);
  for (double u : {0.0, 0.1, 0.5, 0.77, 1.0}) CHECK(sato_tate_cdf(sato_tate_quantile(u)) == doctest::Approx(u));
}

TEST_CASE("positivity-set measures") {
  CHECK(measure_of_positivity_set(2, Measure::sato_tate) == doctest::Approx(0.391002).epsilon(1e-6));
  const double oracle_m2 = oracle::simpson(oracle::sato_tate_density, 0.0, pi / 3, 10000) +
                           oracle::simpson(oracle::sato_tate_density, 2 * pi / 3, pi, 10000);
  CHECK(std::abs(measure_of_positivity_set(2, Measure::sato_tate) - oracle_m2) < 1e-10);
  CHECK(measure_of_positivity_set(1, Measure::uniform) == doctest::Approx(0.5));
  for (unsigned m = 1; m <= 50; ++m) {
    const double pos = measure_of_positivity_set(m, Measure::sato_tate);
    CHECK(std::abs(pos - predicted_density(m, false).positive) <= 1e-10);
    CHECK(std::abs(pos + measure_of_negativity_set(m, Measure::sato_tate) - 1) <= 1e-12);
    if (m % 2 == 1) {
      CHECK(std::abs(pos - 0.5) <= 1e-10);
      CHECK(std::abs(pos - measure_of_negativity_set(m, Measure::sato_tate)) <= 1e-10);
    }
    // Deuring: half uniform on the positivity set, half the atom at pi/2.
    const double atom = lambda_prime_power_chebyshev(pi / 2, m);
    const double cm_pos = 0.5 * measure_of_positivity_set(m, Measure::uniform) + (atom > 0.5 ? 0.5 : 0.0);
    CHECK(std::abs(cm_pos - predicted_density(m, true).positive) <= 1e-12);
  }
}

TEST_CASE("Simpson oracle vs closed-form interval measures") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(0.0, pi);
  for (int i = 0; i < 1000; ++i) {
    double a = angle(rng), b = angle(rng);
    if (a > b) std::swap(a, b);
    const double s = oracle::simpson(oracle::sato_tate_density, a, b, 2000);
    CHECK(std::abs(s - measure_of({a, b}, Measure::sato_tate)) <= 1e-8);
  }
}

TEST_CASE("KS statistic") {
  CHECK(ks_statistic({pi / 2}, Reference::sato_tate) == doctest::Approx(0.5));
  // A single point at the Deuring atom: F_n jumps 0 -> 1, F jumps 0.25 -> 0.75.
  CHECK(ks_statistic({pi / 2}, Reference::deuring_mixture) == doctest::Approx(0.25));
  CHECK(ks_statistic({0.0, pi}, Reference::deuring_mixture) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ks_statistic({}, Reference::sato_tate), std::invalid_argument);

  for (auto ref : {Reference::sato_tate, Reference::deuring_mixture}) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> sample(100000);
    for (auto& x : sample) x = reference_quantile(ref, unif(rng));
    const double d = ks_statistic(sample, ref);
    CHECK(d <= 0.01);
    CHECK(d >= 0.0);
  }
  // Brute-force check of the sup on a small sample against a fine grid.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(0.0, pi);
  std::vector<double> sample(40);
  for (auto& x : sample) x = angle(rng);
  sample[3] = sample[7] = pi / 2;
  for (auto ref : {Reference::sato_tate, Reference::deuring_mixture}) {
    double grid = 0;
    for (int i = 0; i <= 200000; ++i) {
      const double t = pi * i / 200000;
      double below = 0, upto = 0;
      for (double x : sample) {
        below += x < t;
        upto += x <= t;
      }
      grid = std::max(grid, std::abs(upto / 40 - reference_cdf(ref, t)));
      grid = std::max(grid, std::abs(below / 40 - reference_cdf_left(ref, t)));
    }
    const double d = ks_statistic(sample, ref);
    CHECK(d >= grid - 1e-12);
    CHECK(d <= grid + 1e-4);
  }
}

TEST_CASE("empirical sign density partitions the unramified primes") {
  for (const auto& f : builtin_forms()) {
    const auto s = expand(f, 100);
    std::size_t ramified = 0;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u}) ramified += (f.level % p == 0);
    for (unsigned m = 1; m <= 4; ++m) {
      const auto r = empirical_sign_density(s, m, 100);
      CHECK(r.counts.total() == 25 - ramified);
      CHECK(std::abs(r.frequencies.positive + r.frequencies.negative + r.frequencies.zero - 1) <= 1e-12);
      CHECK(r.predicted.positive == predicted_density(m, f.cm).positive);
    }
  }
  const auto s = expand(find_form("lvl32"), 1000);
  CHECK_THROWS_AS(empirical_sign_density(s, 1, 1001), std::invalid_argument);
  const unsigned ms[] = {1, 2, 3, 4};
  const auto a = empirical_sign_densities(s, ms, 1000, 1);
  const auto b = empirical_sign_densities(s, ms, 1000, 3);
  for (std::size_t i = 0; i < 4; ++i) CHECK(a[i].counts == b[i].counts);
  // CM, m odd: exactly the primes with a(p) = 0 have lambda(p^m) = 0.
  CHECK(a[0].counts.zero == a[2].counts.zero);
  CHECK(a[1].counts.zero == 0);
}

TEST_CASE("histogram masses") {
  const auto s = expand(find_form("lvl32"), 5000);
  const auto t = theta_table(s);
  const auto h = histogram(t, Reference::deuring_mixture, 50);
  double mass = 0;
  std::uint64_t count = 0;
  for (const auto& b : h) {
    mass += b.reference_mass;
    count += b.count;
  }
  CHECK(mass == doctest::Approx(1.0));
  CHECK(count == t.entries.size());
  CHECK(h[25].reference_mass == doctest::Approx(0.5 + 0.01));  // the bin holding pi/2
}
