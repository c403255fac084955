#include "satake/asymptotics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace satake;

TEST_CASE("delta_m closed form") {
  CHECK(delta_m(1) == doctest::Approx(1 - 8 / (3 * std::numbers::pi)).epsilon(1e-14));
  CHECK(delta_m(1) == doctest::Approx(0.151174).epsilon(1e-6));
  CHECK(delta_m(2) == doctest::Approx(0.173007).epsilon(1e-6));
  for (unsigned m = 1; m <= 1000; ++m) {
    const double d = delta_m(m);
    REQUIRE(d > 0);
    REQUIRE(d < 1);
  }
  CHECK_THROWS_AS(delta_m(0), std::invalid_argument);
}

TEST_CASE("partial sums from the registry") {
  const auto s = expand(find_form("delta"), 1000);
  const auto table = theta_table(s);
  auto stream = assemble_multiplicative(table, 1, 1000, StreamKind::power, 64);
  const std::uint64_t xs[] = {10, 1, 1000};
  const auto r = partial_sums(stream, xs);
  REQUIRE(r.checkpoints.size() == 3);
  CHECK(r.checkpoints[0].x == 1);
  CHECK(r.checkpoints[0].partial_sum == 1.0);
  double direct = 0;
  for (std::size_t n = 1; n <= 10; ++n)
    direct += std::abs(static_cast<double>(s.a(n)) / std::pow(static_cast<double>(n), 5.5));
  CHECK(r.checkpoints[1].partial_sum == doctest::Approx(direct).epsilon(1e-12));
  CHECK(r.checkpoints[1].ratio == doctest::Approx(direct * std::pow(std::log(10.0), r.delta) / 10));
  CHECK(r.checkpoints[2].partial_sum >= r.checkpoints[1].partial_sum);
  CHECK(r.checkpoints[2].ratio > 0);
  CHECK(r.delta == delta_m(1));
  const std::uint64_t bad[] = {1001};
  CHECK_THROWS_AS(partial_sums(stream, bad), std::invalid_argument);
}

TEST_CASE("partial summation identity") {
  ConstantStream ones(1.0, 100, 7);
  const auto r = partial_summation_check(ones, 2.0, 100);
  double expected = 0;
  for (int n = 1; n <= 100; ++n) expected += 1.0 / (n * n);
  CHECK(r.lhs == doctest::Approx(expected).epsilon(1e-15));
  CHECK(std::abs(r.rhs - r.lhs) <= 1e-12);

  const auto one = partial_summation_check(ones, 1.0, 1);
  CHECK(one.lhs == 1.0);
  CHECK(one.rhs == 1.0);
  CHECK_THROWS_AS(partial_summation_check(ones, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(partial_summation_check(ones, 1.0, 101), std::invalid_argument);

  const auto s = expand(find_form("delta"), 1000);
  const auto table = theta_table(s);
  for (unsigned m = 1; m <= 3; ++m) {
    auto stream = assemble_multiplicative(table, m, 1000, StreamKind::sym, 100);
    for (double beta : {0.5, 1.0, 1.5}) CHECK(partial_summation_check(stream, beta, 1000).residual <= 1e-9);
  }
}

TEST_CASE("abscissa probe on a constant stream") {
  ConstantStream ones(1.0, 1 << 16);
  const auto inc = abscissa_probe(ones, 2.0, 8, 15);
  REQUIRE(inc.size() == 8);
  CHECK(inc.front().j == 8);
  for (std::size_t k = 1; k < inc.size(); ++k) CHECK(inc[k].increment / inc[k - 1].increment == doctest::Approx(0.5).epsilon(0.01));
  CHECK(geometric_mean_ratio(inc) == doctest::Approx(0.5).epsilon(0.01));
  // sigma = 1: each block contributes about log 2.
  const auto flat = abscissa_probe(ones, 1.0, 10, 15);
  for (const auto& b : flat) CHECK(b.increment == doctest::Approx(std::log(2.0)).epsilon(1e-3));
  CHECK_THROWS_AS(abscissa_probe(ones, 1.0, 10, 16), std::invalid_argument);
  CHECK_THROWS_AS(abscissa_probe(ones, 0.0, 1, 2), std::invalid_argument);
}
