#include "satake/primes.hpp"
#include "satake/sympower.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace satake;
using std::numbers::pi;

TEST_CASE("local sym^m coefficients") {
  auto c = sym_local_coefficients(pi / 2, 2, 3);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(-1.0));
  c = sym_local_coefficients(0.0, 2, 2);
  CHECK(c[2] == doctest::Approx(6.0));  // h_2(1,1,1)

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(0.0, pi);
  for (int i = 0; i < 1000; ++i) {
    const double th = angle(rng);
    const unsigned k = 1 + rng() % 12;
    const auto h = sym_local_coefficients(th, 1, k);
    CHECK(h[k] == doctest::Approx(lambda_prime_power_chebyshev(th, k)).epsilon(1e-9).scale(1.0));
    const unsigned m = 1 + rng() % 8;
    CHECK(sym_local_coefficients(th, m, 1)[1] ==
          doctest::Approx(lambda_prime_power_chebyshev(th, m)).epsilon(1e-9).scale(1.0));
  }
  CHECK_THROWS_AS(sym_local_coefficients(1.0, 0, 3), std::invalid_argument);
}

TEST_CASE("divisor bound") {
  CHECK(divisor_bound(6, 1) == 4);
  CHECK(divisor_bound(4, 2) == 6);
  for (unsigned m = 1; m <= 5; ++m) CHECK(divisor_bound(1, m) == 1);
  const auto table = divisor_bound_table(300, 3);
  for (std::uint64_t n = 1; n <= 300; ++n) {
    REQUIRE(table[n] == oracle::ordered_factorizations(n, 4));
    REQUIRE(divisor_bound(n, 3) == table[n]);
  }
  CHECK(divisor_bound_table(50, 1)[12] == 6);
}

TEST_CASE("streams: identities, multiplicativity, divisor bound") {
  const auto s = expand(find_form("delta"), 10000);
  const auto table = theta_table(s);

  auto sym1 = assemble_multiplicative(table, 1, 10000, StreamKind::sym, 999);
  const auto v1 = collect(sym1);
  REQUIRE(v1.size() == 10000);
  for (std::size_t n = 1; n <= 10000; ++n)
    REQUIRE(v1[n - 1] == doctest::Approx(lambda_at(s, n)).epsilon(1e-9).scale(1.0));

  for (unsigned m = 1; m <= 4; ++m) {
    auto sym = assemble_multiplicative(table, m, 10000, StreamKind::sym, 4096);
    auto pow = assemble_multiplicative(table, m, 10000, StreamKind::power, 777);
    const auto vs = collect(sym);
    const auto vp = collect(pow);
    CHECK(vs[0] == 1.0);
    CHECK(vp[0] == 1.0);
    CHECK(vs[11] == doctest::Approx(vs[3] * vs[2]));
    for (auto p : primes_up_to(10000)) REQUIRE(vs[p - 1] == doctest::Approx(vp[p - 1]).epsilon(1e-9).scale(1.0));
    const auto bound = divisor_bound_table(10000, m);
    for (std::size_t n = 1; n <= 10000; ++n) REQUIRE(std::abs(vs[n - 1]) <= bound[n] + 1e-6);

    std::mt19937_64 rng(m);
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t a = 1 + rng() % 100, b = 1 + rng() % 100;
      if (std::gcd(a, b) != 1) continue;
      for (const auto* v : {&vs, &vp}) {
        const double lhs = (*v)[a * b - 1];
        const double rhs = (*v)[a - 1] * (*v)[b - 1];
        REQUIRE(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
      }
    }
    // kind=power at p^e equals the exact lambda_f(p^(e m)).
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 97u}) {
      std::uint64_t pe = p;
      for (unsigned e = 1; pe <= 10000; ++e, pe *= p) {
        const auto exact = lambda_prime_power_exact(s, p, e * m);
        if (std::abs(exact.lambda_value) > 1e-6) REQUIRE((vp[pe - 1] > 0) == (exact.sign > 0));
        REQUIRE(vp[pe - 1] == doctest::Approx(exact.lambda_value).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("power streams for a level N form use lambda(p)^(e m) at ramified p") {
  const auto s = expand(find_form("lvl11"), 2000);
  const auto table = theta_table(s);
  auto pow = assemble_multiplicative(table, 2, 2000, StreamKind::power, 256);
  const auto v = collect(pow);
  CHECK(v[10] == doctest::Approx(std::pow(lambda_at(s, 11), 2)));
  CHECK(v[120] == doctest::Approx(std::pow(lambda_at(s, 11), 4)));
  CHECK(v[21] == doctest::Approx(v[1] * v[10]));
  CHECK_THROWS_AS(assemble_multiplicative(table, 2, 2000, StreamKind::sym), std::invalid_argument);
  CHECK_THROWS_AS(assemble_multiplicative(table, 2, 2001, StreamKind::power), std::invalid_argument);
}

TEST_CASE("block size does not change the stream") {
  const auto s = expand(find_form("delta"), 3000);
  const auto table = theta_table(s);
  auto a = assemble_multiplicative(table, 3, 3000, StreamKind::sym, 1);
  auto b = assemble_multiplicative(table, 3, 3000, StreamKind::sym, 1 << 20);
  CHECK(collect(a) == collect(b));
  CHECK(collect(a) == collect(a));  // reset() restarts
}
