#include "satake/sympower.hpp"

#include "satake/primes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace satake {

const char* to_string(StreamKind kind) { return kind == StreamKind::sym ? "sym" : "power"; }

std::vector<double> sym_local_coefficients(double theta, unsigned m, unsigned max_exponent) {
  if (m == 0) throw std::invalid_argument("symmetric power m must be positive");
  std::vector<std::complex<double>> c(max_exponent + 1, 0.0);
  c[0] = 1.0;
  // Multiply by 1 / (1 - alpha T) for each eigenvalue alpha.
  for (unsigned j = 0; j <= m; ++j) {
    const double angle = (static_cast<double>(m) - 2.0 * j) * theta;
    const std::complex<double> alpha(std::cos(angle), std::sin(angle));
    for (unsigned k = 1; k <= max_exponent; ++k) c[k] += alpha * c[k - 1];
  }
  std::vector<double> out(max_exponent + 1);
  for (unsigned k = 0; k <= max_exponent; ++k) {
    if (std::abs(c[k].imag()) > 1e-6)
      throw std::logic_error("sym^" + std::to_string(m) + " local coefficient h_" + std::to_string(k) +
                             " has imaginary residue " + std::to_string(c[k].imag()));
    out[k] = c[k].real();
  }
  return out;
}

SymCoefficientStream::SymCoefficientStream(const ThetaTable& table, unsigned m, std::uint64_t bound,
                                           StreamKind kind, std::size_t block_size)
    : form_(table.form), m_(m), bound_(bound), kind_(kind), block_size_(block_size) {
  if (m == 0) throw std::invalid_argument("m must be positive");
  if (bound == 0) throw std::invalid_argument("stream bound must be positive");
  if (block_size == 0) throw std::invalid_argument("block size must be positive");
  if (bound > table.bound)
    throw std::invalid_argument("stream bound " + std::to_string(bound) + " exceeds theta table bound " +
                                std::to_string(table.bound));
  if (kind == StreamKind::sym && table.form.level != 1)
    throw std::invalid_argument("symmetric-power streams are defined for level 1 forms only (" +
                                table.form.name + " has level " + std::to_string(table.form.level) + ")");

  auto ramified = table.ramified.begin();
  auto add_prime = [&](std::uint64_t p, auto&& local_values) {
    unsigned max_e = 0;
    for (std::uint64_t pe = 1; pe <= bound / p; pe *= p) ++max_e;
    primes_.push_back(p);
    offsets_.push_back(locals_.size());
    local_values(max_e);
  };
  auto add_ramified = [&](const RamifiedEntry& r) {
    add_prime(r.p, [&](unsigned max_e) {
      for (unsigned e = 0; e <= max_e; ++e) locals_.push_back(std::pow(r.lambda, static_cast<double>(e * m)));
    });
  };
  for (const auto& entry : table.entries) {
    if (entry.p > bound) break;
    for (; ramified != table.ramified.end() && ramified->p < entry.p; ++ramified)
      if (ramified->p <= bound) add_ramified(*ramified);
    add_prime(entry.p, [&](unsigned max_e) {
      if (kind == StreamKind::sym) {
        const auto h = sym_local_coefficients(entry.theta, m, max_e);
        locals_.insert(locals_.end(), h.begin(), h.end());
      } else {
        for (unsigned e = 0; e <= max_e; ++e) locals_.push_back(lambda_prime_power_chebyshev(entry.theta, e * m));
      }
    });
  }
  for (; ramified != table.ramified.end(); ++ramified)
    if (ramified->p <= bound) add_ramified(*ramified);
  offsets_.push_back(locals_.size());
}

std::size_t SymCoefficientStream::prime_index(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p)
    throw std::logic_error("prime " + std::to_string(p) + " missing from stream tables");
  return static_cast<std::size_t>(it - primes_.begin());
}

double SymCoefficientStream::local(std::uint64_t p, unsigned e) const {
  const std::size_t i = prime_index(p);
  if (offsets_[i] + e >= offsets_[i + 1])
    throw std::out_of_range("exponent " + std::to_string(e) + " beyond stream bound at p = " + std::to_string(p));
  return locals_[offsets_[i] + e];
}

std::optional<StreamBlock> SymCoefficientStream::next_block() {
  if (next_ > bound_) return std::nullopt;
  const std::uint64_t lo = next_;
  const std::uint64_t hi = std::min<std::uint64_t>(bound_, lo + block_size_ - 1);
  const std::size_t len = hi - lo + 1;
  values_.assign(len, 1.0);
  residual_.resize(len);
  for (std::size_t i = 0; i < len; ++i) residual_[i] = lo + i;

  for (std::size_t pi = 0; pi < primes_.size(); ++pi) {
    const std::uint64_t p = primes_[pi];
    if (p > hi / p) break;
    const double* loc = locals_.data() + offsets_[pi];
    for (std::uint64_t n = (lo + p - 1) / p * p; n <= hi; n += p) {
      const std::size_t i = n - lo;
      std::uint64_t r = residual_[i];
      unsigned e = 0;
      do {
        r /= p;
        ++e;
      } while (r % p == 0);
      residual_[i] = r;
      values_[i] *= loc[e];
    }
  }
  // What is left above sqrt(hi) is a single prime.
  for (std::size_t i = 0; i < len; ++i)
    if (residual_[i] > 1) values_[i] *= locals_[offsets_[prime_index(residual_[i])] + 1];

  next_ = hi + 1;
  return StreamBlock{lo, values_};
}

SymCoefficientStream assemble_multiplicative(const ThetaTable& table, unsigned m, std::uint64_t bound,
                                             StreamKind kind, std::size_t block_size) {
  return SymCoefficientStream(table, m, bound, kind, block_size);
}

std::vector<double> collect(CoefficientStream& stream) {
  stream.reset();
  std::vector<double> out;
  out.reserve(stream.bound());
  while (auto block = stream.next_block()) out.insert(out.end(), block->values.begin(), block->values.end());
  return out;
}

std::uint64_t divisor_bound(std::uint64_t n, unsigned m) {
  if (n == 0) throw std::invalid_argument("divisor_bound needs n >= 1");
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    divisors.push_back(d);
    if (d * d != n) divisors.push_back(n / d);
  }
  std::sort(divisors.begin(), divisors.end());
  // f_1 = 1 on divisors of n; f_{j+1}(d) = sum_{e | d} f_j(e).
  std::vector<std::uint64_t> f(divisors.size(), 1);
  for (unsigned j = 0; j < m; ++j) {
    std::vector<std::uint64_t> g(divisors.size(), 0);
    for (std::size_t a = 0; a < divisors.size(); ++a)
      for (std::size_t b = 0; b <= a; ++b)
        if (divisors[a] % divisors[b] == 0) g[a] += f[b];
    f = std::move(g);
  }
  return f.back();
}

std::vector<std::uint64_t> divisor_bound_table(std::uint64_t limit, unsigned m) {
  std::vector<std::uint64_t> f(limit + 1, 1);
  f[0] = 0;
  for (unsigned j = 0; j < m; ++j) {
    std::vector<std::uint64_t> g(limit + 1, 0);
    for (std::uint64_t d = 1; d <= limit; ++d)
      for (std::uint64_t k = d; k <= limit; k += d) g[k] += f[d];
    f = std::move(g);
  }
  return f;
}

}  // namespace satake
