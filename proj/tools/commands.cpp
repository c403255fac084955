#include "commands.hpp"

#include "satake/asymptotics.hpp"
#include "satake/cache.hpp"
#include "satake/primes.hpp"
#include "satake/report.hpp"
#include "satake/series.hpp"
#include "satake/statistics.hpp"
#include "satake/sympower.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace satake::cli {
namespace {

std::filesystem::path cache_dir(const RunConfig& config) {
  return config.cache_dir.empty() ? default_cache_dir() : config.cache_dir;
}

void check_precision(const RunConfig& config, std::ostream& out) {
  if (config.precision < 1) throw UsageError("--X must be a positive integer");
  if (config.precision > kLargePrecision) {
    if (!config.allow_large)
      throw UsageError("--X above " + std::to_string(kLargePrecision) + " needs --large");
    // cpp_int records, residues for up to 7 primes, two transform buffers.
    const double x = static_cast<double>(config.precision);
    const double bytes = x * (32 + 16) + 7 * x * 4 + 2.0 * std::bit_ceil(2 * config.precision + 1) * 4;
    out << "memory estimate for X=" << config.precision << ": ~" << std::fixed << std::setprecision(0)
        << bytes / (1 << 20) << " MiB\n"
        << std::defaultfloat << std::setprecision(6);
  }
}

std::uint64_t statistics_bound(const RunConfig& config) {
  const std::uint64_t b = config.bound == 0 ? config.precision : config.bound;
  if (b > config.precision) throw UsageError("--x must not exceed --X");
  return b;
}

CoefficientSeries load_series(const RunConfig& config, const FormDescriptor& form, std::ostream& out) {
  check_precision(config, out);
  const auto dir = cache_dir(config);
  if (!std::filesystem::exists(cache_file(dir, form, config.precision)))
    out << "notice: no cached expansion of " << form.name << " at X=" << config.precision << ", expanding\n";
  return load_or_expand(dir, form, config.precision, config.threads).series;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

bool want_csv(const RunConfig& c) { return c.format == "csv" || c.format == "both"; }
bool want_json(const RunConfig& c) { return c.format == "json" || c.format == "both"; }

RunMetadata metadata(const RunConfig& config) {
  return {config.command, config.precision, utc_timestamp()};
}

std::vector<StreamKind> kinds(const RunConfig& config) {
  if (config.kind == "sym") return {StreamKind::sym};
  if (config.kind == "power") return {StreamKind::power};
  if (config.kind == "both") return {StreamKind::power, StreamKind::sym};
  throw UsageError("--kind must be sym, power or both");
}

std::pair<unsigned, unsigned> block_range(const RunConfig& config, std::uint64_t bound) {
  if (config.blocks.empty()) {
    const unsigned last = static_cast<unsigned>(std::bit_width(bound)) - 2;
    return {last >= 6 ? last - 5 : 0, last};
  }
  const auto dash = config.blocks.find('-');
  if (dash == std::string::npos) throw UsageError("--blocks expects first-last, e.g. 14-19");
  try {
    const unsigned first = static_cast<unsigned>(std::stoul(config.blocks.substr(0, dash)));
    const unsigned last = static_cast<unsigned>(std::stoul(config.blocks.substr(dash + 1)));
    if (first > last) throw UsageError("--blocks: first must not exceed last");
    return {first, last};
  } catch (const std::logic_error&) {
    throw UsageError("--blocks expects first-last, e.g. 14-19");
  }
}

struct SelfCheck {
  std::ostream& out;
  int failures = 0;
  void operator()(const std::string& name, bool ok, const std::string& detail = {}) {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out << "  (" << detail << ")";
    out << '\n';
    if (!ok) ++failures;
  }
};

// Independent multiply-out of the eta product, factor by factor.
std::vector<BigInt> schoolbook_expansion(const FormDescriptor& form, std::size_t x) {
  std::vector<BigInt> c(x + 1, 0);
  c[0] = 1;
  for (const auto& f : form.eta_recipe)
    for (std::int32_t rep = 0; rep < f.exponent; ++rep)
      for (std::size_t step = f.multiplier; step <= x; step += f.multiplier)
        for (std::size_t i = x; i >= step; --i) c[i] -= c[i - step];
  const auto shift = q_shift(form);
  std::vector<BigInt> a(x + 1, 0);
  for (std::size_t n = shift; n <= x; ++n) a[n] = c[n - shift];
  return a;
}

}  // namespace

FormDescriptor resolve_form(const RunConfig& config) {
  if (config.recipe.empty()) {
    try {
      return find_form(config.form);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  FormDescriptor f;
  f.name = config.form.empty() || config.form == "delta" ? "custom" : config.form;
  f.weight = config.weight;
  f.level = config.level;
  f.cm = config.cm;
  std::stringstream ss(config.recipe);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto caret = item.find('^');
    try {
      if (caret == std::string::npos) throw std::invalid_argument("missing ^");
      f.eta_recipe.push_back({static_cast<std::uint32_t>(std::stoul(item.substr(0, caret))),
                              static_cast<std::int32_t>(std::stol(item.substr(caret + 1)))});
    } catch (const std::logic_error&) {
      throw UsageError("--recipe expects d^e terms separated by commas, e.g. 1^2,11^2");
    }
  }
  if (f.weight == 0) {
    std::int64_t sum = 0;
    for (const auto& e : f.eta_recipe) sum += e.exponent;
    f.weight = static_cast<int>(sum / 2);
  }
  try {
    validate(f);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid recipe: ") + e.what());
  }
  return f;
}

int cmd_expand(const RunConfig& config, std::ostream& out) {
  const FormDescriptor form = resolve_form(config);
  check_precision(config, out);
  const auto dir = cache_dir(config);
  const auto loaded = load_or_expand(dir, form, config.precision, config.threads);
  const auto& s = loaded.series;
  out << "form " << form.name << "  k=" << form.weight << "  N=" << form.level << "  cm=" << (form.cm ? 1 : 0)
      << "  X=" << s.precision() << '\n';
  out << "cache " << cache_file(dir, form, config.precision).string() << (loaded.computed ? " (written)" : " (reused)")
      << '\n';
  for (std::size_t n = 1; n <= std::min<std::size_t>(20, s.precision()); ++n)
    out << "a(" << n << ") = " << s.a(n) << '\n';
  return kPass;
}

int cmd_sign_density(const RunConfig& config, std::ostream& out) {
  const FormDescriptor form = resolve_form(config);
  if (config.ms.empty() || std::find(config.ms.begin(), config.ms.end(), 0u) != config.ms.end())
    throw UsageError("--m values must be positive");
  const auto series = load_series(config, form, out);
  const auto bound = statistics_bound(config);
  const auto reports = empirical_sign_densities(series, config.ms, bound, config.threads);

  bool ok = true;
  out << "form   m  X        pos        neg        zero       pred_pos   pred_neg   pred_zero\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(6) << r.form << ' ' << std::setw(2) << r.m << ' ' << std::setw(8) << r.bound
        << std::right << std::fixed << std::setprecision(6) << ' ' << r.frequencies.positive << ' '
        << r.frequencies.negative << ' ' << r.frequencies.zero << ' ' << r.predicted.positive << ' '
        << r.predicted.negative << ' ' << r.predicted.zero << std::defaultfloat << '\n';
    const double worst = std::max({r.abs_errors.positive, r.abs_errors.negative, r.abs_errors.zero});
    if (worst > config.tolerance) ok = false;
  }
  if (want_csv(config)) write_text(config.out_dir / "sign_density.csv", sign_density_csv(reports));
  if (want_json(config))
    write_text(config.out_dir / "sign_density.json", sign_density_json(reports, metadata(config)).dump(2) + "\n");
  if (config.check) {
    out << (ok ? "check passed" : "check FAILED") << ": max abs error vs predicted <= " << config.tolerance << '\n';
    return ok ? kPass : kCheckFailure;
  }
  return kPass;
}

int cmd_distribution(const RunConfig& config, std::ostream& out) {
  const FormDescriptor form = resolve_form(config);
  Reference ref;
  if (config.reference == "auto")
    ref = form.cm ? Reference::deuring_mixture : Reference::sato_tate;
  else if (config.reference == "sato_tate")
    ref = Reference::sato_tate;
  else if (config.reference == "deuring_mixture")
    ref = Reference::deuring_mixture;
  else
    throw UsageError("--reference must be auto, sato_tate or deuring_mixture");
  if (config.bins == 0) throw UsageError("--bins must be positive");

  const auto series = load_series(config, form, out);
  ThetaTable table = theta_table(series);
  const auto bound = statistics_bound(config);
  std::erase_if(table.entries, [&](const ThetaEntry& e) { return e.p > bound; });
  table.bound = bound;
  if (table.entries.empty()) throw UsageError("no unramified primes up to the requested bound");

  const DistributionTestReport report = ks_test(table, ref);
  const auto bins = histogram(table, ref, config.bins);
  out << "form " << report.form << "  X=" << report.bound << "  reference=" << to_string(ref)
      << "  sample=" << report.sample_size << "  KS=" << format_double(report.ks_statistic)
      << "  clamp_events=" << table.clamp_events << '\n';
  const DistributionTestReport reports[] = {report};
  if (want_csv(config)) {
    write_text(config.out_dir / "distribution.csv", distribution_csv(reports));
    write_text(config.out_dir / ("histogram_" + form.name + ".csv"), histogram_csv(bins));
  }
  if (want_json(config))
    write_text(config.out_dir / "distribution.json", distribution_json(reports, metadata(config)).dump(2) + "\n");
  if (config.check) {
    const bool ok = report.ks_statistic <= config.max_ks;
    out << (ok ? "check passed" : "check FAILED") << ": KS <= " << config.max_ks << '\n';
    return ok ? kPass : kCheckFailure;
  }
  return kPass;
}

int cmd_asymptotics(const RunConfig& config, std::ostream& out) {
  const FormDescriptor form = resolve_form(config);
  if (config.ms.empty() || std::find(config.ms.begin(), config.ms.end(), 0u) != config.ms.end())
    throw UsageError("--m values must be positive");
  const auto ks = kinds(config);
  if (form.level != 1 && std::find(ks.begin(), ks.end(), StreamKind::sym) != ks.end())
    throw UsageError("symmetric-power streams need a level 1 form; use --kind power");
  const auto series = load_series(config, form, out);
  const std::uint64_t bound = statistics_bound(config);
  if (bound < 4) throw UsageError("--x must be at least 4");

  std::vector<std::uint64_t> checkpoints = config.checkpoints;
  if (checkpoints.empty()) {
    for (std::uint64_t c = 10; c < bound; c *= 10) checkpoints.push_back(c);
    checkpoints.push_back(bound);
  }
  for (auto c : checkpoints)
    if (c < 1 || c > bound) throw UsageError("checkpoints must lie in [1, x]");
  for (double s : config.sigmas)
    if (!(s > 0)) throw UsageError("--sigma values must be positive");
  for (double b : config.betas)
    if (!(b > 0)) throw UsageError("--beta values must be positive");
  const auto [j_first, j_last] = block_range(config, bound);
  if (j_last >= 63 || (std::uint64_t{1} << (j_last + 1)) > bound)
    throw UsageError("--blocks: 2^(last+1) must not exceed x");

  const ThetaTable table = theta_table(series);
  std::vector<AsymptoticsReport> reports;
  bool ok = true;
  for (unsigned m : config.ms) {
    for (StreamKind kind : ks) {
      auto stream = assemble_multiplicative(table, m, bound, kind);
      AsymptoticsReport r = partial_sums(stream, checkpoints);
      for (double sigma : config.sigmas) {
        const auto inc = abscissa_probe(stream, sigma, j_first, j_last);
        r.block_increments.insert(r.block_increments.end(), inc.begin(), inc.end());
        if (inc.size() >= 2) {
          const double gm = geometric_mean_ratio(inc);
          const double target = std::exp2(1 - sigma);
          const bool pass = std::abs(gm / target - 1) <= 0.10;
          ok = ok && pass;
          out << r.form << " m=" << m << ' ' << to_string(kind) << " sigma=" << sigma << " blocks " << j_first << ".."
              << j_last << ": geometric mean ratio " << format_double(gm) << " vs 2^(1-sigma) = "
              << format_double(target) << '\n';
        }
      }
      for (double beta : config.betas) {
        const auto ps = partial_summation_check(stream, beta, bound);
        ok = ok && ps.residual <= 1e-9;
        out << r.form << " m=" << m << ' ' << to_string(kind) << " partial summation beta=" << beta
            << " residual " << format_double(ps.residual) << '\n';
      }
      for (const auto& c : r.checkpoints)
        out << r.form << " m=" << m << ' ' << to_string(kind) << " x=" << c.x << " A=" << format_double(c.partial_sum)
            << " R=" << format_double(c.ratio) << '\n';
      // Trend of R and A/x between the first and last checkpoint with x >= 2.
      std::vector<Checkpoint> usable;
      std::copy_if(r.checkpoints.begin(), r.checkpoints.end(), std::back_inserter(usable),
                   [](const Checkpoint& c) { return c.x >= 2; });
      if (usable.size() >= 2) {
        const auto& lo = usable[usable.size() - 2];
        const auto& hi = usable.back();
        ok = ok && std::abs(hi.ratio / lo.ratio - 1) < 0.15 &&
             hi.partial_sum / static_cast<double>(hi.x) < lo.partial_sum / static_cast<double>(lo.x);
      }
      reports.push_back(std::move(r));
    }
  }
  if (want_csv(config)) {
    write_text(config.out_dir / "asymptotics_checkpoints.csv", checkpoints_csv(reports));
    write_text(config.out_dir / "asymptotics_increments.csv", increments_csv(reports));
  }
  if (want_json(config))
    write_text(config.out_dir / "asymptotics.json", asymptotics_json(reports, metadata(config)).dump(2) + "\n");
  if (config.check) {
    out << (ok ? "check passed" : "check FAILED")
        << ": block ratios within 10% of 2^(1-sigma), partial summation residual <= 1e-9, R drift < 15% and "
           "A(x)/x decreasing over the last two checkpoints\n";
    return ok ? kPass : kCheckFailure;
  }
  return kPass;
}

int cmd_selftest(const RunConfig& config, std::ostream& out) {
  check_precision(config, out);
  const std::size_t x = config.precision;
  if (x < 100) throw UsageError("selftest needs --X >= 100");
  SelfCheck check{out};
  std::mt19937_64 rng(config.seed);

  {
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      IntSeries a(300), b(300);
      for (int t = 0; t < 30; ++t) {
        a[rng() % 301] = BigInt(static_cast<std::int64_t>(rng() >> 8)) * (rng() & 1 ? 1 : -1);
        b[rng() % 301] = BigInt(static_cast<std::int64_t>(rng() >> 8)) * (rng() & 1 ? 1 : -1);
      }
      ok = mul(a, b, config.threads) == mul_schoolbook(a, b);
    }
    check("series: NTT/CRT product equals schoolbook product", ok);
  }

  for (const auto& form : builtin_forms()) {
    const auto s = expand(form, x, config.threads);
    const std::string tag = form.name + ": ";
    const std::size_t small = std::min<std::size_t>(x, form.weight == 12 ? 300 : 1000);
    const auto oracle = schoolbook_expansion(form, small);
    bool ok = true;
    for (std::size_t n = 1; n <= small; ++n) ok = ok && s.a(n) == oracle[n];
    check(tag + "expansion equals schoolbook product up to " + std::to_string(small), ok);
    check(tag + "a(1) = 1", s.a(1) == 1);

    ok = true;
    for (int t = 0; t < 1000; ++t) {
      const std::uint64_t m = 1 + rng() % x, n = 1 + rng() % std::max<std::uint64_t>(1, x / m);
      if (m * n > x || std::gcd(m, n) != 1) continue;
      ok = ok && s.a(m * n) == s.a(m) * s.a(n);
    }
    check(tag + "multiplicativity on random coprime pairs", ok);

    ok = true;
    bool deligne = true;
    bool recursion = true;
    for (auto p : primes_up_to(x)) {
      const BigInt pk = boost::multiprecision::pow(BigInt(p), form.weight - 1);
      if (p * p <= x) ok = ok && s.a(p * p) == s.a(p) * s.a(p) - (s.ramified(p) ? BigInt(0) : pk);
      if (!s.ramified(p)) deligne = deligne && s.a(p) * s.a(p) <= 4 * pk;
      if (p * p <= x) {
        unsigned max_m = 0;
        for (std::uint64_t pm = p; pm <= x; pm *= p) ++max_m;
        const auto seq = prime_power_coefficients(s, p, max_m);
        std::uint64_t pm = 1;
        for (unsigned m = 1; m <= max_m; ++m) recursion = recursion && seq[m] == s.a(pm *= p);
      }
    }
    check(tag + "Hecke relation at p^2", ok);
    check(tag + "Deligne bound a(p)^2 <= 4 p^(k-1)", deligne);
    check(tag + "Hecke recursion equals expanded a(p^m)", recursion);

    const auto table = theta_table(s);
    ok = true;
    for (int t = 0; t < 1000; ++t) {
      const auto& e = table.entries[rng() % table.entries.size()];
      const unsigned m = 1 + rng() % 10;
      const auto exact = lambda_prime_power_exact(s, e.p, m);
      const double approx = lambda_prime_power_chebyshev(e.theta, m);
      ok = ok && std::abs(approx - exact.lambda_value) <= 1e-6 * std::max(1.0, std::abs(exact.lambda_value));
      if (std::abs(exact.lambda_value) > 1e-6) ok = ok && ((approx > 0) == (exact.sign > 0));
    }
    check(tag + "Chebyshev formula matches exact recursion", ok);

    if (form.level == 1) {
      bool identity = true;
      bool divisor = true;
      for (unsigned m = 1; m <= 8; ++m) {
        auto sym = assemble_multiplicative(table, m, x, StreamKind::sym);
        const auto v = collect(sym);
        for (const auto& e : table.entries) {
          const double exact = lambda_prime_power_exact(s, e.p, m).lambda_value;
          identity = identity && std::abs(v[e.p - 1] - exact) <= 1e-9 * std::max(1.0, std::abs(exact));
        }
        if (m <= 4) {
          const auto d = divisor_bound_table(x, m);
          for (std::size_t n = 1; n <= x; ++n) divisor = divisor && std::abs(v[n - 1]) <= d[n] + 1e-6;
        }
        if (m <= 3)
          for (double beta : {0.5, 1.0, 1.5})
            ok = ok && partial_summation_check(sym, beta, x).residual <= 1e-9;
      }
      check(tag + "sym^m coefficient at p equals lambda(p^m)", identity);
      check(tag + "|lambda_sym(n)| <= d_(m+1)(n)", divisor);
      check(tag + "partial summation identity", ok);
    }
  }

  {
    bool ok = true;
    for (unsigned m = 1; m <= 50; ++m) {
      const double pos = measure_of_positivity_set(m, Measure::sato_tate);
      ok = ok && std::abs(pos - predicted_density(m, false).positive) <= 1e-10;
      if (m % 2) ok = ok && std::abs(pos - measure_of_negativity_set(m, Measure::sato_tate)) <= 1e-10;
    }
    check("statistics: positivity-set measure equals closed-form density, m <= 50", ok);
  }
  for (auto ref : {Reference::sato_tate, Reference::deuring_mixture}) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> sample(100000);
    for (auto& v : sample) v = reference_quantile(ref, unif(rng));
    const double d = ks_statistic(sample, ref);
    check(std::string("statistics: synthetic ") + to_string(ref) + " sample KS <= 0.01", d <= 0.01,
          "KS=" + format_double(d));
  }
  out << (check.failures == 0 ? "selftest passed" : "selftest FAILED: " + std::to_string(check.failures) + " check(s)")
      << '\n';
  return check.failures == 0 ? kPass : kCheckFailure;
}

}  // namespace satake::cli
