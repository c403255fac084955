#include "commands.hpp"

#include "satake/report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr const char* kCsvColumns = R"(CSV columns:
  sign_density.csv            form,cm,m,X,count_{positive,negative,zero},freq_*,pred_*,err_*
  distribution.csv            form,X,reference,sample_size,ks_statistic
  histogram_<form>.csv        bin_left,bin_right,count,reference_mass
  asymptotics_checkpoints.csv form,m,kind,delta_m,x,A,R
  asymptotics_increments.csv  form,m,kind,sigma,j,T_j,ratio
JSON files carry the same data plus a metadata object with schema_version.
Exit codes: 0 pass, 1 check failure, 2 usage error, 3 internal error.
Environment: SATAKE_CACHE_DIR overrides the default cache directory.)";

void add_form_options(CLI::App* cmd, satake::cli::RunConfig& c) {
  cmd->add_option("--form", c.form, "Registry form: delta, lvl11, lvl27, lvl32")->capture_default_str();
  cmd->add_option("--recipe", c.recipe, "Custom eta quotient d^e,d^e,... (overrides --form)");
  cmd->add_option("--weight", c.weight, "Weight of a custom recipe (default: half the exponent sum)");
  cmd->add_option("--level", c.level, "Level of a custom recipe")->capture_default_str();
  cmd->add_flag("--cm", c.cm, "Custom recipe has complex multiplication");
}

void add_run_options(CLI::App* cmd, satake::cli::RunConfig& c) {
  cmd->add_option("--X", c.precision, "Expansion precision")->capture_default_str();
  cmd->add_flag("--large", c.allow_large, "Allow --X above 2^20");
  cmd->add_option("--cache-dir", c.cache_dir, "Coefficient cache directory");
  cmd->add_option("--threads", c.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_report_options(CLI::App* cmd, satake::cli::RunConfig& c) {
  cmd->add_option("--x", c.bound, "Statistics bound (default: X)");
  cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--format", c.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->add_flag("--check", c.check, "Exit 1 unless the run's checks pass");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace satake::cli;
  RunConfig config;
  CLI::App app{"Sign and distribution experiments on Hecke eigenforms given by eta quotients"};
  app.set_version_flag("--version", satake::kVersion);
  app.footer(kCsvColumns);
  app.require_subcommand(1);

  auto* expand = app.add_subcommand("expand", "Expand a form's q-series and cache it");
  add_form_options(expand, config);
  add_run_options(expand, config);

  auto* sign = app.add_subcommand("sign-density", "Empirical vs predicted sign densities of lambda(p^m)");
  add_form_options(sign, config);
  add_run_options(sign, config);
  add_report_options(sign, config);
  sign->add_option("--m", config.ms, "Exponents m")->delimiter(',')->capture_default_str();
  sign->add_option("--tolerance", config.tolerance, "Maximum absolute density error for --check")
      ->capture_default_str();

  auto* dist = app.add_subcommand("distribution", "Kolmogorov-Smirnov test of Satake angles");
  add_form_options(dist, config);
  add_run_options(dist, config);
  add_report_options(dist, config);
  dist->add_option("--reference", config.reference, "auto, sato_tate or deuring_mixture")->capture_default_str();
  dist->add_option("--bins", config.bins, "Histogram bins")->capture_default_str();
  dist->add_option("--max-ks", config.max_ks, "Maximum KS statistic for --check")->capture_default_str();

  auto* asym = app.add_subcommand("asymptotics", "Partial sums of |lambda_sym^m(n)| and dyadic block probe");
  add_form_options(asym, config);
  add_run_options(asym, config);
  add_report_options(asym, config);
  asym->add_option("--m", config.ms, "Exponents m")->delimiter(',')->capture_default_str();
  asym->add_option("--kind", config.kind, "sym, power or both")->capture_default_str();
  asym->add_option("--sigma", config.sigmas, "Abscissa probe exponents")->delimiter(',')->capture_default_str();
  asym->add_option("--beta", config.betas, "Partial summation exponents")->delimiter(',')->capture_default_str();
  asym->add_option("--checkpoints", config.checkpoints, "Checkpoints x (default: powers of 10 and x)")
      ->delimiter(',');
  asym->add_option("--blocks", config.blocks, "Dyadic block range first-last (default: last six)");

  auto* self = app.add_subcommand("selftest", "Run the invariant suite at reduced scale");
  add_run_options(self, config);
  self->add_option("--seed", config.seed, "Seed for random spot checks")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsageError;
  }

  try {
    if (*expand) return config.command = "expand", cmd_expand(config, std::cout);
    if (*sign) return config.command = "sign-density", cmd_sign_density(config, std::cout);
    if (*dist) return config.command = "distribution", cmd_distribution(config, std::cout);
    if (*asym) return config.command = "asymptotics", cmd_asymptotics(config, std::cout);
    if (*self) {
      config.command = "selftest";
      if (self->count("--X") == 0) config.precision = 10000;
      return cmd_selftest(config, std::cout);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kUsageError;
}
