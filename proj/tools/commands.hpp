#pragma once

#include "satake/forms.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace satake::cli {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kUsageError = 2, kInternalError = 3 };

/// Bad flags or values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string form = "delta";
  std::string recipe;  // "d^e,d^e,..." overrides --form
  int weight = 0;
  std::uint64_t level = 1;
  bool cm = false;
  std::vector<unsigned> ms{1};
  std::size_t precision = 1000000;
  std::uint64_t bound = 0;  // stream / statistics bound; 0 means X
  std::vector<double> sigmas{0.9, 1.1};
  std::vector<double> betas{0.5, 1.0, 1.5};
  std::vector<std::uint64_t> checkpoints;
  std::string blocks;  // "first-last"
  std::string kind = "both";
  std::string reference = "auto";
  unsigned bins = 50;
  std::filesystem::path out_dir = "reports";
  std::string format = "both";
  std::filesystem::path cache_dir;
  unsigned threads = 1;
  std::uint64_t seed = 20240601;
  bool allow_large = false;
  bool check = false;
  double tolerance = 0.01;
  double max_ks = 0.02;
};

/// Precisions above this need --large.
inline constexpr std::size_t kLargePrecision = std::size_t{1} << 20;

FormDescriptor resolve_form(const RunConfig& config);

int cmd_expand(const RunConfig& config, std::ostream& out);
int cmd_sign_density(const RunConfig& config, std::ostream& out);
int cmd_distribution(const RunConfig& config, std::ostream& out);
int cmd_asymptotics(const RunConfig& config, std::ostream& out);
int cmd_selftest(const RunConfig& config, std::ostream& out);

}  // namespace satake::cli
