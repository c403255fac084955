#pragma once

// CSV and JSON emission for experiment reports.

#include "satake/asymptotics.hpp"
#include "satake/statistics.hpp"

#include <json.hpp>

#include <span>
#include <string>

namespace satake {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct RunMetadata {
  std::string command;
  std::size_t precision = 0;
  std::string generated_at;  // ISO-8601 UTC; the only non-deterministic field
};

/// Current time as ISO-8601 UTC.
std::string utc_timestamp();

/// Shortest round-trip decimal form.
std::string format_double(double v);

// form,cm,m,X,count_positive,count_negative,count_zero,freq_positive,...
std::string sign_density_csv(std::span<const SignDensityReport> reports);
nlohmann::json sign_density_json(std::span<const SignDensityReport> reports, const RunMetadata& meta);

// form,X,reference,sample_size,ks_statistic
std::string distribution_csv(std::span<const DistributionTestReport> reports);
// bin_left,bin_right,count,reference_mass
std::string histogram_csv(std::span<const HistogramBin> bins);
nlohmann::json distribution_json(std::span<const DistributionTestReport> reports, const RunMetadata& meta);

// form,m,kind,delta_m,x,A,R
std::string checkpoints_csv(std::span<const AsymptoticsReport> reports);
// form,m,kind,sigma,j,T_j,ratio (ratio T_j / T_{j-1}, empty on the first block)
std::string increments_csv(std::span<const AsymptoticsReport> reports);
nlohmann::json asymptotics_json(std::span<const AsymptoticsReport> reports, const RunMetadata& meta);

}  // namespace satake
