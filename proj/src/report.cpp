#include "satake/report.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <sstream>

namespace satake {
namespace {

nlohmann::json metadata_json(const RunMetadata& meta) {
  return {{"schema_version", kSchemaVersion},
          {"code_version", kVersion},
          {"command", meta.command},
          {"X", meta.precision},
          {"generated_at", meta.generated_at}};
}

nlohmann::json triple_json(const DensityTriple& t) {
  return {{"positive", t.positive}, {"negative", t.negative}, {"zero", t.zero}};
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string sign_density_csv(std::span<const SignDensityReport> reports) {
  std::ostringstream out;
  out << "form,cm,m,X,count_positive,count_negative,count_zero,freq_positive,freq_negative,freq_zero,"
         "pred_positive,pred_negative,pred_zero,err_positive,err_negative,err_zero\n";
  for (const auto& r : reports) {
    out << r.form << ',' << (r.cm ? 1 : 0) << ',' << r.m << ',' << r.bound << ',' << r.counts.positive << ','
        << r.counts.negative << ',' << r.counts.zero << ',' << format_double(r.frequencies.positive) << ','
        << format_double(r.frequencies.negative) << ',' << format_double(r.frequencies.zero) << ','
        << format_double(r.predicted.positive) << ',' << format_double(r.predicted.negative) << ','
        << format_double(r.predicted.zero) << ',' << format_double(r.abs_errors.positive) << ','
        << format_double(r.abs_errors.negative) << ',' << format_double(r.abs_errors.zero) << '\n';
  }
  return out.str();
}

nlohmann::json sign_density_json(std::span<const SignDensityReport> reports, const RunMetadata& meta) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports) {
    rows.push_back({{"form", r.form},
                    {"cm", r.cm},
                    {"m", r.m},
                    {"X", r.bound},
                    {"counts", {{"positive", r.counts.positive}, {"negative", r.counts.negative}, {"zero", r.counts.zero}}},
                    {"frequencies", triple_json(r.frequencies)},
                    {"predicted", triple_json(r.predicted)},
                    {"abs_errors", triple_json(r.abs_errors)}});
  }
  return {{"metadata", metadata_json(meta)}, {"sign_density", rows}};
}

std::string distribution_csv(std::span<const DistributionTestReport> reports) {
  std::ostringstream out;
  out << "form,X,reference,sample_size,ks_statistic\n";
  for (const auto& r : reports)
    out << r.form << ',' << r.bound << ',' << to_string(r.reference) << ',' << r.sample_size << ','
        << format_double(r.ks_statistic) << '\n';
  return out.str();
}

std::string histogram_csv(std::span<const HistogramBin> bins) {
  std::ostringstream out;
  out << "bin_left,bin_right,count,reference_mass\n";
  for (const auto& b : bins)
    out << format_double(b.left) << ',' << format_double(b.right) << ',' << b.count << ','
        << format_double(b.reference_mass) << '\n';
  return out.str();
}

nlohmann::json distribution_json(std::span<const DistributionTestReport> reports, const RunMetadata& meta) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports)
    rows.push_back({{"form", r.form},
                    {"X", r.bound},
                    {"reference", to_string(r.reference)},
                    {"sample_size", r.sample_size},
                    {"ks_statistic", r.ks_statistic}});
  return {{"metadata", metadata_json(meta)}, {"distribution", rows}};
}

std::string checkpoints_csv(std::span<const AsymptoticsReport> reports) {
  std::ostringstream out;
  out << "form,m,kind,delta_m,x,A,R\n";
  for (const auto& r : reports)
    for (const auto& c : r.checkpoints)
      out << r.form << ',' << r.m << ',' << to_string(r.kind) << ',' << format_double(r.delta) << ',' << c.x
          << ',' << format_double(c.partial_sum) << ',' << format_double(c.ratio) << '\n';
  return out.str();
}

std::string increments_csv(std::span<const AsymptoticsReport> reports) {
  std::ostringstream out;
  out << "form,m,kind,sigma,j,T_j,ratio\n";
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.block_increments.size(); ++i) {
      const auto& b = r.block_increments[i];
      out << r.form << ',' << r.m << ',' << to_string(r.kind) << ',' << format_double(b.sigma) << ',' << b.j
          << ',' << format_double(b.increment) << ',';
      if (i > 0 && r.block_increments[i - 1].sigma == b.sigma)
        out << format_double(b.increment / r.block_increments[i - 1].increment);
      out << '\n';
    }
  }
  return out.str();
}

nlohmann::json asymptotics_json(std::span<const AsymptoticsReport> reports, const RunMetadata& meta) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json cps = nlohmann::json::array();
    for (const auto& c : r.checkpoints) cps.push_back({{"x", c.x}, {"A", c.partial_sum}, {"R", c.ratio}});
    nlohmann::json incs = nlohmann::json::array();
    for (const auto& b : r.block_increments) incs.push_back({{"sigma", b.sigma}, {"j", b.j}, {"T", b.increment}});
    rows.push_back({{"form", r.form},
                    {"m", r.m},
                    {"kind", to_string(r.kind)},
                    {"bound", r.bound},
                    {"delta_m", r.delta},
                    {"checkpoints", cps},
                    {"block_increments", incs},
                    {"estimated_constant", r.checkpoints.empty() ? 0.0 : r.checkpoints.back().ratio}});
  }
  return {{"metadata", metadata_json(meta)}, {"asymptotics", rows}};
}

}  // namespace satake
