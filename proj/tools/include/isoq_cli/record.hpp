#pragma once

#include <string>
#include <vector>

#include "isoq_cli/config.hpp"
#include "json.hpp"

namespace isoq::cli {

inline constexpr const char* kSchemaVersion = "isoq-result-v1";

// Common header: schema version, command, config echo, conventions.
nlohmann::json record_header(const std::string& command, const RunConfig& config);

nlohmann::json fit_to_json(const AsymptoticFit& fit);

nlohmann::json row_to_json(const ReportRow& row);

nlohmann::json report_to_json(const std::string& command, const RunConfig& config, const ComparisonReport& report,
                              double wall_seconds);

void write_json(const std::string& path, const nlohmann::json& record);
nlohmann::json read_json(const std::string& path);

struct CsvRow {
  double p = 0.0;
  cplx value;
  std::size_t nodes_used = 0;
  double certificate_delta = 0.0;
};

// Columns: p, value_re, value_im, value_abs, phase, nodes_used, certificate_delta.
void write_csv(const std::string& path, const std::vector<CsvRow>& rows);
std::vector<CsvRow> read_csv(const std::string& path);

std::vector<CsvRow> csv_rows(const ComparisonReport& report);

}  // namespace isoq::cli
