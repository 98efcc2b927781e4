#include "isoq_cli/record.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "isoq/error.hpp"
#include "isoq/parallel.hpp"

namespace isoq::cli {

using nlohmann::json;

namespace {

json complex_json(cplx z) { return format_complex(z); }

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json record_header(const std::string& command, const RunConfig& config) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  json cfg = json::object();
  for (const auto& [k, v] : config.entries) cfg[k] = v;
  j["config"] = cfg;
  j["conventions"] = {{"sign", to_string(config.spec.convention)},
                      {"hermitian", "antilinear-first"},
                      {"flat_holonomy", "exp(2 pi i p area)"}};
  j["workers"] = config.workers ? config.workers : default_workers();
  return j;
}

json fit_to_json(const AsymptoticFit& fit) {
  json c = json::array();
  for (const auto& b : fit.coefficients) c.push_back(complex_json(b));
  json re = json::array(), im = json::array();
  for (const auto& b : fit.coefficients) {
    re.push_back(number(b.real()));
    im.push_back(number(b.imag()));
  }
  return {{"exponent", fit.exponent},
          {"coefficients", c},
          {"coefficients_re", re},
          {"coefficients_im", im},
          {"residual_norm", number(fit.residual_norm)},
          {"condition_number", number(fit.condition_number)}};
}

json row_to_json(const ReportRow& row) {
  json extras = json::object();
  for (const auto& [k, v] : row.extras) extras[k] = number(v);
  return {{"p", row.p},
          {"value", complex_json(row.value)},
          {"value_re", number(row.value.real())},
          {"value_im", number(row.value.imag())},
          {"value_abs", number(std::abs(row.value))},
          {"predicted_re", number(row.predicted.real())},
          {"predicted_im", number(row.predicted.imag())},
          {"corrected_re", number(row.corrected.real())},
          {"corrected_im", number(row.corrected.imag())},
          {"nodes_used", row.nodes_used},
          {"certificate_delta", number(row.certificate_delta)},
          {"extras", extras}};
}

json report_to_json(const std::string& command, const RunConfig& config, const ComparisonReport& r,
                    double wall_seconds) {
  json j = record_header(command, config);
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(row_to_json(row));
  j["rows"] = rows;
  if (r.has_fit) {
    j["fit"] = fit_to_json(r.fitted);
    j["fit_k1"] = fit_to_json(r.fitted_k1);
  }
  j["predicted_b0"] = complex_json(r.predicted_b0);
  j["predicted_b0_re"] = number(r.predicted_b0.real());
  j["predicted_b0_im"] = number(r.predicted_b0.imag());
  j["relative_error_b0"] = number(r.relative_error_b0);
  j["expected_exponent"] = number(r.expected_exponent);
  j["exponent"] = number(r.exponent);
  j["exponent_error"] = number(r.exponent_error);
  j["certificate"] = {{"max_delta", number(r.max_certificate_delta)}, {"certified", r.spec.certify}};
  json lambdas = json::array();
  for (const auto& l : r.lambdas) lambdas.push_back(complex_json(l));
  j["lambdas"] = lambdas;
  j["angles"] = r.angles;
  json diag = json::object();
  for (const auto& [k, v] : r.diagnostics) diag[k] = number(v);
  j["diagnostics"] = diag;
  j["wall_clock_seconds"] = wall_seconds;
  return j;
}

void write_json(const std::string& path, const json& record) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path);
  out << record.dump(2) << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaMismatch, path + ": " + e.what());
  }
}

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path);
  out << "p,value_re,value_im,value_abs,phase,nodes_used,certificate_delta\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%zu,%.17g\n", r.p, r.value.real(), r.value.imag(),
                  std::abs(r.value), std::arg(r.value), r.nodes_used, r.certificate_delta);
    out << buf;
  }
}

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("p,value_re,value_im", 0) != 0)
    throw Error(ErrorCode::SchemaMismatch, path + ": unexpected CSV header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw Error(ErrorCode::SchemaMismatch, path + ": expected 7 columns");
    try {
      CsvRow r;
      r.p = std::stod(cells[0]);
      r.value = {std::stod(cells[1]), std::stod(cells[2])};
      r.nodes_used = std::stoul(cells[5]);
      r.certificate_delta = std::stod(cells[6]);
      rows.push_back(r);
    } catch (const std::exception&) {
      throw Error(ErrorCode::SchemaMismatch, path + ": malformed row '" + line + "'");
    }
  }
  return rows;
}

std::vector<CsvRow> csv_rows(const ComparisonReport& report) {
  std::vector<CsvRow> out;
  for (const auto& r : report.rows) out.push_back({r.p, r.value, r.nodes_used, r.certificate_delta});
  return out;
}

}  // namespace isoq::cli
