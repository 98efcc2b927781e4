#include "isoq_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <ostream>

#include "CLI11.hpp"
#include "isoq/error.hpp"
#include "isoq/parallel.hpp"
#include "isoq/poincare.hpp"
#include "isoq_cli/config.hpp"
#include "isoq_cli/golden.hpp"
#include "isoq_cli/record.hpp"

namespace isoq::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Command line flags for the flat config keys; only flags given explicitly
// override the config file.
struct ConfigFlags {
  std::string config_file;
  std::string replay;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "flat key = value configuration file");
    app->add_option("--replay", replay, "reuse the configuration echoed in a result record");
    for (const auto& key : known_keys()) {
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      options[key] = app->add_option(flag, values[key], "config key " + key);
    }
  }

  KeyValues collect(const std::string& default_scenario) const {
    KeyValues base;
    if (!replay.empty()) {
      const json rec = read_json(replay);
      if (!rec.contains("config") || !rec["config"].is_object())
        throw Error(ErrorCode::SchemaMismatch, replay + ": record has no config");
      for (auto it = rec["config"].begin(); it != rec["config"].end(); ++it)
        base[it.key()] = it.value().get<std::string>();
      base.erase("json");
      base.erase("csv");
    }
    if (!config_file.empty()) base = merge(base, read_config_file(config_file));
    KeyValues over;
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) over[key] = values.at(key);
    KeyValues all = merge(base, over);
    if (all.find("scenario") == all.end() || all["scenario"].empty()) {
      const bool modular = all.count("geometry") && all["geometry"] == "modular";
      if (!default_scenario.empty()) all["scenario"] = default_scenario;
      if (default_scenario == "intersect" && modular) all["scenario"] = "geodesic-intersect";
      if (default_scenario == "norm" && modular) all["scenario"] = "poincare-norm";
    }
    return all;
  }
};

RunConfig prepare(const ConfigFlags& flags, const std::string& command, const std::string& default_scenario) {
  RunConfig rc = build_run_config(flags.collect(default_scenario));
  if (rc.json_path.empty()) rc.entries["json"] = rc.json_path = "isoq-" + command + ".json";
  if (rc.csv_path.empty()) rc.entries["csv"] = rc.csv_path = "isoq-" + command + ".csv";
  if (rc.workers > 0) set_default_workers(rc.workers);
  return rc;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

int finish(const RunConfig& rc, const json& record, const std::vector<CsvRow>& rows, double max_delta, bool certify,
           std::ostream& out, std::ostream& err) {
  write_json(rc.json_path, record);
  write_csv(rc.csv_path, rows);
  out << "wrote " << rc.json_path << " and " << rc.csv_path << "\n";
  if (certify && max_delta > kCertificateTolerance) {
    err << "certificate failure: doubling the nodes changed a value by " << fmt("%.3g", max_delta)
        << " relative\n";
    return kExitCertificate;
  }
  return kExitOk;
}

void print_report(const ComparisonReport& r, std::ostream& out) {
  char buf[256];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "p=%-12.6g value=%-28s |value|=%-12.6g corrected=%-28s cert=%.2g\n", row.p,
                  format_complex(row.value).c_str(), std::abs(row.value), format_complex(row.corrected).c_str(),
                  row.certificate_delta);
    out << buf;
  }
  if (r.has_fit) {
    out << "fit: b0=" << format_complex(r.fitted.coefficients[0]) << " predicted=" << format_complex(r.predicted_b0)
        << " rel_err=" << fmt("%.3g", r.relative_error_b0) << " exponent=" << fmt("%.6g", r.exponent)
        << " expected=" << fmt("%.3g", r.expected_exponent) << "\n";
  }
  for (const auto& [k, v] : r.diagnostics) out << k << "=" << fmt("%.6g", v) << "\n";
}

int cmd_experiment(const ConfigFlags& flags, const std::string& command, std::ostream& out, std::ostream& err) {
  RunConfig rc = prepare(flags, command, command);
  const auto t0 = Clock::now();
  const ComparisonReport r = command == "norm" ? run_norm_experiment(rc.spec) : run_intersection_experiment(rc.spec);
  print_report(r, out);
  const json rec = report_to_json(command, rc, r, seconds_since(t0));
  return finish(rc, rec, csv_rows(r), r.max_certificate_delta, rc.spec.certify, out, err);
}

int cmd_holonomy(const ConfigFlags& flags, std::ostream& out, std::ostream& err) {
  RunConfig rc = prepare(flags, "holonomy", "norm");
  const auto t0 = Clock::now();
  const ParametrizedCurve curve = circle_curve(rc.spec.circle1);
  json rows = json::array();
  std::vector<CsvRow> csv;
  double worst = 0.0;
  for (double p : rc.spec.p_schedule) {
    const HolonomyReport h = holonomy(curve, p);
    ReportRow row;
    row.p = p;
    row.value = h.value;
    row.certificate_delta = h.discrepancy;
    row.extras["shoelace_re"] = h.shoelace.real();
    row.extras["shoelace_im"] = h.shoelace.imag();
    row.extras["signed_area"] = h.signed_area;
    row.extras["admissible"] = std::abs(h.value - 1.0) < 1e-8 ? 1.0 : 0.0;
    const double area = std::abs(h.signed_area);
    row.extras["nearest_admissible_p"] = std::max(1.0, std::round(p * area)) / area;
    out << "p=" << fmt("%-12.6g", p) << " holonomy=" << format_complex(h.value)
        << " admissible=" << (row.extras["admissible"] > 0 ? "yes" : "no")
        << " nearest admissible p=" << fmt("%.12g", row.extras["nearest_admissible_p"]) << "\n";
    worst = std::max(worst, h.discrepancy);
    rows.push_back(row_to_json(row));
    csv.push_back({p, h.value, 0, h.discrepancy});
  }
  json rec = record_header("holonomy", rc);
  rec["rows"] = rows;
  rec["wall_clock_seconds"] = seconds_since(t0);
  return finish(rc, rec, csv, worst, rc.spec.certify, out, err);
}

std::vector<int> integer_ps(const std::vector<double>& ps) {
  std::vector<int> out;
  for (double p : ps) {
    if (std::abs(p - std::round(p)) > 1e-9 || p < 1) throw Error(ErrorCode::NotInteger, "p must be a positive integer");
    out.push_back(static_cast<int>(std::lround(p)));
  }
  return out;
}

int cmd_poincare(const ConfigFlags& flags, const std::string& zs, std::ostream& out, std::ostream& err) {
  RunConfig rc = prepare(flags, "poincare", "poincare-norm");
  const cplx z = parse_complex(zs);
  rc.entries["z"] = format_complex(z);
  const auto t0 = Clock::now();
  auto table = std::make_shared<const CosetTable>(coset_reps(rc.spec.g0, rc.spec.max_word_length, rc.spec.convention));
  const MoebiusElement S = kMatS.to_moebius(), T = kMatT.to_moebius();
  json rows = json::array();
  std::vector<CsvRow> csv;
  for (int p : integer_ps(rc.spec.p_schedule)) {
    const GeodesicState st = make_geodesic_state(p, rc.spec.g0, table);
    const SeriesValue v = st.form.evaluate(z);
    double mass = 0.0;
    for (double a : v.shell_abs) mass += a;
    ReportRow row;
    row.p = p;
    row.value = v.value;
    row.nodes_used = v.terms;
    row.certificate_delta = mass > 0.0 ? v.truncation_estimate / mass : 0.0;
    row.extras["truncation_estimate"] = v.truncation_estimate;
    row.extras["s_residual"] = modularity_residual(st.form, S, z);
    row.extras["t_residual"] = modularity_residual(st.form, T, z);
    row.extras["kappa_re"] = st.kappa.real();
    row.extras["kappa_im"] = st.kappa.imag();
    out << "p=" << p << " s(z)=" << format_complex(v.value) << " truncation=" << fmt("%.3g", v.truncation_estimate)
        << " S-residual=" << fmt("%.3g", row.extras["s_residual"]) << "\n";
    rows.push_back(row_to_json(row));
    csv.push_back({row.p, row.value, row.nodes_used, row.certificate_delta});
  }
  json rec = record_header("poincare", rc);
  rec["rows"] = rows;
  rec["wall_clock_seconds"] = seconds_since(t0);
  // truncation is enforced by the series itself
  return finish(rc, rec, csv, 0.0, false, out, err);
}

int cmd_petersson(const ConfigFlags& flags, double y_max, int nx, int ny, std::ostream& out, std::ostream& err) {
  RunConfig rc = prepare(flags, "petersson", "poincare-norm");
  const auto t0 = Clock::now();
  auto table = std::make_shared<const CosetTable>(coset_reps(rc.spec.g0, rc.spec.max_word_length, rc.spec.convention));
  json rows = json::array();
  std::vector<CsvRow> csv;
  double worst = 0.0;
  for (int p : integer_ps(rc.spec.p_schedule)) {
    const GeodesicState st = make_geodesic_state(p, rc.spec.g0, table);
    const PeterssonReport pr = petersson_norm(st.form, y_max, nx, ny);
    const double rn = reproducing_norm(st, rc.spec.oversampling);
    ReportRow row;
    row.p = p;
    row.value = pr.value;
    row.nodes_used = static_cast<std::size_t>(nx) * ny;
    row.certificate_delta = pr.relative_change;
    row.extras["doubled"] = pr.doubled;
    row.extras["y_max"] = pr.y_max;
    row.extras["reproducing_norm"] = rn;
    out << "p=" << p << " petersson=" << fmt("%.12g", pr.value) << " reproducing=" << fmt("%.12g", rn)
        << " doubling_change=" << fmt("%.3g", pr.relative_change) << "\n";
    worst = std::max(worst, pr.relative_change);
    rows.push_back(row_to_json(row));
    csv.push_back({row.p, row.value, row.nodes_used, row.certificate_delta});
  }
  json rec = record_header("petersson", rc);
  rec["rows"] = rows;
  rec["wall_clock_seconds"] = seconds_since(t0);
  return finish(rc, rec, csv, worst, false, out, err);
}

int cmd_kernel(const std::string& model, double p, const std::string& zs, const std::string& ws,
               const std::string& json_path, std::ostream& out) {
  const cplx z = parse_complex(zs), w = parse_complex(ws);
  cplx value;
  if (model == "hyperbolic") {
    if (std::abs(p - std::round(p)) > 1e-12 || p < 1) throw Error(ErrorCode::NotInteger, "hyperbolic p must be a positive integer");
    value = hyperbolic_kernel(static_cast<int>(std::lround(p)), z, w);
  } else if (model == "bargmann") {
    value = bargmann_kernel(p, {z.real(), z.imag()}, {w.real(), w.imag()});
  } else {
    throw Error(ErrorCode::ConfigError, "unknown kernel model '" + model + "'");
  }
  out << format_complex(value) << "\n";
  if (!json_path.empty()) {
    json rec = {{"schema_version", kSchemaVersion},
                {"command", "kernel"},
                {"config", {{"model", model}, {"p", format_double(p)}, {"z", format_complex(z)}, {"w", format_complex(w)}}},
                {"value", format_complex(value)},
                {"value_re", value.real()},
                {"value_im", value.imag()}};
    write_json(json_path, rec);
  }
  return kExitOk;
}

int cmd_fit(const std::string& input, double exponent, int order, const std::string& json_path, std::ostream& out) {
  const auto rows = read_csv(input);
  std::vector<double> ps;
  std::vector<cplx> vals;
  for (const auto& r : rows) {
    ps.push_back(r.p);
    vals.push_back(r.value);
  }
  const AsymptoticFit fit = fit_power_series(ps, vals, exponent, order);
  json rec = {{"schema_version", kSchemaVersion},
              {"command", "fit"},
              {"config", {{"input", input}, {"exponent", format_double(exponent)}, {"order", std::to_string(order)}}},
              {"exponent_estimate", estimate_exponent(ps, vals)},
              {"fit", fit_to_json(fit)}};
  out << rec.dump(2) << "\n";
  if (!json_path.empty()) write_json(json_path, rec);
  return kExitOk;
}

int cmd_golden(const std::string& result, const std::string& golden, const std::vector<std::string>& tols,
               std::ostream& out, std::ostream& err) {
  Tolerances t;
  for (const auto& s : tols) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ConfigError, "tolerance must be field=value: " + s);
    try {
      t[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "bad tolerance value: " + s);
    }
  }
  const GoldenResult g = golden_check(result, golden, t);
  if (g.pass) {
    out << "golden: pass (" << g.compared << " fields)\n";
    return kExitOk;
  }
  err << "golden: fail at " << g.field << ": " << g.message << "\n";
  return kExitMismatch;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"isoq: isotropic states on Bargmann and modular geometries"};
  app.require_subcommand(1);

  ConfigFlags f_holonomy, f_norm, f_intersect, f_poincare, f_petersson;

  auto* kernel = app.add_subcommand("kernel", "tabulate a model or hyperbolic kernel value");
  std::string model = "bargmann", kz = "0", kw = "0", kjson;
  double kp = 1.0;
  kernel->add_option("--model", model, "bargmann or hyperbolic");
  kernel->add_option("--p", kp, "tensor power")->required();
  kernel->add_option("--z", kz, "first point, re+imi");
  kernel->add_option("--w", kw, "second point, re+imi");
  kernel->add_option("--json", kjson, "optional result record");

  auto* hol = app.add_subcommand("holonomy", "admissibility report of a circle");
  f_holonomy.attach(hol);
  auto* norm = app.add_subcommand("norm", "norm sweep and fit");
  f_norm.attach(norm);
  auto* inter = app.add_subcommand("intersect", "pairing sweep between two curves");
  f_intersect.attach(inter);
  auto* poinc = app.add_subcommand("poincare", "relative Poincare series at a point");
  f_poincare.attach(poinc);
  std::string pz = "0.1+1.1i";
  poinc->add_option("--z", pz, "evaluation point, re+imi");
  auto* pet = app.add_subcommand("petersson", "Petersson norm of the geodesic state");
  f_petersson.attach(pet);
  double y_max = 0.0;
  int nx = 32, ny = 64;
  pet->add_option("--y-max", y_max, "truncation height, 0 for max(10, p)");
  pet->add_option("--nx", nx, "panels across the fundamental domain");
  pet->add_option("--ny", ny, "panels in height");

  auto* fit = app.add_subcommand("fit", "refit a stored CSV table");
  std::string fin, fjson;
  double fexp = 0.5;
  int ford = 2;
  fit->add_option("--input", fin, "CSV table")->required();
  fit->add_option("--exponent", fexp, "leading exponent");
  fit->add_option("--order", ford, "fit order k");
  fit->add_option("--json", fjson, "optional output record");

  auto* gold = app.add_subcommand("golden", "compare a result record against a golden record");
  std::string gres, ggold;
  std::vector<std::string> gtol;
  gold->add_option("--result", gres, "result record")->required();
  gold->add_option("--golden", ggold, "golden record")->required();
  gold->add_option("--tol", gtol, "field=relative tolerance");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (kernel->parsed()) return cmd_kernel(model, kp, kz, kw, kjson, out);
    if (hol->parsed()) return cmd_holonomy(f_holonomy, out, err);
    if (norm->parsed()) return cmd_experiment(f_norm, "norm", out, err);
    if (inter->parsed()) return cmd_experiment(f_intersect, "intersect", out, err);
    if (poinc->parsed()) return cmd_poincare(f_poincare, pz, out, err);
    if (pet->parsed()) return cmd_petersson(f_petersson, y_max, nx, ny, out, err);
    if (fit->parsed()) return cmd_fit(fin, fexp, ford, fjson, out);
    if (gold->parsed()) return cmd_golden(gres, ggold, gtol, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_certificate_failure(e.code()) ? kExitCertificate : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace isoq::cli
