#include "isoq_cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "isoq/error.hpp"

namespace isoq::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw Error(ErrorCode::ConfigError, "cannot parse " + what + " from '" + s + "'");
  return v;
}

long to_long(const std::string& s, const std::string& what) {
  long v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw Error(ErrorCode::ConfigError, "cannot parse " + what + " from '" + s + "'");
  return v;
}

Point2 to_point(const std::string& s) {
  const cplx z = parse_complex(s);
  return {z.real(), z.imag()};
}

void check_writable(const std::string& path) {
  if (path.empty()) return;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent))
    throw Error(ErrorCode::ConfigError, "output directory does not exist: " + parent.string());
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "geometry", "scenario", "p",          "radius",      "center",       "radius2",  "center2",
      "symbol",   "phase",    "g0",         "g0_second",   "word_length",  "convention", "oversampling",
      "fit_order", "certify", "json",       "csv",         "workers"};
  return keys;
}

KeyValues default_entries() {
  return {{"geometry", "bargmann"},   {"scenario", ""},          {"p", "20:400:20"},
          {"radius", "1"},            {"center", "0+0i"},        {"radius2", "1"},
          {"center2", "1+0i"},        {"symbol", "1"},           {"phase", "0"},
          {"g0", "2,1,1,1"},          {"g0_second", "3,2,1,1"},  {"word_length", "12"},
          {"convention", "psl2-distinct"}, {"oversampling", "1"}, {"fit_order", "2"},
          {"certify", "true"},        {"json", ""},              {"csv", ""},
          {"workers", "0"}};
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config file " + path);
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ConfigError, path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw Error(ErrorCode::ConfigError, path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

KeyValues merge(const KeyValues& base, const KeyValues& overrides) {
  KeyValues out = base;
  const auto& keys = known_keys();
  for (const auto& [k, v] : overrides) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw Error(ErrorCode::ConfigError, "unknown key '" + k + "'");
    out[k] = v;
  }
  return out;
}

RunConfig build_run_config(const KeyValues& given) {
  RunConfig rc;
  rc.entries = merge(default_entries(), given);
  const KeyValues& e = rc.entries;
  ExperimentSpec& s = rc.spec;

  s.geometry = geometry_from_string(e.at("geometry"));
  if (!e.at("scenario").empty()) s.scenario = scenario_from_string(e.at("scenario"));
  else s.scenario = s.geometry == Geometry::Bargmann ? Scenario::Norm : Scenario::PoincareNorm;
  rc.entries["scenario"] = to_string(s.scenario);
  s.p_schedule = parse_schedule(e.at("p"));
  s.circle1 = {to_point(e.at("center")), to_double(e.at("radius"), "radius")};
  s.circle2 = {to_point(e.at("center2")), to_double(e.at("radius2"), "radius2")};
  s.f_symbol = e.at("symbol");
  s.overlap_phase = to_double(e.at("phase"), "phase");
  s.g0 = parse_matrix(e.at("g0"));
  s.g0_second = parse_matrix(e.at("g0_second"));
  s.max_word_length = static_cast<int>(to_long(e.at("word_length"), "word_length"));
  s.convention = sign_convention_from_string(e.at("convention"));
  s.oversampling = to_double(e.at("oversampling"), "oversampling");
  s.fit_order = static_cast<int>(to_long(e.at("fit_order"), "fit_order"));
  s.certify = parse_bool(e.at("certify"));
  rc.json_path = e.at("json");
  rc.csv_path = e.at("csv");
  const long w = to_long(e.at("workers"), "workers");
  if (w < 0) throw Error(ErrorCode::ConfigError, "workers must be non-negative");
  rc.workers = static_cast<unsigned>(w);
  check_writable(rc.json_path);
  check_writable(rc.csv_path);
  return rc;
}

cplx parse_complex(const std::string& text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw Error(ErrorCode::ConfigError, "empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {to_double(s, "complex number"), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (im.empty() || im == "+") im = "1";
  else if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : to_double(re, "real part"), to_double(im, "imaginary part")};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::vector<double> parse_schedule(const std::string& text) {
  const std::string s = strip_spaces(text);
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= s.size(); ++k)
      if (k == s.size() || s[k] == ':') {
        parts.push_back(s.substr(start, k - start));
        start = k + 1;
      }
    if (parts.size() != 3) throw Error(ErrorCode::ConfigError, "schedule must be start:stop:step");
    const double a = to_double(parts[0], "schedule start");
    const double b = to_double(parts[1], "schedule stop");
    const double h = to_double(parts[2], "schedule step");
    if (!(h > 0.0) || b < a) throw Error(ErrorCode::ConfigError, "schedule needs step > 0 and stop >= start");
    for (long k = 0;; ++k) {
      const double p = a + k * h;
      if (p > b + 1e-9 * std::abs(b)) break;
      out.push_back(p);
    }
  } else {
    std::size_t start = 0;
    for (std::size_t k = 0; k <= s.size(); ++k)
      if (k == s.size() || s[k] == ',') {
        out.push_back(to_double(s.substr(start, k - start), "p value"));
        start = k + 1;
      }
  }
  if (out.empty()) throw Error(ErrorCode::ConfigError, "empty p schedule");
  return out;
}

IntMatrix parse_matrix(const std::string& text) {
  std::string s;
  for (char c : strip_spaces(text))
    if (c != '[' && c != ']') s += c;
  std::vector<long> v;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= s.size(); ++k)
    if (k == s.size() || s[k] == ',') {
      v.push_back(to_long(s.substr(start, k - start), "matrix entry"));
      start = k + 1;
    }
  if (v.size() != 4) throw Error(ErrorCode::ConfigError, "matrix needs four entries: '" + text + "'");
  return {v[0], v[1], v[2], v[3]};
}

bool parse_bool(const std::string& text) {
  std::string s = strip_spaces(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw Error(ErrorCode::ConfigError, "cannot parse boolean from '" + text + "'");
}

}  // namespace isoq::cli
