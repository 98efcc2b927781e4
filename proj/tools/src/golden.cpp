#include "isoq_cli/golden.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "isoq/error.hpp"
#include "isoq_cli/record.hpp"

namespace isoq::cli {

namespace {

using nlohmann::json;

struct Leaf {
  std::string pattern;  // indices replaced by '*'
  std::string leaf;
  const json* value;
};

void flatten(const json& j, const std::string& path, const std::string& pattern, const std::string& leaf,
             std::map<std::string, Leaf>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string p = path.empty() ? it.key() : path + "." + it.key();
      const std::string q = pattern.empty() ? it.key() : pattern + "." + it.key();
      flatten(it.value(), p, q, it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k)
      flatten(j[k], path + "." + std::to_string(k), pattern + ".*", leaf, out);
  } else {
    out[path] = {pattern, leaf, &j};
  }
}

// fields that legitimately differ between runs
bool ignored(const std::string& pattern) {
  static const std::set<std::string> skip = {"wall_clock_seconds", "workers", "config.json", "config.csv",
                                             "config.workers"};
  return skip.count(pattern) > 0;
}

// textual fields are compared only where they carry configuration
bool compare_text(const std::string& pattern) {
  return pattern == "schema_version" || pattern == "command" || pattern.rfind("config.", 0) == 0 ||
         pattern.rfind("conventions.", 0) == 0;
}

double tolerance_for(const Leaf& leaf, const Tolerances& tol) {
  if (auto it = tol.find(leaf.pattern); it != tol.end()) return it->second;
  if (auto it = tol.find(leaf.leaf); it != tol.end()) return it->second;
  return kDefaultGoldenTolerance;
}

std::string show(const json& j) { return j.dump(); }

}  // namespace

GoldenResult golden_check(const std::string& result_path, const std::string& golden_path,
                          const Tolerances& tolerances) {
  const json result = read_json(result_path);
  const json golden = read_json(golden_path);
  const auto version = [](const json& j) {
    return j.is_object() && j.contains("schema_version") && j["schema_version"].is_string()
               ? j["schema_version"].get<std::string>()
               : std::string();
  };
  if (version(result) != kSchemaVersion || version(golden) != kSchemaVersion)
    throw Error(ErrorCode::SchemaMismatch, "schema versions differ: '" + version(result) + "' vs '" +
                                               version(golden) + "'");

  std::map<std::string, Leaf> a, b;
  flatten(result, "", "", "", a);
  flatten(golden, "", "", "", b);

  GoldenResult out;
  auto fail = [&](const std::string& field, const std::string& msg) {
    out.pass = false;
    out.field = field;
    out.message = msg;
    return out;
  };

  for (const auto& [path, gl] : b) {
    if (ignored(gl.pattern)) continue;
    auto it = a.find(path);
    if (it == a.end()) return fail(path, "missing in result");
    const json& x = *it->second.value;
    const json& y = *gl.value;
    ++out.compared;
    if (y.is_number() && x.is_number()) {
      const double xv = x.get<double>(), yv = y.get<double>();
      const double t = tolerance_for(gl, tolerances);
      if (!(std::abs(xv - yv) <= t * std::abs(yv)) && xv != yv) {
        std::ostringstream m;
        m.precision(17);
        m << "result " << xv << " vs golden " << yv << " (relative tolerance " << t << ")";
        return fail(path, m.str());
      }
    } else if (y.is_string() && x.is_string()) {
      if (compare_text(gl.pattern) && x != y) return fail(path, "result " + show(x) + " vs golden " + show(y));
    } else if (x.type() != y.type()) {
      return fail(path, "type differs: " + show(x) + " vs " + show(y));
    } else if (x != y) {
      return fail(path, "result " + show(x) + " vs golden " + show(y));
    }
  }
  for (const auto& [path, al] : a)
    if (!ignored(al.pattern) && !b.count(path)) return fail(path, "missing in golden");
  return out;
}

}  // namespace isoq::cli
