#pragma once

#include <map>
#include <string>
#include <vector>

#include "isoq/harness.hpp"

namespace isoq::cli {

using KeyValues = std::map<std::string, std::string>;

// Flat experiment configuration. `entries` holds every key with its textual
// value (defaults filled in) and is what a result record echoes back.
struct RunConfig {
  ExperimentSpec spec;
  KeyValues entries;
  std::string json_path;
  std::string csv_path;
  unsigned workers = 0;  // 0: ISOQ_WORKERS or hardware parallelism
};

const std::vector<std::string>& known_keys();
KeyValues default_entries();

// `key = value` lines; blank lines and lines starting with '#' are skipped.
KeyValues read_config_file(const std::string& path);

// Later maps win. Unknown keys throw ConfigError.
KeyValues merge(const KeyValues& base, const KeyValues& overrides);

RunConfig build_run_config(const KeyValues& entries);

cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);
std::string format_double(double x);

// "start:stop:step" or a comma separated list.
std::vector<double> parse_schedule(const std::string& text);

// "a,b,c,d" or "[[a,b],[c,d]]".
IntMatrix parse_matrix(const std::string& text);

bool parse_bool(const std::string& text);

}  // namespace isoq::cli
