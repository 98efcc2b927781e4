#pragma once

#include <map>
#include <string>

namespace isoq::cli {

struct GoldenResult {
  bool pass = true;
  std::string field;    // first diverging field, empty on success
  std::string message;
  std::size_t compared = 0;
};

// Relative tolerances keyed by field path with array indices written as '*'
// (e.g. "rows.*.value_re") or by the last path component ("value_re").
using Tolerances = std::map<std::string, double>;

inline constexpr double kDefaultGoldenTolerance = 1e-9;

// Field-wise comparison of two result records. Throws SchemaMismatch when the
// schema versions differ.
GoldenResult golden_check(const std::string& result_path, const std::string& golden_path,
                          const Tolerances& tolerances = {});

}  // namespace isoq::cli
