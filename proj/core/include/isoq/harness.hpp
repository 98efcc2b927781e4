#pragma once

#include <map>
#include <string>
#include <vector>

#include "isoq/bargmann.hpp"
#include "isoq/cosets.hpp"
#include "isoq/numerics.hpp"

namespace isoq {

enum class Geometry { Bargmann, Modular };
enum class Scenario { Norm, ToeplitzNorm, Intersect, Overlap, EmptyIntersect, PoincareNorm, GeodesicIntersect };

const char* to_string(Geometry g);
const char* to_string(Scenario s);
Geometry geometry_from_string(const std::string& s);
Scenario scenario_from_string(const std::string& s);

// Named multiplication symbols for Toeplitz runs: "1", "u2", "v2", "r2", "u".
PlaneFunction symbol_function(const std::string& name);

struct ExperimentSpec {
  Geometry geometry = Geometry::Bargmann;
  Scenario scenario = Scenario::Norm;
  std::vector<double> p_schedule;  // nominal; Bargmann values are snapped to the admissibility lattice
  CircleSpec circle1{{0.0, 0.0}, 1.0};
  CircleSpec circle2{{1.0, 0.0}, 1.0};
  std::string f_symbol = "1";
  double overlap_phase = 0.0;
  IntMatrix g0{2, 1, 1, 1};
  IntMatrix g0_second{3, 2, 1, 1};
  int max_word_length = 12;
  SignConvention convention = SignConvention::Psl2Distinct;
  double oversampling = 1.0;
  int fit_order = 2;
  bool certify = true;
};

void validate(const ExperimentSpec& spec);

// Smallest K such that K * A_i / A_1 is an integer for every area, from
// continued-fraction approximations of the ratios (denominators <= 10^4).
long admissibility_lattice(const std::vector<double>& areas);

// Snaps each nominal p to K / A_1 with K the nearest positive lattice multiple;
// duplicates are dropped and the result is sorted.
std::vector<double> admissible_schedule(const std::vector<double>& nominal, const std::vector<double>& areas);

struct ReportRow {
  double p = 0.0;
  cplx value;
  cplx predicted;   // predicted leading term at this p (0 when not applicable)
  cplx corrected;   // value / p^exponent, or value / predicted for oscillating runs
  std::size_t nodes_used = 0;
  double certificate_delta = 0.0;
  std::map<std::string, double> extras;
};

struct ComparisonReport {
  ExperimentSpec spec;
  AsymptoticFit fitted;
  AsymptoticFit fitted_k1;
  bool has_fit = false;
  cplx predicted_b0;
  double relative_error_b0 = 0.0;
  double expected_exponent = 0.0;
  double exponent = 0.0;
  double exponent_error = 0.0;
  double max_certificate_delta = 0.0;
  std::vector<ReportRow> rows;
  std::vector<cplx> lambdas;
  std::vector<double> angles;
  std::map<std::string, double> diagnostics;
};

ComparisonReport run_norm_experiment(const ExperimentSpec& spec);
ComparisonReport run_intersection_experiment(const ExperimentSpec& spec);
ComparisonReport run_experiment(const ExperimentSpec& spec);

}  // namespace isoq
