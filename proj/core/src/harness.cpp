#include "isoq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "isoq/error.hpp"
#include "isoq/localmodel.hpp"
#include "isoq/poincare.hpp"

namespace isoq {

const char* to_string(Geometry g) {
  return g == Geometry::Bargmann ? "bargmann" : "modular";
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::Norm: return "norm";
    case Scenario::ToeplitzNorm: return "toeplitz-norm";
    case Scenario::Intersect: return "intersect";
    case Scenario::Overlap: return "overlap";
    case Scenario::EmptyIntersect: return "empty-intersect";
    case Scenario::PoincareNorm: return "poincare-norm";
    case Scenario::GeodesicIntersect: return "geodesic-intersect";
  }
  return "unknown";
}

Geometry geometry_from_string(const std::string& s) {
  if (s == "bargmann") return Geometry::Bargmann;
  if (s == "modular") return Geometry::Modular;
  throw Error(ErrorCode::InvalidSpec, "unknown geometry '" + s + "'");
}

Scenario scenario_from_string(const std::string& s) {
  for (Scenario sc : {Scenario::Norm, Scenario::ToeplitzNorm, Scenario::Intersect, Scenario::Overlap,
                      Scenario::EmptyIntersect, Scenario::PoincareNorm, Scenario::GeodesicIntersect})
    if (s == to_string(sc)) return sc;
  throw Error(ErrorCode::InvalidSpec, "unknown scenario '" + s + "'");
}

PlaneFunction symbol_function(const std::string& name) {
  if (name == "1") return [](Point2) { return cplx(1.0); };
  if (name == "u") return [](Point2 x) { return cplx(x.u); };
  if (name == "u2") return [](Point2 x) { return cplx(x.u * x.u); };
  if (name == "v2") return [](Point2 x) { return cplx(x.v * x.v); };
  if (name == "r2") return [](Point2 x) { return cplx(x.u * x.u + x.v * x.v); };
  throw Error(ErrorCode::InvalidSpec, "unknown symbol '" + name + "'");
}

namespace {

bool is_bargmann_scenario(Scenario s) {
  return s == Scenario::Norm || s == Scenario::ToeplitzNorm || s == Scenario::Intersect ||
         s == Scenario::Overlap || s == Scenario::EmptyIntersect;
}

bool is_norm_scenario(Scenario s) {
  return s == Scenario::Norm || s == Scenario::ToeplitzNorm || s == Scenario::PoincareNorm;
}

double circle_area(const CircleSpec& c) { return kPi * c.radius * c.radius; }

// Best rational approximation num/den of x with den <= max_den.
std::pair<long, long> rationalize(double x, long max_den) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / k1) <= 1e-12 * std::max(1.0, std::abs(x))) break;
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return {h1, k1};
}

std::vector<int> integer_schedule(const std::vector<double>& ps) {
  std::vector<int> out;
  for (double p : ps) {
    const double q = std::round(p);
    if (std::abs(p - q) > 1e-9 || q < 1) throw Error(ErrorCode::NotInteger, "modular p must be a positive integer");
    out.push_back(static_cast<int>(q));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Relative change under refinement, judged against the absolute mass when the
// value itself is the result of cancellation.
double certificate(cplx coarse, cplx fine, double mass) {
  const double scale = std::max(std::abs(fine), mass);
  return scale > 0.0 ? std::abs(coarse - fine) / scale : 0.0;
}

double curve_integral(const ParametrizedCurve& curve, const PlaneFunction& F) {
  const int n = 4096;
  const double h = curve.period / n;
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k) acc += F(curve.position(k * h));
  return (acc * h).real();
}

double tangent_angle(const CircleSpec& c, double t) { return t / c.radius + kPi / 2.0; }

void finish_fit(ComparisonReport& rep, double exponent) {
  std::vector<double> ps;
  std::vector<cplx> vals;
  for (const auto& r : rep.rows) {
    ps.push_back(r.p);
    vals.push_back(r.value);
  }
  rep.fitted = fit_power_series(ps, vals, exponent, rep.spec.fit_order);
  rep.fitted_k1 = fit_power_series(ps, vals, exponent, 1);
  rep.has_fit = true;
  rep.exponent = estimate_exponent(ps, vals);
  rep.expected_exponent = exponent;
  rep.exponent_error = std::abs(rep.exponent - exponent);
  if (std::abs(rep.predicted_b0) > 0.0)
    rep.relative_error_b0 = std::abs(rep.fitted.coefficients[0] - rep.predicted_b0) / std::abs(rep.predicted_b0);
  rep.diagnostics["b0_k1_vs_k2"] = std::abs(rep.fitted_k1.coefficients[0] - rep.fitted.coefficients[0]) /
                                   std::max(std::abs(rep.fitted.coefficients[0]), 1e-300);
}

// Oscillating runs: the ratio value / predicted is fitted with exponent 0.
void finish_ratio_fit(ComparisonReport& rep) {
  std::vector<double> ps;
  std::vector<cplx> ratios;
  for (const auto& r : rep.rows) {
    ps.push_back(r.p);
    ratios.push_back(r.corrected);
  }
  rep.fitted = fit_power_series(ps, ratios, 0.0, rep.spec.fit_order);
  rep.fitted_k1 = fit_power_series(ps, ratios, 0.0, 1);
  rep.has_fit = true;
  rep.predicted_b0 = 1.0;
  rep.exponent = estimate_exponent(ps, ratios);
  rep.expected_exponent = 0.0;
  rep.exponent_error = std::abs(rep.exponent);
  rep.relative_error_b0 = std::abs(rep.fitted.coefficients[0] - 1.0);
}

void finish_certificates(ComparisonReport& rep) {
  for (const auto& r : rep.rows) rep.max_certificate_delta = std::max(rep.max_certificate_delta, r.certificate_delta);
}

ComparisonReport bargmann_norm(const ExperimentSpec& spec) {
  ComparisonReport rep;
  rep.spec = spec;
  const bool toeplitz = spec.scenario == Scenario::ToeplitzNorm;
  const PlaneFunction F = symbol_function(toeplitz ? spec.f_symbol : "1");
  const auto ps = admissible_schedule(spec.p_schedule, {circle_area(spec.circle1)});
  const CurveFunction one = [](double) { return cplx(1.0); };
  ToeplitzOptions fine_grid;
  fine_grid.spacing *= 0.7;

  for (double p : ps) {
    ReportRow row;
    row.p = p;
    auto [bs, s] = make_bs_circle(spec.circle1, p, one, 0.0, spec.oversampling);
    double mass = 0.0;
    row.value = toeplitz ? toeplitz_inner(F, s, s) : inner_product(s, s, &mass);
    row.nodes_used = s.nodes.size();
    if (spec.certify) {
      auto [bs2, s2] = make_bs_circle(spec.circle1, p, one, 0.0, 2.0 * spec.oversampling);
      double mass2 = 0.0;
      const cplx fine = toeplitz ? toeplitz_inner(F, s2, s2, fine_grid) : inner_product(s2, s2, &mass2);
      row.certificate_delta = certificate(row.value, fine, mass2);
    }
    row.corrected = row.value / std::sqrt(p);
    row.extras["holonomy_residual"] = bs.holonomy_residual;
    rep.rows.push_back(std::move(row));
  }
  const double fF = curve_integral(circle_curve(spec.circle1), F);
  rep.predicted_b0 = predict_norm_b0(1, fF, 1.0, 1.0);
  for (auto& r : rep.rows) r.predicted = rep.predicted_b0 * std::sqrt(r.p);
  finish_fit(rep, 0.5);
  finish_certificates(rep);
  return rep;
}

ComparisonReport modular_norm(const ExperimentSpec& spec) {
  ComparisonReport rep;
  rep.spec = spec;
  const auto ps = integer_schedule(spec.p_schedule);
  auto psl2 = std::make_shared<const CosetTable>(coset_reps(spec.g0, spec.max_word_length, SignConvention::Psl2Distinct));
  auto sl2 = std::make_shared<const CosetTable>(coset_reps(spec.g0, spec.max_word_length, SignConvention::Sl2WithMinusIdentity));
  const SeriesOptions opt{};
  double l = 0.0;

  for (int p : ps) {
    GeodesicState st_psl2 = make_geodesic_state(p, spec.g0, psl2, opt);
    GeodesicState st_sl2 = make_geodesic_state(p, spec.g0, sl2, opt);
    l = st_psl2.curve.geo.translation_length;
    const GeodesicState& declared = spec.convention == SignConvention::Psl2Distinct ? st_psl2 : st_sl2;
    const GeodesicState& other = spec.convention == SignConvention::Psl2Distinct ? st_sl2 : st_psl2;

    ReportRow row;
    row.p = p;
    const PairingResult pr = reproducing_pairing_detail(declared.form, declared.curve, spec.oversampling);
    row.value = pr.value.real();
    row.nodes_used = pr.nodes;
    if (spec.certify) {
      const PairingResult fine = reproducing_pairing_detail(declared.form, declared.curve, 2.0 * spec.oversampling);
      row.certificate_delta = certificate(row.value, fine.value.real(), fine.series_mass);
    }
    row.extras["truncation_estimate"] = pr.truncation_estimate;
    row.extras["truncation_relative"] = pr.series_mass > 0.0 ? pr.truncation_estimate / pr.series_mass : 0.0;
    const double other_value = reproducing_norm(other, spec.oversampling);
    const double scale = std::sqrt(kPi / p) / l;
    const double v_psl2 = spec.convention == SignConvention::Psl2Distinct ? row.value.real() : other_value;
    const double v_sl2 = spec.convention == SignConvention::Psl2Distinct ? other_value : row.value.real();
    row.extras["norm_psl2"] = v_psl2;
    row.extras["norm_sl2"] = v_sl2;
    row.extras["ratio_psl2"] = v_psl2 * scale;
    row.extras["ratio_sl2"] = v_sl2 * scale;
    row.extras["kappa_re"] = declared.kappa.real();
    row.extras["kappa_im"] = declared.kappa.imag();
    row.corrected = row.value / std::sqrt(static_cast<double>(p));
    rep.rows.push_back(std::move(row));
  }
  rep.predicted_b0 = l / std::sqrt(kPi);
  for (auto& r : rep.rows) r.predicted = rep.predicted_b0 * std::sqrt(r.p);
  rep.diagnostics["translation_length"] = l;
  rep.diagnostics["classes"] = static_cast<double>(psl2->classes.size());
  finish_fit(rep, 0.5);
  finish_certificates(rep);
  return rep;
}

ComparisonReport bargmann_intersect(const ExperimentSpec& spec) {
  ComparisonReport rep;
  rep.spec = spec;
  const auto hits = intersect_circles(spec.circle1, spec.circle2);
  if (hits.empty()) throw Error(ErrorCode::InvalidSpec, "circles do not intersect");
  const auto ps = admissible_schedule(spec.p_schedule, {circle_area(spec.circle1), circle_area(spec.circle2)});
  const CurveFunction one = [](double) { return cplx(1.0); };

  std::vector<cplx> b0s;
  for (const auto& h : hits) {
    b0s.push_back(predict_intersection_b0(line_frame(tangent_angle(spec.circle1, h.t1)),
                                          line_frame(tangent_angle(spec.circle2, h.t2)), 1.0, 1.0, 1.0));
    rep.angles.push_back(h.theta);
  }

  for (double p : ps) {
    auto [bs1, s1] = make_bs_circle(spec.circle1, p, one, 0.0, spec.oversampling);
    auto [bs2, s2] = make_bs_circle(spec.circle2, p, one, 0.0, spec.oversampling);
    ReportRow row;
    row.p = p;
    double mass = 0.0;
    row.value = inner_product(s1, s2, &mass);
    row.nodes_used = s1.nodes.size() + s2.nodes.size();
    if (spec.certify) {
      auto [bf1, f1] = make_bs_circle(spec.circle1, p, one, 0.0, 2.0 * spec.oversampling);
      auto [bf2, f2] = make_bs_circle(spec.circle2, p, one, 0.0, 2.0 * spec.oversampling);
      double mass2 = 0.0;
      const cplx fine = inner_product(f1, f2, &mass2);
      row.certificate_delta = certificate(row.value, fine, mass2);
    }
    std::vector<cplx> lp;
    for (std::size_t q = 0; q < hits.size(); ++q) {
      const double ph = bs2.phase_at(hits[q].t2) - bs1.phase_at(hits[q].t1);
      lp.push_back(std::polar(1.0, p * ph));
      row.predicted += lp.back() * b0s[q];
      if (rep.lambdas.size() < hits.size()) rep.lambdas.push_back(std::polar(1.0, ph));
    }
    for (std::size_t a = 0; a < lp.size(); ++a)
      for (std::size_t b = a + 1; b < lp.size(); ++b)
        if (std::abs(lp[a] / lp[b] - 1.0) < 1e-3)
          throw Error(ErrorCode::PhaseAmbiguity, "intersection phases coincide at p = " + std::to_string(p));
    row.corrected = row.value / row.predicted;
    row.extras["modulus_ratio"] = std::abs(row.corrected);
    row.extras["phase_error"] = std::arg(row.corrected);
    rep.rows.push_back(std::move(row));
  }
  finish_ratio_fit(rep);
  finish_certificates(rep);
  return rep;
}

ComparisonReport bargmann_overlap(const ExperimentSpec& spec) {
  ComparisonReport rep;
  rep.spec = spec;
  const auto ps = admissible_schedule(spec.p_schedule, {circle_area(spec.circle1)});
  const CurveFunction one = [](double) { return cplx(1.0); };
  const double phi = spec.overlap_phase;

  for (double p : ps) {
    auto [bs1, s1] = make_bs_circle(spec.circle1, p, one, 0.0, spec.oversampling);
    auto [bs2, s2] = make_bs_circle(spec.circle1, p, one, phi, spec.oversampling);
    ReportRow row;
    row.p = p;
    double mass = 0.0;
    row.value = inner_product(s1, s2, &mass);
    row.nodes_used = s1.nodes.size() + s2.nodes.size();
    if (spec.certify) {
      auto [bf1, f1] = make_bs_circle(spec.circle1, p, one, 0.0, 2.0 * spec.oversampling);
      auto [bf2, f2] = make_bs_circle(spec.circle1, p, one, phi, 2.0 * spec.oversampling);
      double mass2 = 0.0;
      const cplx fine = inner_product(f1, f2, &mass2);
      row.certificate_delta = certificate(row.value, fine, mass2);
    }
    const cplx norm = inner_product(s1, s1);
    const cplx lambda_p = std::polar(1.0, p * phi);
    row.extras["phase_error"] = std::abs(std::arg(row.value / norm / lambda_p));
    row.corrected = row.value / lambda_p;
    row.predicted = lambda_p * std::sqrt(2.0) * 2.0 * kPi * spec.circle1.radius * std::sqrt(p);
    rep.rows.push_back(std::move(row));
  }
  rep.lambdas.push_back(std::polar(1.0, phi));
  rep.predicted_b0 = predict_norm_b0(1, 2.0 * kPi * spec.circle1.radius, 1.0, 1.0);

  std::vector<double> pv;
  std::vector<cplx> vals;
  double worst = 0.0;
  for (const auto& r : rep.rows) {
    pv.push_back(r.p);
    vals.push_back(r.corrected);
    worst = std::max(worst, r.extras.at("phase_error"));
  }
  rep.fitted = fit_power_series(pv, vals, 0.5, spec.fit_order);
  rep.fitted_k1 = fit_power_series(pv, vals, 0.5, 1);
  rep.has_fit = true;
  rep.exponent = estimate_exponent(pv, vals);
  rep.expected_exponent = 0.5;
  rep.exponent_error = std::abs(rep.exponent - 0.5);
  rep.relative_error_b0 = std::abs(rep.fitted.coefficients[0] - rep.predicted_b0) / std::abs(rep.predicted_b0);
  rep.diagnostics["max_phase_error"] = worst;
  finish_certificates(rep);
  return rep;
}

ComparisonReport bargmann_empty(const ExperimentSpec& spec) {
  ComparisonReport rep;
  rep.spec = spec;
  if (!intersect_circles(spec.circle1, spec.circle2).empty())
    throw Error(ErrorCode::InvalidSpec, "empty-intersect requires disjoint circles");
  const auto ps = admissible_schedule(spec.p_schedule, {circle_area(spec.circle1), circle_area(spec.circle2)});
  const CurveFunction one = [](double) { return cplx(1.0); };

  for (double p : ps) {
    auto [bs1, s1] = make_bs_circle(spec.circle1, p, one, 0.0, spec.oversampling);
    auto [bs2, s2] = make_bs_circle(spec.circle2, p, one, 0.0, spec.oversampling);
    ReportRow row;
    row.p = p;
    double mass = 0.0;
    row.value = inner_product(s1, s2, &mass);
    row.nodes_used = s1.nodes.size() + s2.nodes.size();
    if (spec.certify) {
      auto [bf1, f1] = make_bs_circle(spec.circle1, p, one, 0.0, 2.0 * spec.oversampling);
      auto [bf2, f2] = make_bs_circle(spec.circle2, p, one, 0.0, 2.0 * spec.oversampling);
      double mass2 = 0.0;
      const cplx fine = inner_product(f1, f2, &mass2);
      row.certificate_delta = certificate(row.value, fine, mass2);
    }
    row.corrected = row.value;
    row.extras["p6_abs"] = std::pow(p, 6) * std::abs(row.value);
    row.extras["abs_mass"] = mass;
    rep.rows.push_back(std::move(row));
  }

  bool decreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].extras["p6_abs"] < rep.rows[i - 1].extras["p6_abs"])) decreasing = false;
  rep.diagnostics["p6_decreasing"] = decreasing ? 1.0 : 0.0;

  // least squares slope of log|value| against p
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& r : rep.rows) {
    if (std::abs(r.value) == 0.0) continue;
    const double y = std::log(std::abs(r.value));
    sx += r.p; sy += y; sxx += r.p * r.p; sxy += r.p * y;
    ++n;
  }
  if (n >= 2) rep.diagnostics["decay_rate"] = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.predicted_b0 = 0.0;
  finish_certificates(rep);
  return rep;
}

ComparisonReport modular_intersect(const ExperimentSpec& spec) {
  ComparisonReport rep;
  rep.spec = spec;
  const auto ps = integer_schedule(spec.p_schedule);
  auto table1 = std::make_shared<const CosetTable>(coset_reps(spec.g0, spec.max_word_length, spec.convention));
  const CosetTable table2 = coset_reps(spec.g0_second, spec.max_word_length, spec.convention);
  const ClosedGeodesic cg2 = closed_geodesic(spec.g0_second);
  const ClosedGeodesic cg1 = closed_geodesic(spec.g0);
  const auto hits = quotient_geodesic_intersections(cg1, cg2, table2);
  if (hits.empty()) throw Error(ErrorCode::InvalidSpec, "closed geodesics do not intersect");
  for (const auto& h : hits) {
    rep.angles.push_back(h.theta);
    rep.lambdas.push_back(h.lambda);
  }

  for (int p : ps) {
    GeodesicState st = make_geodesic_state(p, spec.g0, table1);
    ReportRow row;
    row.p = p;
    const PairingResult pr = reproducing_pairing_detail(st.form, cg2, spec.oversampling);
    row.value = pr.value;
    row.nodes_used = pr.nodes;
    if (spec.certify) {
      const PairingResult fine = reproducing_pairing_detail(st.form, cg2, 2.0 * spec.oversampling);
      row.certificate_delta = certificate(row.value, fine.value, fine.series_mass);
    }
    row.extras["truncation_estimate"] = pr.truncation_estimate;
    std::vector<cplx> lp;
    for (const auto& h : hits) {
      lp.push_back(ipow(h.lambda / std::abs(h.lambda), p));
      row.predicted += lp.back() * angle_coefficient(h.theta);
    }
    for (std::size_t a = 0; a < lp.size(); ++a)
      for (std::size_t b = a + 1; b < lp.size(); ++b)
        if (std::abs(lp[a] / lp[b] - 1.0) < 1e-3 && std::abs(hits[a].t2 - hits[b].t2) > 1e-9)
          throw Error(ErrorCode::PhaseAmbiguity, "intersection phases coincide at p = " + std::to_string(p));
    row.corrected = std::abs(row.predicted) > 0.0 ? row.value / row.predicted : cplx(0.0);
    row.extras["modulus_ratio"] = std::abs(row.corrected);
    rep.rows.push_back(std::move(row));
  }
  rep.diagnostics["intersections"] = static_cast<double>(hits.size());
  finish_ratio_fit(rep);
  finish_certificates(rep);
  return rep;
}

}  // namespace

void validate(const ExperimentSpec& spec) {
  if (spec.p_schedule.empty()) throw Error(ErrorCode::InvalidSpec, "empty p schedule");
  for (double p : spec.p_schedule)
    if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidSpec, "p values must be positive");
  if (spec.fit_order < 1) throw Error(ErrorCode::InvalidSpec, "fit order must be at least 1");
  if (spec.p_schedule.size() < static_cast<std::size_t>(spec.fit_order) + 3)
    throw Error(ErrorCode::InsufficientSamples, "p schedule needs at least fit_order + 3 entries");
  if (!(spec.oversampling > 0.0)) throw Error(ErrorCode::InvalidSpec, "oversampling must be positive");
  const bool flat = is_bargmann_scenario(spec.scenario);
  if (flat != (spec.geometry == Geometry::Bargmann))
    throw Error(ErrorCode::GeometryMismatch,
                std::string("scenario ") + to_string(spec.scenario) + " does not run on " + to_string(spec.geometry));
  if (flat) {
    if (!(spec.circle1.radius > 0.0) || !(spec.circle2.radius > 0.0))
      throw Error(ErrorCode::InvalidSpec, "radii must be positive");
    symbol_function(spec.f_symbol);
  } else {
    if (spec.max_word_length < 0) throw Error(ErrorCode::WordLengthTooSmall, "word length must be non-negative");
    if (spec.g0.det() != 1) throw Error(ErrorCode::InvalidSpec, "g0 must have determinant 1");
    if (std::abs(spec.g0.trace()) <= 2) throw Error(ErrorCode::NotHyperbolic, "g0 must be hyperbolic");
    if (spec.scenario == Scenario::GeodesicIntersect) {
      if (spec.g0_second.det() != 1) throw Error(ErrorCode::InvalidSpec, "second g0 must have determinant 1");
      if (std::abs(spec.g0_second.trace()) <= 2) throw Error(ErrorCode::NotHyperbolic, "second g0 must be hyperbolic");
    }
  }
}

long admissibility_lattice(const std::vector<double>& areas) {
  if (areas.empty()) throw Error(ErrorCode::InvalidSpec, "no areas");
  long lattice = 1;
  for (double a : areas) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidSpec, "areas must be positive");
    const double ratio = a / areas[0];
    const auto [num, den] = rationalize(ratio, 10000);
    if (den == 0 || std::abs(ratio - static_cast<double>(num) / den) > 1e-10 * std::max(1.0, ratio))
      throw Error(ErrorCode::InvalidSpec, "area ratios are not commensurable at denominators <= 10^4");
    lattice = std::lcm(lattice, den);
  }
  return lattice;
}

std::vector<double> admissible_schedule(const std::vector<double>& nominal, const std::vector<double>& areas) {
  const long lattice = admissibility_lattice(areas);
  std::vector<long> ks;
  for (double p : nominal) {
    if (!(p > 0.0)) throw Error(ErrorCode::InvalidSpec, "p values must be positive");
    long m = std::lround(p * areas[0] / lattice);
    ks.push_back(std::max(1L, m) * lattice);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<double> out;
  for (long k : ks) out.push_back(static_cast<double>(k) / areas[0]);
  return out;
}

ComparisonReport run_norm_experiment(const ExperimentSpec& spec) {
  validate(spec);
  if (!is_norm_scenario(spec.scenario))
    throw Error(ErrorCode::InvalidSpec, std::string("not a norm scenario: ") + to_string(spec.scenario));
  return spec.geometry == Geometry::Bargmann ? bargmann_norm(spec) : modular_norm(spec);
}

ComparisonReport run_intersection_experiment(const ExperimentSpec& spec) {
  validate(spec);
  switch (spec.scenario) {
    case Scenario::Intersect: return bargmann_intersect(spec);
    case Scenario::Overlap: return bargmann_overlap(spec);
    case Scenario::EmptyIntersect: return bargmann_empty(spec);
    case Scenario::GeodesicIntersect: return modular_intersect(spec);
    default: break;
  }
  throw Error(ErrorCode::InvalidSpec, std::string("not an intersection scenario: ") + to_string(spec.scenario));
}

ComparisonReport run_experiment(const ExperimentSpec& spec) {
  return is_norm_scenario(spec.scenario) ? run_norm_experiment(spec) : run_intersection_experiment(spec);
}

}  // namespace isoq
