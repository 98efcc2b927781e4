#include <cmath>

#include "doctest.h"
#include "isoq/error.hpp"
#include "isoq/harness.hpp"
#include "isoq/parallel.hpp"

using namespace isoq;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an isoq::Error");
  return ErrorCode::InvalidSpec;
}

ExperimentSpec small_norm() {
  ExperimentSpec s;
  s.p_schedule = {4, 6, 8, 10, 12, 14};
  s.circle1 = {{0.0, 0.0}, 0.5};
  return s;
}

}  // namespace

TEST_CASE("enum names round-trip") {
  for (Scenario s : {Scenario::Norm, Scenario::ToeplitzNorm, Scenario::Intersect, Scenario::Overlap,
                     Scenario::EmptyIntersect, Scenario::PoincareNorm, Scenario::GeodesicIntersect})
    CHECK(scenario_from_string(to_string(s)) == s);
  for (Geometry g : {Geometry::Bargmann, Geometry::Modular}) CHECK(geometry_from_string(to_string(g)) == g);
  CHECK(code_of([] { scenario_from_string("bogus"); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("symbols") {
  CHECK(symbol_function("1")({0.3, 0.4}) == cplx(1.0));
  CHECK(symbol_function("r2")({0.3, 0.4}).real() == doctest::Approx(0.25));
  CHECK(symbol_function("u")({0.3, 0.4}).real() == doctest::Approx(0.3));
  CHECK(code_of([] { symbol_function("w3"); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("admissibility lattice from area ratios") {
  CHECK(admissibility_lattice({kPi}) == 1);
  CHECK(admissibility_lattice({kPi, 2 * kPi}) == 1);
  CHECK(admissibility_lattice({kPi, 1.5 * kPi}) == 2);
  CHECK(admissibility_lattice({3.0, 4.0, 5.0}) == 3);
}

TEST_CASE("schedules snap to the lattice, sorted and deduplicated") {
  const auto ps = admissible_schedule({20.0, 10.0, 9.95, 30.0}, {kPi});
  REQUIRE(ps.size() == 3);
  CHECK(ps[0] == doctest::Approx(31.0 / kPi));
  CHECK(ps[1] == doctest::Approx(63.0 / kPi));
  CHECK(ps[2] == doctest::Approx(94.0 / kPi));
  const auto two = admissible_schedule({10.0}, {kPi, 1.5 * kPi});
  REQUIRE(two.size() == 1);
  CHECK(std::fmod(two[0] * kPi + 1e-9, 2.0) < 1e-6);
}

TEST_CASE("spec validation") {
  auto s = small_norm();
  CHECK_NOTHROW(validate(s));
  s.p_schedule = {};
  CHECK(code_of([&] { validate(s); }) == ErrorCode::InvalidSpec);
  s.p_schedule = {4, 6, 8};
  CHECK(code_of([&] { validate(s); }) == ErrorCode::InsufficientSamples);
  s = small_norm();
  s.p_schedule[2] = -1;
  CHECK(code_of([&] { validate(s); }) == ErrorCode::InvalidSpec);
  s = small_norm();
  s.scenario = Scenario::PoincareNorm;
  CHECK(code_of([&] { validate(s); }) == ErrorCode::GeometryMismatch);
  s = small_norm();
  s.circle2.radius = 0;
  CHECK(code_of([&] { validate(s); }) == ErrorCode::InvalidSpec);
  s = small_norm();
  s.f_symbol = "nope";
  CHECK(code_of([&] { validate(s); }) == ErrorCode::InvalidSpec);
  s = small_norm();
  s.geometry = Geometry::Modular;
  s.scenario = Scenario::PoincareNorm;
  s.g0 = {1, 1, 0, 1};
  CHECK(code_of([&] { validate(s); }) == ErrorCode::NotHyperbolic);
  s.g0 = {2, 1, 1, 2};
  CHECK(code_of([&] { validate(s); }) == ErrorCode::InvalidSpec);
  s.g0 = {2, 1, 1, 1};
  s.max_word_length = -2;
  CHECK(code_of([&] { validate(s); }) == ErrorCode::WordLengthTooSmall);
}

TEST_CASE("norm experiment fits the square-root law") {
  const auto rep = run_experiment(small_norm());
  REQUIRE(rep.has_fit);
  CHECK(rep.rows.size() == 6);
  CHECK(rep.exponent == doctest::Approx(0.5).epsilon(0.02));
  CHECK(rep.relative_error_b0 < 1e-3);
  CHECK(rep.max_certificate_delta < 1e-7);
  for (const auto& r : rep.rows) CHECK(std::abs(r.value.imag()) < 1e-10 * r.value.real());
}

TEST_CASE("overlap of a curve with a phase-shifted copy carries the phase") {
  auto s = small_norm();
  s.scenario = Scenario::Overlap;
  s.overlap_phase = 0.7;
  const auto rep = run_experiment(s);
  CHECK(rep.diagnostics.at("max_phase_error") < 1e-8);
}

TEST_CASE("disjoint circles give negligible overlap") {
  auto s = small_norm();
  s.scenario = Scenario::EmptyIntersect;
  s.circle2 = {{2.0, 0.0}, 0.5};
  const auto rep = run_experiment(s);
  CHECK_FALSE(rep.has_fit);
  for (const auto& r : rep.rows) CHECK(std::abs(r.value) < 1e-3);
  s.circle2 = {{0.5, 0.0}, 0.5};
  CHECK_THROWS_AS(run_experiment(s), Error);
}

TEST_CASE("experiments are deterministic across worker counts") {
  auto s = small_norm();
  s.scenario = Scenario::Intersect;
  s.circle2 = {{0.6, 0.0}, 0.5};
  s.p_schedule = {20, 30, 40, 50, 60, 70};
  set_default_workers(1);
  const auto a = run_experiment(s);
  set_default_workers(4);
  const auto b = run_experiment(s);
  set_default_workers(1);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].value.real() == b.rows[i].value.real());
    CHECK(a.rows[i].value.imag() == b.rows[i].value.imag());
  }
  CHECK(a.angles.size() == 2);
}
