#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "isoq/cosets.hpp"
#include "isoq/error.hpp"
#include "isoq/geodesic.hpp"
#include "isoq/moebius.hpp"
#include "isoq/poincare.hpp"
#include "oracles.hpp"

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

const IntMatrix kG0{2, 1, 1, 1};

std::shared_ptr<const CosetTable> table(int L, SignConvention c = SignConvention::Psl2Distinct) {
  return std::make_shared<const CosetTable>(coset_reps(kG0, L, c));
}

}  // namespace

TEST_CASE("hyperbolic kernel matches its definition") {
  const cplx z(0.3, 1.2), w(-0.4, 0.6);
  for (int p = 1; p <= 6; ++p)
    CHECK(std::abs(hyperbolic_kernel(p, z, w) - oracle::hyperbolic_kernel(p, z, w)) <
          1e-13 * std::abs(oracle::hyperbolic_kernel(p, z, w)));
  CHECK(std::abs(hyperbolic_kernel(1, {0, 1}, {0, 1}) - 1.0 / (4 * kPi)) < 1e-16);
  CHECK(hyperbolic_kernel_constant(3) == doctest::Approx(-5.0 * 16.0 / kPi));
}

TEST_CASE("Moebius elements") {
  const auto g = MoebiusElement::make(2, 1, 1, 1);
  CHECK(g.classify() == MoebiusClass::Hyperbolic);
  CHECK(MoebiusElement::make(0, -1, 1, 0).classify() == MoebiusClass::Elliptic);
  CHECK(MoebiusElement::make(1, 1, 0, 1).classify() == MoebiusClass::Parabolic);
  CHECK(code_of([] { MoebiusElement::make(1, 1, 1, 1); }) == ErrorCode::InvalidSpec);
  const cplx z(0.2, 0.7);
  CHECK(std::abs(moebius_apply(g * g.inverse(), z) - z) < 1e-15);
  CHECK(std::abs(moebius_apply(g, moebius_apply(g, z)) - moebius_apply(g * g, z)) < 1e-14);
  CHECK(std::abs(j_factor(g, z) - (z + 1.0)) < 1e-15);
  CHECK(to_integer(g) == kG0);
  CHECK(code_of([] { to_integer(MoebiusElement{1.5, 0, 0, 1.0 / 1.5}); }) == ErrorCode::NotInteger);
  CHECK(kG0.power(3) == kG0 * kG0 * kG0);
  CHECK((-kG0).sign_normalized() == kG0);
}

TEST_CASE("weighted kernel modulus is Moebius invariant") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2), pos(0.2, 2);
  for (int n = 0; n < 10; ++n) {
    const double a = pos(rng), b = u(rng), c = u(rng);
    const auto g = MoebiusElement::make(a, b, c, (1 + b * c) / a);
    const cplx z(u(rng), pos(rng)), w(u(rng), pos(rng));
    const double before = weighted_kernel_modulus(4, z, w);
    CHECK(std::abs(weighted_kernel_modulus(4, moebius_apply(g, z), moebius_apply(g, w)) - before) < 1e-12 * before);
  }
}

TEST_CASE("axis geodesic of g0") {
  const auto geo = geodesic_from_hyperbolic(kG0.to_moebius());
  const double s5 = std::sqrt(5.0);
  CHECK(std::min(geo.start, geo.end) == doctest::Approx((1 - s5) / 2));
  CHECK(std::max(geo.start, geo.end) == doctest::Approx((1 + s5) / 2));
  CHECK(geo.translation_length == doctest::Approx(2 * std::acosh(1.5)));
  // g0 moves the geodesic along itself by the translation length
  for (double t : {-0.7, 0.0, 1.1}) {
    const cplx moved = moebius_apply(kG0.to_moebius(), geo.position(t));
    CHECK(std::abs(moved - geo.position(t + geo.translation_length)) < 1e-12);
    CHECK(std::abs(std::abs(geo.velocity(t)) / geo.position(t).imag() - 1.0) < 1e-12);
    CHECK(geo.param_of(geo.position(t)) == doctest::Approx(t));
  }
  const auto sec = geodesic_section(geo);
  CHECK(sec.flatness_error < 1e-8);
}

TEST_CASE("coset enumeration counts") {
  const std::size_t expected[] = {55, 144, 377, 987};
  const int lengths[] = {6, 8, 10, 12};
  for (int k = 0; k < 4; ++k) CHECK(table(lengths[k])->representatives.size() == expected[k]);
  for (int L : {2, 4, 6, 8})
    CHECK(table(L)->representatives.size() == oracle::brute_force_coset_count({2, 1, 1, 1}, L));
}

TEST_CASE("coset representatives are distinct cosets") {
  const auto t = table(6);
  const oracle::Mat g0{2, 1, 1, 1};
  const auto& reps = t->representatives;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      const oracle::Mat a{reps[i].a, reps[i].b, reps[i].c, reps[i].d}, b{reps[j].a, reps[j].b, reps[j].c, reps[j].d};
      CHECK_FALSE(oracle::in_cyclic(a.inv() * b, g0));
    }
  CHECK(canonical_coset(kG0 * kG0, kG0) == canonical_coset(IntMatrix{}, kG0));
}

TEST_CASE("quadratic form pullback") {
  const QuadForm q = katok_form(kG0);
  CHECK(q == QuadForm{1, -1, -1});
  CHECK(q.discriminant() == 5);
  const cplx z(0.25, 0.8);
  for (const IntMatrix& h : {kMatS, kMatT, IntMatrix{2, 1, 1, 1}, IntMatrix{1, 0, 3, 1}}) {
    const auto g = h.to_moebius();
    const cplx direct = std::pow(j_factor(g, z), 2) * q(moebius_apply(g, z));
    const QuadForm pq = pullback(q, h);
    CHECK(std::abs(pq(z) - direct) < 1e-12 * std::abs(direct));
    CHECK(pq.discriminant() == 5);
  }
  CHECK(pullback(q, kG0) == q);
  CHECK(std::abs(q.shifted(1)(z + 1.0) - q(z)) < 1e-14);
}

TEST_CASE("psl2 orders") {
  CHECK(psl2_order(kMatS) == 2);
  CHECK(psl2_order(IntMatrix{0, -1, 1, 1}) == 3);
  CHECK(psl2_order(kG0) == 0);
}

TEST_CASE("geodesic normalization matches the closed form") {
  const auto t = table(0);
  const cplx expected[] = {161.68121203, -394.396560855, 949.735790945, -2265.25204183};
  for (int p = 6; p <= 9; ++p) {
    CHECK(std::abs(katok_normalization(p, kG0) - expected[p - 6]) < 1e-8 * std::abs(expected[p - 6]));
    const auto state = make_geodesic_state(p, kG0, t);
    CHECK(std::abs(state.kappa - katok_normalization(p, kG0)) < 1e-8 * std::abs(state.kappa));
  }
}

TEST_CASE("cusp forms are modular") {
  const auto state = make_geodesic_state(6, kG0, table(12));
  for (cplx z : {cplx(0.1, 1.1), cplx(-0.3, 0.95), cplx(0.45, 1.4)}) {
    CHECK(modularity_residual(state.form, MoebiusElement::make(1, 1, 0, 1), z) < 1e-12);
    const auto S = MoebiusElement::make(0, -1, 1, 0);
    const auto at_z = state.form.evaluate(z), at_sz = state.form.evaluate(moebius_apply(S, z));
    const double jj = std::pow(std::abs(j_factor(S, z)), 12);
    const double budget = (at_sz.truncation_estimate + jj * at_z.truncation_estimate) / std::abs(at_z.value);
    CHECK(modularity_residual(state.form, S, z) < budget);
  }
}

TEST_CASE("Petersson norm agrees with the reproducing norm") {
  const auto state = make_geodesic_state(6, kG0, table(12));
  const double rep = reproducing_norm(state);
  const auto pet = petersson_norm(state.form);
  CHECK(rep == doctest::Approx(10.6220751).epsilon(1e-7));
  CHECK(pet.value == doctest::Approx(rep).epsilon(1e-6));
}

TEST_CASE("odd weights vanish on the folded geodesic") {
  const auto state = make_geodesic_state(7, kG0, table(10));
  const auto r = reproducing_pairing_detail(state.form, state.curve);
  CHECK(std::abs(r.value) < 1e-8 * r.series_mass);
}

TEST_CASE("hyperbolic input errors") {
  CHECK(code_of([] { geodesic_from_hyperbolic(kMatS.to_moebius()); }) == ErrorCode::NotHyperbolic);
  CHECK(code_of([] { katok_series(1, *table(2), {0.0, 1.0}); }) == ErrorCode::WeightTooSmall);
  CHECK(code_of([] { coset_reps(kG0, -1); }) == ErrorCode::WordLengthTooSmall);
  CHECK(code_of([] { katok_series(6, *table(3), {0.1, 1.1}); }) == ErrorCode::TruncationNotConverged);
}
