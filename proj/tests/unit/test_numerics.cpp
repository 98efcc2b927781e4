#include <cmath>
#include <random>

#include "doctest.h"
#include "isoq/error.hpp"
#include "isoq/numerics.hpp"
#include "isoq/parallel.hpp"
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

}  // namespace

TEST_CASE("ipow matches std::pow for positive and negative exponents") {
  const cplx z(0.3, -1.7);
  for (int n = -9; n <= 9; ++n) CHECK(std::abs(ipow(z, n) - std::pow(z, n)) <= 1e-13 * std::abs(std::pow(z, n)));
  CHECK(ipow(z, 0) == cplx(1.0));
}

TEST_CASE("det_sqrt_continued reduces to the positive root for B = 0") {
  RealMatrix A(2, 2);
  A << 2.0, 0.5, 0.5, 1.0;
  const cplx r = det_sqrt_continued(A, RealMatrix::Zero(2, 2));
  CHECK(r.real() == doctest::Approx(1.0 / std::sqrt(1.75)).epsilon(1e-14));
  CHECK(std::abs(r.imag()) < 1e-15);
}

TEST_CASE("det_sqrt_continued in one dimension is (a + ib)^(-1/2) on the principal branch") {
  RealMatrix A(1, 1), B(1, 1);
  for (double b : {-30.0, -2.0, 0.3, 5.0, 100.0}) {
    A(0, 0) = 1.0;
    B(0, 0) = b;
    const cplx expect = 1.0 / std::sqrt(cplx(1.0, b));
    CHECK(std::abs(det_sqrt_continued(A, B) - expect) < 1e-13);
  }
}

TEST_CASE("det_sqrt_continued follows the branch past the principal cut") {
  // three identical eigenvalues 1 + 3i: the determinant winds past arg = pi
  RealMatrix A = RealMatrix::Identity(3, 3), B = 3.0 * RealMatrix::Identity(3, 3);
  const cplx expect = std::pow(1.0 / std::sqrt(cplx(1.0, 3.0)), 3);
  CHECK(std::abs(det_sqrt_continued(A, B) - expect) < 1e-13);
  CHECK(std::abs(det_sqrt_continued(A, B) + 1.0 / std::sqrt(cplx(1.0, 3.0) * cplx(1.0, 3.0) * cplx(1.0, 3.0))) < 1e-13);
}

TEST_CASE("gaussian_integral_closed agrees with brute-force grids") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 12; ++i) {
    const int k = 1 + i % 3;
    auto [A, B] = oracle::random_pair(rng, k, 1.5);
    const cplx closed = gaussian_integral_closed(A.cast<cplx>() + kI * B.cast<cplx>());
    const cplx brute = oracle::gaussian_grid(A, B, 0.15, 3.6);
    CHECK(std::abs(closed - brute) / std::abs(brute) < 1e-8);
  }
}

TEST_CASE("Gaussian and branch errors") {
  RealMatrix A(2, 2), B = RealMatrix::Zero(2, 2);
  A << 1.0, 0.2, 0.3, 1.0;
  CHECK(code_of([&] { det_sqrt_continued(A, B); }) == ErrorCode::NonSymmetric);
  A << 1.0, 0.0, 0.0, -1.0;
  CHECK(code_of([&] { det_sqrt_continued(A, B); }) == ErrorCode::ANotPositiveDefinite);
  ComplexMatrix C(1, 1);
  C(0, 0) = cplx(-1.0, 1.0);
  CHECK(code_of([&] { gaussian_integral_closed(C); }) == ErrorCode::RealPartNotPositiveDefinite);
}

TEST_CASE("composite Gauss-Legendre integrates polynomials exactly") {
  const auto rule = build_rule(RuleKind::GaussLegendreComposite, -1.0, 2.0, 16, 8);
  CHECK(rule.size() == 16);
  const double v = rule.integrate([](double x) { return std::pow(x, 15) - 3 * x * x; });
  const double exact = (std::pow(2.0, 16) - 1.0) / 16.0 - (8.0 + 1.0);
  CHECK(v == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("periodic trapezoid is spectrally accurate for periodic integrands") {
  const auto rule = build_rule(RuleKind::PeriodicTrapezoid, 0.0, 2 * kPi, 32);
  const double v = rule.integrate([](double t) { return std::exp(std::cos(t)); });
  CHECK(v == doctest::Approx(2 * kPi * std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-14));
}

TEST_CASE("build_rule rejects bad node counts") {
  CHECK(code_of([] { build_rule(RuleKind::PeriodicTrapezoid, 0, 1, 1); }) == ErrorCode::BadNodeCount);
  CHECK(code_of([] { build_rule(RuleKind::GaussLegendreComposite, 0, 1, 12, 8); }) == ErrorCode::BadNodeCount);
}

TEST_CASE("fit_power_series recovers synthetic coefficients") {
  std::vector<double> ps;
  std::vector<cplx> vals;
  const cplx b0(2.0, -1.0), b1(0.5, 0.25), b2(-3.0, 0.0);
  for (int p = 10; p <= 200; p += 10) {
    ps.push_back(p);
    vals.push_back(std::pow(p, 0.5) * (b0 + b1 / double(p) + b2 / double(p * p)));
  }
  const auto fit = fit_power_series(ps, vals, 0.5, 2);
  CHECK(std::abs(fit.coefficients[0] - b0) < 1e-10);
  CHECK(std::abs(fit.coefficients[1] - b1) < 1e-8);
  CHECK(std::abs(fit.coefficients[2] - b2) < 1e-6);
  CHECK(fit.residual_norm < 1e-10);
  CHECK(estimate_exponent(ps, vals) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("fit and exponent errors") {
  std::vector<double> ps{1, 2};
  std::vector<cplx> v{1.0, 2.0};
  CHECK(code_of([&] { fit_power_series(ps, v, 0.0, 2); }) == ErrorCode::InsufficientSamples);
  std::vector<double> ps3{1, 2, 3};
  std::vector<cplx> z3{1.0, 0.0, 1.0};
  CHECK(code_of([&] { estimate_exponent(ps3, z3); }) == ErrorCode::ZeroValue);
  std::vector<double> close{1000.0, 1000.0 + 1e-9, 1000.0 + 2e-9, 1000.0 + 3e-9};
  std::vector<cplx> v4(4, 1.0);
  CHECK(code_of([&] { fit_power_series(close, v4, 0.0, 2); }) == ErrorCode::IllConditioned);
}

TEST_CASE("pairwise sums and parallel loops do not depend on the worker count") {
  std::vector<cplx> terms(10007);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto& t : terms) t = {u(rng) * 1e8, u(rng)};
  std::vector<cplx> a(terms.size()), b(terms.size());
  parallel_for(terms.size(), [&](std::size_t i) { a[i] = terms[i] * terms[i]; }, 1);
  parallel_for(terms.size(), [&](std::size_t i) { b[i] = terms[i] * terms[i]; }, 7);
  const cplx sa = pairwise_sum(a), sb = pairwise_sum(b);
  CHECK(sa.real() == sb.real());
  CHECK(sa.imag() == sb.imag());
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) { if (i == 57) throw std::runtime_error("x"); }, 4),
                  std::runtime_error);
}
