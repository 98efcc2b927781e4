#include <cmath>
#include <vector>

#include "doctest.h"
#include "isoq/error.hpp"
#include "isoq/localmodel.hpp"
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

Eigen::MatrixXd columns(const IsotropicFrame& f) {
  Eigen::MatrixXd m(f.dim_ambient, static_cast<int>(f.vectors.size()));
  for (std::size_t j = 0; j < f.vectors.size(); ++j) m.col(static_cast<int>(j)) = f.vectors[j];
  return m;
}

IsotropicFrame frame(int dim, std::vector<Eigen::VectorXd> v) { return {dim, std::move(v)}; }

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("model kernel matches the written-out flat kernel") {
  const LocalKernelParams params{1, 1.0};
  const std::vector<double> z{0.3, -0.2}, w{-0.5, 0.7};
  CHECK(std::abs(model_kernel(params, z, w) - oracle::flat_kernel(1.0, 0.3, -0.2, -0.5, 0.7)) < 1e-15);
  CHECK(symplectic_pairing(z, w) == doctest::Approx(0.3 * 0.7 - (-0.2) * (-0.5)));
}

TEST_CASE("pair integral of two lines agrees with a brute-force grid") {
  const LocalKernelParams params{1, 1.0};
  for (double theta : {0.4, 1.3, 2.2, 2.9}) {
    const auto e = line_frame(0.0), nu = line_frame(theta);
    const cplx closed = gaussian_pair_integral(e, nu, params);
    const cplx brute = oracle::pair_integral_grid(columns(e), columns(nu), 0.04, 14.0 / std::sin(theta));
    CHECK(std::abs(closed - brute) / std::abs(brute) < 1e-6);
  }
}

TEST_CASE("pair integral in R^4 against a grid") {
  const LocalKernelParams params{2, 1.0};
  const double c = std::cos(0.8), s = std::sin(0.8);
  // Lagrangian span{e_u1, e_u2}; second frame a rotated isotropic line
  const auto e = frame(4, {vec({1, 0, 0, 0}), vec({0, 0, 1, 0})});
  const auto nu = frame(4, {vec({c, s, 0, 0})});
  const cplx closed = gaussian_pair_integral(e, nu, params);
  const cplx brute = oracle::pair_integral_grid(columns(e), columns(nu), 0.12, 7.0);
  CHECK(std::abs(closed - brute) / std::abs(brute) < 1e-6);
}

TEST_CASE("angle coefficient closed form and predictor agree") {
  for (double theta : {0.1, 1.0, kPi / 2, 2.5, 3.5, 5.0}) {
    const double s = std::sin(theta);
    const cplx root = s > 0 ? cplx(std::sqrt(s)) : cplx(0.0, std::sqrt(-s));
    const cplx expect = std::sqrt(2.0) * std::polar(1.0, theta / 2 - kPi / 4) / root;
    CHECK(std::abs(angle_coefficient(theta) - expect) < 1e-14);
    CHECK(std::abs(predict_intersection_b0(line_frame(0.3), line_frame(0.3 + theta), 1.0, 1.0, 1.0) -
                   angle_coefficient(theta)) < 1e-12);
  }
  // at right angles the coefficient is sqrt(2) e^{0} = sqrt(2)
  CHECK(std::abs(angle_coefficient(kPi / 2) - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("predict_norm_b0 scales with the inputs") {
  const double base = predict_norm_b0(1, 1.0, 1.0, 1.0);
  CHECK(predict_norm_b0(1, 3.0, 1.0, 1.0) == doctest::Approx(3.0 * base));
  CHECK(base > 0.0);
}

TEST_CASE("local model error codes") {
  const LocalKernelParams params{1, 1.0};
  CHECK(code_of([] { angle_coefficient(0.0); }) == ErrorCode::TangentialIntersection);
  CHECK(code_of([] { angle_coefficient(kPi); }) == ErrorCode::TangentialIntersection);
  CHECK(code_of([&] { gaussian_pair_integral(line_frame(0.2), line_frame(0.2), params); }) ==
        ErrorCode::OverlappingSubspaces);
  const LocalKernelParams p2{2, 1.0};
  const auto short_frame = frame(4, {vec({1, 0, 0, 0})});
  CHECK(code_of([&] { gaussian_pair_integral(short_frame, short_frame, p2); }) == ErrorCode::NotLagrangian);
  const auto symplectic_pair = frame(4, {vec({1, 0, 0, 0}), vec({0, 1, 0, 0})});
  CHECK(code_of([&] { validate(symplectic_pair); }) == ErrorCode::NotIsotropic);
  CHECK(code_of([&] { gaussian_pair_integral(symplectic_pair, short_frame, p2); }) == ErrorCode::NotLagrangian);
  CHECK(code_of([] { validate(LocalKernelParams{0, 1.0}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("principal angle sine") {
  CHECK(min_principal_angle_sine(line_frame(0.0), line_frame(0.5)) == doctest::Approx(std::sin(0.5)));
  CHECK(min_principal_angle_sine(line_frame(0.0), line_frame(kPi)) == doctest::Approx(0.0));
}
