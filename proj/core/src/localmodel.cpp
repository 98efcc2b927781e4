#include "isoq/localmodel.hpp"

#include <cmath>
#include <string>

#include "isoq/error.hpp"

namespace isoq {

void validate(const LocalKernelParams& params) {
  if (params.n < 1) throw Error(ErrorCode::DimensionMismatch, "n must be at least 1");
  if (!(params.det_rl_over_2pi > 0.0))
    throw Error(ErrorCode::InvalidSpec, "det(R/2pi) must be positive");
}

double symplectic_pairing(std::span<const double> z, std::span<const double> w) {
  if (z.size() != w.size() || z.size() % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "symplectic pairing needs equal even dimensions");
  double s = 0.0;
  for (std::size_t j = 0; j < z.size(); j += 2) s += z[j] * w[j + 1] - z[j + 1] * w[j];
  return s;
}

namespace {

double omega(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return symplectic_pairing(std::span<const double>(a.data(), a.size()),
                            std::span<const double>(b.data(), b.size()));
}

RealMatrix omega_matrix(const IsotropicFrame& e, const IsotropicFrame& nu) {
  RealMatrix m(e.vectors.size(), nu.vectors.size());
  for (std::size_t i = 0; i < e.vectors.size(); ++i)
    for (std::size_t j = 0; j < nu.vectors.size(); ++j) m(i, j) = omega(e.vectors[i], nu.vectors[j]);
  return m;
}

RealMatrix gram_matrix(const IsotropicFrame& e, const IsotropicFrame& nu) {
  RealMatrix m(e.vectors.size(), nu.vectors.size());
  for (std::size_t i = 0; i < e.vectors.size(); ++i)
    for (std::size_t j = 0; j < nu.vectors.size(); ++j) m(i, j) = e.vectors[i].dot(nu.vectors[j]);
  return m;
}

}  // namespace

void validate(const IsotropicFrame& frame) {
  if (frame.dim_ambient < 2 || frame.dim_ambient % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "ambient dimension must be even");
  if (static_cast<int>(frame.vectors.size()) > frame.dim_ambient / 2)
    throw Error(ErrorCode::NotIsotropic, "isotropic frames have at most n vectors");
  for (const auto& v : frame.vectors)
    if (v.size() != frame.dim_ambient) throw Error(ErrorCode::DimensionMismatch, "frame vector size");
  for (std::size_t i = 0; i < frame.vectors.size(); ++i) {
    for (std::size_t j = 0; j < frame.vectors.size(); ++j) {
      double g = frame.vectors[i].dot(frame.vectors[j]);
      if (std::abs(g - (i == j ? 1.0 : 0.0)) > 1e-12)
        throw Error(ErrorCode::InvalidSpec, "frame vectors are not orthonormal");
      if (std::abs(omega(frame.vectors[i], frame.vectors[j])) > 1e-12)
        throw Error(ErrorCode::NotIsotropic, "frame is not isotropic");
    }
  }
}

IsotropicFrame line_frame(double theta) {
  IsotropicFrame f;
  f.dim_ambient = 2;
  Eigen::VectorXd v(2);
  v << std::cos(theta), std::sin(theta);
  f.vectors.push_back(v);
  return f;
}

double min_principal_angle_sine(const IsotropicFrame& a, const IsotropicFrame& b) {
  if (a.vectors.empty() || b.vectors.empty()) return 1.0;
  RealMatrix g = gram_matrix(a, b);
  Eigen::JacobiSVD<RealMatrix> svd(g);
  double c = std::min(1.0, svd.singularValues()(0));
  return std::sqrt(std::max(0.0, (1.0 - c) * (1.0 + c)));
}

cplx model_kernel(const LocalKernelParams& params, std::span<const double> z,
                  std::span<const double> w) {
  if (z.size() != w.size() || static_cast<int>(z.size()) != 2 * params.n)
    throw Error(ErrorCode::DimensionMismatch, "points must lie in R^{2n}");
  double d2 = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) d2 += (z[j] - w[j]) * (z[j] - w[j]);
  double om = symplectic_pairing(z, w);
  return params.det_rl_over_2pi * std::exp(cplx(-0.5 * kPi * d2, -kPi * om));
}

cplx gaussian_pair_integral(const IsotropicFrame& sigma1, const IsotropicFrame& sigma2,
                            const LocalKernelParams& params) {
  validate(params);
  if (sigma1.dim_ambient != 2 * params.n || sigma2.dim_ambient != 2 * params.n)
    throw Error(ErrorCode::DimensionMismatch, "frames must live in R^{2n}");
  validate(sigma2);
  try {
    validate(sigma1);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotLagrangian, e.what());
  }
  if (static_cast<int>(sigma1.vectors.size()) != params.n)
    throw Error(ErrorCode::NotLagrangian, "first frame must span a Lagrangian subspace");
  if (min_principal_angle_sine(sigma1, sigma2) <= 1e-8)
    throw Error(ErrorCode::OverlappingSubspaces, "subspaces intersect nontrivially");
  if (sigma2.vectors.empty()) throw Error(ErrorCode::DimensionMismatch, "second frame is empty");

  RealMatrix A = omega_matrix(sigma1, sigma2);
  RealMatrix B = gram_matrix(sigma1, sigma2);
  RealMatrix re = A.transpose() * A;
  RealMatrix im = B.transpose() * A;
  re = 0.5 * (re + re.transpose());
  im = 0.5 * (im + im.transpose());
  ComplexMatrix C = re.cast<cplx>() + kI * im.cast<cplx>();
  return std::pow(2.0, 0.5 * params.n) * params.det_rl_over_2pi * gaussian_integral_closed(C);
}

double predict_norm_b0(int d, double f_sq_integral, double det_factor, double density_ratio) {
  return std::pow(2.0, 0.5 * d) * f_sq_integral * det_factor * density_ratio;
}

cplx predict_intersection_b0(const IsotropicFrame& e_frame, const IsotropicFrame& nu_frame,
                             cplx fF_pairing, double det_factor, double density_ratio) {
  if (e_frame.dim_ambient != nu_frame.dim_ambient)
    throw Error(ErrorCode::DimensionMismatch, "frames live in different spaces");
  validate(e_frame);
  validate(nu_frame);
  const int n = e_frame.dim_ambient / 2;
  const double prefactor = std::pow(2.0, 0.5 * n) * std::sqrt(det_factor) * density_ratio;
  if (nu_frame.vectors.empty()) return prefactor * fF_pairing;

  // M_ij = i sum_k h(e_k, nu_i) omega(e_k, nu_j), h = g - i omega
  RealMatrix A = omega_matrix(e_frame, nu_frame);
  RealMatrix B = gram_matrix(e_frame, nu_frame);
  RealMatrix re = A.transpose() * A;
  RealMatrix im = B.transpose() * A;
  double scale = std::max(1.0, im.cwiseAbs().maxCoeff());
  if ((im - im.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw Error(ErrorCode::BranchPathInvalid, "pairing matrix is not symmetric");
  re = 0.5 * (re + re.transpose());
  im = 0.5 * (im + im.transpose());
  cplx root;
  try {
    root = det_sqrt_continued(re, im);
  } catch (const Error& e) {
    throw Error(ErrorCode::BranchPathInvalid, e.what());
  }
  return prefactor * fF_pairing * root;
}

cplx angle_coefficient(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0) t += 2.0 * kPi;
  double s = std::sin(t);
  if (std::abs(s) < 1e-8) throw Error(ErrorCode::TangentialIntersection, "sin(theta) vanishes");
  cplx phase = std::polar(std::sqrt(2.0), 0.5 * t - 0.25 * kPi);
  if (s > 0) return phase / std::sqrt(s);
  return phase / (kI * std::sqrt(-s));
}

}  // namespace isoq
