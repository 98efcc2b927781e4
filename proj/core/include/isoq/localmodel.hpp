#pragma once

#include <span>
#include <vector>

#include "isoq/numerics.hpp"

namespace isoq {

// Coordinates on R^{2n} are interleaved: Z = (u_1, v_1, ..., u_n, v_n) and
// Omega = sum du_j ^ dv_j.
struct LocalKernelParams {
  int n = 1;
  double det_rl_over_2pi = 1.0;
};

void validate(const LocalKernelParams& params);

double symplectic_pairing(std::span<const double> z, std::span<const double> w);

struct IsotropicFrame {
  int dim_ambient = 2;
  std::vector<Eigen::VectorXd> vectors;
};

// Throws unless the frame vectors are orthonormal and pairwise isotropic.
void validate(const IsotropicFrame& frame);

// The unit vector (cos theta, sin theta) in R^2 as a one-vector frame.
IsotropicFrame line_frame(double theta);

// Sine of the smallest principal angle between the two spans.
double min_principal_angle_sine(const IsotropicFrame& a, const IsotropicFrame& b);

cplx model_kernel(const LocalKernelParams& params, std::span<const double> z,
                  std::span<const double> w);

// Integral over Sigma_2 x Sigma_1 of P(u, w), u in Sigma_1, w in Sigma_2.
cplx gaussian_pair_integral(const IsotropicFrame& sigma1, const IsotropicFrame& sigma2,
                            const LocalKernelParams& params);

double predict_norm_b0(int d, double f_sq_integral, double det_factor, double density_ratio);

cplx predict_intersection_b0(const IsotropicFrame& e_frame, const IsotropicFrame& nu_frame,
                             cplx fF_pairing, double det_factor, double density_ratio);

// sqrt(2) e^{i(theta/2 - pi/4)} / sqrt(sin theta), with sqrt(-a) = i sqrt(a).
cplx angle_coefficient(double theta);

}  // namespace isoq
