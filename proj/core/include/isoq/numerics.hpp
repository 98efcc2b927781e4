#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace isoq {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cplx kI{0.0, 1.0};

// z^n by repeated squaring; n may be negative.
cplx ipow(cplx z, int n);

double inf_norm(const ComplexMatrix& m);
bool is_symmetric(const ComplexMatrix& m, double rel_tol = 1e-12);

// det^{-1/2}(A + iB), continued from the positive root of det(A) along
// t -> A + t i B, t in [0, 1].
cplx det_sqrt_continued(const RealMatrix& A, const RealMatrix& B);

// Integral over R^k of exp(-pi <Z, C Z>), C symmetric with Re C positive definite.
cplx gaussian_integral_closed(const ComplexMatrix& C);

enum class RuleKind { GaussLegendreComposite, PeriodicTrapezoid };

struct QuadratureRule {
  RuleKind kind = RuleKind::PeriodicTrapezoid;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double integrate(const std::function<double(double)>& f) const;
  cplx integrate_complex(const std::function<cplx(double)>& f) const;
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Composite Gauss-Legendre uses panels of panel_order points; node_count must
// be a multiple of panel_order.
QuadratureRule build_rule(RuleKind kind, double a, double b, int node_count, int panel_order = 8);

struct AsymptoticFit {
  double exponent = 0.0;
  std::vector<cplx> coefficients;
  double residual_norm = 0.0;
  double condition_number = 0.0;
  std::vector<double> p_values;
};

// Least squares fit of values[i] / p_i^exponent against sum_{r<=k} b_r p_i^{-r}.
AsymptoticFit fit_power_series(std::span<const double> p_values, std::span<const cplx> values,
                               double exponent, int k = 2);

// Log-log slope of |values| against p.
double estimate_exponent(std::span<const double> p_values, std::span<const cplx> values);

}  // namespace isoq
