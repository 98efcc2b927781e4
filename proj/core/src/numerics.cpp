#include "isoq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isoq/error.hpp"
#include "isoq/parallel.hpp"

namespace isoq {

cplx ipow(cplx z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx r = 1.0;
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

double inf_norm(const ComplexMatrix& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).cwiseAbs().sum());
  return best;
}

bool is_symmetric(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix diff = m - m.transpose();
  return inf_norm(diff) <= rel_tol * inf_norm(m);
}

namespace {

void require_square(const RealMatrix& m, const char* name) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, std::string(name) + " must be square and nonempty");
}

bool positive_definite(const RealMatrix& a) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a, Eigen::EigenvaluesOnly);
  double tr = a.trace();
  return tr > 0.0 && es.eigenvalues().minCoeff() > 1e-10 * tr;
}

}  // namespace

cplx det_sqrt_continued(const RealMatrix& A, const RealMatrix& B) {
  require_square(A, "A");
  require_square(B, "B");
  if (A.rows() != B.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in size");
  if (!is_symmetric(A.cast<cplx>()) || !is_symmetric(B.cast<cplx>()))
    throw Error(ErrorCode::NonSymmetric, "A and B must be symmetric");
  if (!positive_definite(A)) throw Error(ErrorCode::ANotPositiveDefinite, "A is not positive definite");

  ComplexMatrix a = A.cast<cplx>();
  ComplexMatrix b = B.cast<cplx>();
  auto det_at = [&](double t) -> cplx { return (a + kI * t * b).determinant(); };

  const double max_step = 1.0 / 16.0;
  double t = 0.0;
  double h = max_step;
  double phase = 0.0;
  cplx d0 = det_at(0.0);
  while (t < 1.0) {
    h = std::min(h, 1.0 - t);
    cplx d1 = det_at(t + h);
    if (std::abs(d1) < 1e-14) throw Error(ErrorCode::PathDegeneracy, "det vanishes along the path");
    double delta = std::arg(d1 / d0);
    if (std::abs(delta) >= kPi / 2) {
      h *= 0.5;
      if (h < 1e-12) throw Error(ErrorCode::PathDegeneracy, "phase of det cannot be resolved");
      continue;
    }
    phase += delta;
    t += h;
    d0 = d1;
    h = std::min(2.0 * h, max_step);
  }
  return std::polar(1.0 / std::sqrt(std::abs(d0)), -0.5 * phase);
}

cplx gaussian_integral_closed(const ComplexMatrix& C) {
  if (C.rows() != C.cols() || C.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "C must be square and nonempty");
  if (!is_symmetric(C)) throw Error(ErrorCode::NonSymmetric, "C must be symmetric");
  RealMatrix A = C.real();
  RealMatrix B = C.imag();
  A = 0.5 * (A + A.transpose());
  B = 0.5 * (B + B.transpose());
  if (!positive_definite(A))
    throw Error(ErrorCode::RealPartNotPositiveDefinite, "Re C is not positive definite");
  return det_sqrt_continued(A, B);
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  std::vector<double> terms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) terms[i] = weights[i] * f(nodes[i]);
  return pairwise_sum(terms);
}

cplx QuadratureRule::integrate_complex(const std::function<cplx(double)>& f) const {
  std::vector<cplx> terms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) terms[i] = weights[i] * f(nodes[i]);
  return pairwise_sum(terms);
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

QuadratureRule build_rule(RuleKind kind, double a, double b, int node_count, int panel_order) {
  if (node_count < 2) throw Error(ErrorCode::BadNodeCount, "node_count must be at least 2");
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
    throw Error(ErrorCode::BadNodeCount, "interval must be finite with b > a");
  QuadratureRule rule;
  rule.kind = kind;
  rule.a = a;
  rule.b = b;
  if (kind == RuleKind::PeriodicTrapezoid) {
    double h = (b - a) / node_count;
    rule.nodes.resize(node_count);
    rule.weights.assign(node_count, h);
    for (int j = 0; j < node_count; ++j) rule.nodes[j] = a + j * h;
    return rule;
  }
  if (panel_order < 1 || node_count % panel_order != 0)
    throw Error(ErrorCode::BadNodeCount, "node_count must be a multiple of the panel order");
  std::vector<double> gx, gw;
  gauss_legendre(panel_order, gx, gw);
  int panels = node_count / panel_order;
  double width = (b - a) / panels;
  rule.nodes.reserve(node_count);
  rule.weights.reserve(node_count);
  for (int k = 0; k < panels; ++k) {
    double mid = a + (k + 0.5) * width;
    for (int j = 0; j < panel_order; ++j) {
      rule.nodes.push_back(mid + 0.5 * width * gx[j]);
      rule.weights.push_back(0.5 * width * gw[j]);
    }
  }
  return rule;
}

AsymptoticFit fit_power_series(std::span<const double> p_values, std::span<const cplx> values,
                               double exponent, int k) {
  const std::size_t n = p_values.size();
  if (values.size() != n) throw Error(ErrorCode::DimensionMismatch, "p_values and values differ in length");
  if (k < 0 || n < static_cast<std::size_t>(k) + 2)
    throw Error(ErrorCode::InsufficientSamples, "need at least k+2 samples");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p_values[i] > 0.0)) throw Error(ErrorCode::InvalidSpec, "p values must be positive");
    if (i > 0 && !(p_values[i] > p_values[i - 1]))
      throw Error(ErrorCode::InvalidSpec, "p values must be strictly increasing");
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      throw Error(ErrorCode::InvalidSpec, "values must be finite");
  }

  ComplexMatrix V(n, k + 1);
  Eigen::VectorXcd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int r = 0; r <= k; ++r) V(i, r) = std::pow(p_values[i], -r);
    y(i) = values[i] / std::pow(p_values[i], exponent);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(cond <= 1e12)) throw Error(ErrorCode::IllConditioned, "Vandermonde condition number above 1e12");

  Eigen::VectorXcd b = svd.solve(y);
  AsymptoticFit fit;
  fit.exponent = exponent;
  fit.condition_number = cond;
  fit.coefficients.assign(b.data(), b.data() + b.size());
  fit.residual_norm = std::sqrt((V * b - y).squaredNorm() / static_cast<double>(n));
  fit.p_values.assign(p_values.begin(), p_values.end());
  return fit;
}

double estimate_exponent(std::span<const double> p_values, std::span<const cplx> values) {
  const std::size_t n = p_values.size();
  if (values.size() != n) throw Error(ErrorCode::DimensionMismatch, "p_values and values differ in length");
  if (n < 3) throw Error(ErrorCode::InsufficientSamples, "need at least 3 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double m = std::abs(values[i]);
    if (!(m > 0.0)) throw Error(ErrorCode::ZeroValue, "exponent estimate needs nonzero values");
    if (!(p_values[i] > 0.0)) throw Error(ErrorCode::InvalidSpec, "p values must be positive");
    double x = std::log(p_values[i]);
    double yv = std::log(m);
    sx += x;
    sy += yv;
    sxx += x * x;
    sxy += x * yv;
  }
  double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw Error(ErrorCode::IllConditioned, "p values are all equal");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace isoq
