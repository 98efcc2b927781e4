#include "isoq/geodesic.hpp"

#include <cmath>

#include "isoq/error.hpp"

namespace isoq {

namespace {

double semicircle_center(const Geodesic& g) { return 0.5 * (g.start + g.end); }
double semicircle_radius(const Geodesic& g) { return 0.5 * std::abs(g.end - g.start); }
// +1 when moving toward +infinity along the real direction (or upward)
double direction(const Geodesic& g) {
  if (std::isinf(g.end)) return 1.0;
  if (std::isinf(g.start)) return -1.0;
  return g.end > g.start ? 1.0 : -1.0;
}

}  // namespace

cplx Geodesic::position(double t) const {
  if (vertical()) {
    double x0 = std::isinf(end) ? start : end;
    return {x0, std::exp(direction(*this) * t)};
  }
  double m = semicircle_center(*this), r = semicircle_radius(*this), s = direction(*this);
  return {m + s * r * std::tanh(t), r / std::cosh(t)};
}

cplx Geodesic::velocity(double t) const {
  if (vertical()) {
    double s = direction(*this);
    return {0.0, s * std::exp(s * t)};
  }
  double r = semicircle_radius(*this), s = direction(*this);
  double sech = 1.0 / std::cosh(t);
  return {s * r * sech * sech, -r * sech * std::tanh(t)};
}

double Geodesic::param_of(cplx w) const {
  if (vertical()) {
    double x0 = std::isinf(end) ? start : end;
    return direction(*this) * std::log(std::abs(w - x0));
  }
  double m = semicircle_center(*this), r = semicircle_radius(*this);
  double s = direction(*this);
  // the map sending m - r to 0 and m + r to infinity takes the axis to iR+
  return s * std::log(std::abs((w - (m - r)) / ((m + r) - w)));
}

Geodesic geodesic_between(double start, double end) {
  if (start == end || (std::isinf(start) && std::isinf(end)))
    throw Error(ErrorCode::InvalidSpec, "geodesic endpoints must be distinct");
  Geodesic g;
  g.start = start;
  g.end = end;
  return g;
}

double apply_boundary(const MoebiusElement& g, double x) {
  if (std::isinf(x)) return g.c == 0.0 ? INFINITY : g.a / g.c;
  double den = g.c * x + g.d;
  if (den == 0.0) return INFINITY;
  return (g.a * x + g.b) / den;
}

Geodesic geodesic_from_hyperbolic(const MoebiusElement& g0) {
  if (g0.classify() != MoebiusClass::Hyperbolic)
    throw Error(ErrorCode::NotHyperbolic, "|trace| must exceed 2");
  double tr = g0.trace();
  Geodesic geo;
  if (g0.c != 0.0) {
    double disc = std::sqrt(tr * tr - 4.0);
    double x1 = ((g0.a - g0.d) + disc) / (2.0 * g0.c);
    double x2 = ((g0.a - g0.d) - disc) / (2.0 * g0.c);
    // derivative of g0 at a fixed point x is (c x + d)^{-2}
    double d1 = 1.0 / std::pow(g0.c * x1 + g0.d, 2);
    geo = d1 < 1.0 ? geodesic_between(x2, x1) : geodesic_between(x1, x2);
  } else {
    double x0 = g0.b / (g0.d - g0.a);
    geo = std::abs(g0.a) > std::abs(g0.d) ? geodesic_between(x0, INFINITY) : geodesic_between(INFINITY, x0);
  }
  geo.translation_length = 2.0 * std::acosh(std::abs(tr) / 2.0);
  geo.generator = g0;
  for (double t : {-1.3, 0.0, 0.7, 2.1}) {
    cplx moved = moebius_apply(g0, geo.position(t));
    cplx shifted = geo.position(t + geo.translation_length);
    if (std::abs(moved - shifted) > 1e-10 * std::max(1.0, std::abs(shifted)))
      throw Error(ErrorCode::InvalidSpec, "generator does not translate along its axis by the trace length");
  }
  return geo;
}

cplx GeodesicSection::operator()(double t) const {
  cplx v = geo.velocity(t);
  double y = geo.position(t).imag();
  return std::conj(v) / (y * y);
}

cplx transport_exponent(const std::function<cplx(double)>& position,
                        const std::function<cplx(double)>& velocity, double a, double b,
                        int panels) {
  static const auto rule = [] {
    std::vector<double> x, w;
    gauss_legendre(16, x, w);
    return std::make_pair(x, w);
  }();
  cplx s = 0.0;
  double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    double mid = a + (k + 0.5) * h;
    for (std::size_t i = 0; i < rule.first.size(); ++i) {
      double t = mid + 0.5 * h * rule.first[i];
      s += rule.second[i] * velocity(t) / position(t).imag();
    }
  }
  return kI * 0.5 * h * s;
}

GeodesicSection geodesic_section(const Geodesic& geo) {
  GeodesicSection sec;
  sec.geo = geo;
  double t0 = geo.generator ? 0.0 : -4.0;
  double t1 = geo.generator ? geo.translation_length : 4.0;

  // RK4 on f' = i gamma'/Im(gamma) f
  const int steps = 4096;
  const double h = (t1 - t0) / steps;
  auto rhs = [&](double t, cplx f) { return kI * geo.velocity(t) / geo.position(t).imag() * f; };
  cplx f = sec(t0);
  double worst = 0.0;
  for (int k = 0; k < steps; ++k) {
    double t = t0 + k * h;
    cplx k1 = rhs(t, f);
    cplx k2 = rhs(t + 0.5 * h, f + 0.5 * h * k1);
    cplx k3 = rhs(t + 0.5 * h, f + 0.5 * h * k2);
    cplx k4 = rhs(t + h, f + h * k3);
    f += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    cplx exact = sec(t + h);
    worst = std::max(worst, std::abs(f - exact) / std::abs(exact));
  }
  sec.flatness_error = worst;
  if (worst > 1e-8) throw Error(ErrorCode::FlatnessViolation, "transported section departs from conj(gamma')/y^2");
  return sec;
}

}  // namespace isoq
