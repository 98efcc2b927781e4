#include "isoq/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "isoq/error.hpp"
#include "isoq/parallel.hpp"

namespace isoq {

const char* to_string(KernelModel model) {
  switch (model) {
    case KernelModel::Bargmann: return "bargmann";
    case KernelModel::Hyperbolic: return "hyperbolic";
    case KernelModel::ModularQuotient: return "modular";
  }
  return "unknown";
}

ParametrizedCurve circle_curve(const CircleSpec& circle) {
  if (!(circle.radius > 0.0)) throw Error(ErrorCode::InvalidSpec, "radius must be positive");
  ParametrizedCurve c;
  const double r = circle.radius;
  const Point2 m = circle.center;
  c.period = 2.0 * kPi * r;
  c.arclength = true;
  c.position = [=](double t) { return Point2{m.u + r * std::cos(t / r), m.v + r * std::sin(t / r)}; };
  c.velocity = [=](double t) { return Point2{-std::sin(t / r), std::cos(t / r)}; };
  return c;
}

namespace {

struct Gl16 {
  std::vector<double> x, w;
  Gl16() { gauss_legendre(16, x, w); }
};

const Gl16& gl16() {
  static const Gl16 rule;
  return rule;
}

double connection_density(const ParametrizedCurve& curve, double t) {
  Point2 x = curve.position(t);
  Point2 v = curve.velocity(t);
  return x.u * v.v - x.v * v.u;
}

// pi * int_a^b of the connection density with one 16-point panel
double phase_increment(const ParametrizedCurve& curve, double a, double b) {
  const auto& x = gl16().x;
  const auto& w = gl16().w;
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * connection_density(curve, mid + half * x[i]);
  return kPi * half * s;
}

double wrap_distance(Point2 a, Point2 b) { return std::hypot(a.u - b.u, a.v - b.v); }

}  // namespace

double connection_phase(const ParametrizedCurve& curve, double t) {
  if (t == 0.0) return 0.0;
  int panels = std::max(1, static_cast<int>(std::ceil(64.0 * std::abs(t) / curve.period)));
  double h = t / panels;
  double phase = 0.0;
  for (int k = 0; k < panels; ++k) phase += phase_increment(curve, k * h, (k + 1) * h);
  return phase;
}

HolonomyReport holonomy(const ParametrizedCurve& curve, double p) {
  if (!(curve.period > 0.0)) throw Error(ErrorCode::OpenCurve, "period must be positive");
  if (wrap_distance(curve.position(0.0), curve.position(curve.period)) > 1e-10)
    throw Error(ErrorCode::OpenCurve, "curve does not close up");

  // RK4 transport of the L-section, phase unwrapped step by step
  const int steps = 1 << 16;
  const double h = curve.period / steps;
  cplx zeta = 1.0;
  double phase = 0.0;
  auto rhs = [&](double t, cplx z) { return kI * kPi * connection_density(curve, t) * z; };
  for (int k = 0; k < steps; ++k) {
    double t = k * h;
    cplx k1 = rhs(t, zeta);
    cplx k2 = rhs(t + 0.5 * h, zeta + 0.5 * h * k1);
    cplx k3 = rhs(t + 0.5 * h, zeta + 0.5 * h * k2);
    cplx k4 = rhs(t + h, zeta + h * k3);
    cplx next = zeta + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    phase += std::arg(next / zeta);
    zeta = next;
  }

  // shoelace area of inscribed polygons, Richardson-extrapolated in h^2
  auto polygon_area = [&](int n) {
    double a = 0.0;
    Point2 prev = curve.position(0.0);
    for (int j = 1; j <= n; ++j) {
      Point2 cur = curve.position(curve.period * j / n);
      a += prev.u * cur.v - cur.u * prev.v;
      prev = cur;
    }
    return 0.5 * a;
  };
  double a1 = polygon_area(4096);
  double a2 = polygon_area(8192);
  double area = (4.0 * a2 - a1) / 3.0;

  HolonomyReport rep;
  rep.signed_area = area;
  rep.value = std::polar(1.0, p * phase);
  rep.shoelace = std::polar(1.0, 2.0 * kPi * p * area);
  rep.discrepancy = std::abs(rep.value - rep.shoelace);
  return rep;
}

double BohrSommerfeldCurve::phase_at(double t) const { return initial_phase + connection_phase(curve, t); }

cplx BohrSommerfeldCurve::section_power(double t) const { return std::polar(1.0, p * phase_at(t)); }

std::size_t default_node_count(double p, double length, double oversampling) {
  double n = std::ceil(16.0 * std::sqrt(p) * length * oversampling);
  return static_cast<std::size_t>(std::max(64.0, n));
}

bool is_admissible(const CircleSpec& circle, double p) {
  return std::abs(holonomy(circle_curve(circle), p).value - 1.0) < 1e-8;
}

BohrSommerfeldCurve make_bs_curve(const ParametrizedCurve& curve, double p, std::size_t node_count,
                                  double initial_phase) {
  if (!(p > 0.0)) throw Error(ErrorCode::InvalidSpec, "p must be positive");
  if (node_count < 2) throw Error(ErrorCode::BadNodeCount, "need at least two nodes");
  HolonomyReport hol = holonomy(curve, p);
  if (hol.discrepancy > 1e-8)
    throw Error(ErrorCode::FlatnessViolation, "transport and area holonomies disagree");

  BohrSommerfeldCurve bs;
  bs.curve = curve;
  bs.p = p;
  bs.initial_phase = initial_phase;
  QuadratureRule rule = build_rule(RuleKind::PeriodicTrapezoid, 0.0, curve.period, static_cast<int>(node_count));
  bs.node_params = rule.nodes;
  bs.phases.resize(node_count);
  bs.section_values.resize(node_count);
  double phase = 0.0;
  for (std::size_t j = 0; j < node_count; ++j) {
    if (j > 0) phase += phase_increment(curve, rule.nodes[j - 1], rule.nodes[j]);
    bs.phases[j] = initial_phase + phase;
    bs.section_values[j] = std::polar(1.0, bs.phases[j]);
  }
  phase += phase_increment(curve, rule.nodes.back(), curve.period);
  bs.holonomy_residual = std::abs(std::polar(1.0, p * phase) - 1.0);
  return bs;
}

StateEvaluator make_state(const BohrSommerfeldCurve& bs, const CurveFunction& f) {
  StateEvaluator s;
  s.geometry = KernelModel::Bargmann;
  s.p = bs.p;
  const std::size_t n = bs.node_params.size();
  const double h = bs.curve.period / static_cast<double>(n);
  s.nodes.resize(n);
  s.weights.resize(n);
  s.payload.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double t = bs.node_params[j];
    Point2 v = bs.curve.velocity(t);
    s.nodes[j] = bs.curve.position(t);
    s.weights[j] = h * std::hypot(v.u, v.v);
    s.payload[j] = std::polar(1.0, bs.p * bs.phases[j]) * f(t);
  }
  return s;
}

std::pair<BohrSommerfeldCurve, StateEvaluator> make_bs_circle(const CircleSpec& circle, double p,
                                                              const CurveFunction& f,
                                                              double initial_phase,
                                                              double oversampling) {
  ParametrizedCurve curve = circle_curve(circle);
  std::size_t n = default_node_count(p, curve.period, oversampling);
  BohrSommerfeldCurve bs = make_bs_curve(curve, p, n, initial_phase);
  if (bs.holonomy_residual >= 1e-8)
    throw Error(ErrorCode::NotBohrSommerfeldAtLevelP,
                "p * pi * r^2 is not an integer (residual " + std::to_string(bs.holonomy_residual) + ")");
  StateEvaluator s = make_state(bs, f);
  return {std::move(bs), std::move(s)};
}

cplx bargmann_kernel(double p, Point2 z, Point2 w) {
  double du = z.u - w.u, dv = z.v - w.v;
  double om = z.u * w.v - z.v * w.u;
  double mod = p * std::exp(-0.5 * kPi * p * (du * du + dv * dv));
  double ph = -kPi * p * om;
  return {mod * std::cos(ph), mod * std::sin(ph)};
}

cplx state_eval(const StateEvaluator& state, Point2 x) {
  cplx s = 0.0;
  for (std::size_t j = 0; j < state.nodes.size(); ++j)
    s += state.weights[j] * bargmann_kernel(state.p, x, state.nodes[j]) * state.payload[j];
  return s;
}

namespace {

// sum of the moduli of the terms of state_eval
double state_mass(const StateEvaluator& state, Point2 x) {
  double m = 0.0;
  for (std::size_t j = 0; j < state.nodes.size(); ++j) {
    const double du = x.u - state.nodes[j].u, dv = x.v - state.nodes[j].v;
    m += state.weights[j] * state.p * std::exp(-0.5 * kPi * state.p * (du * du + dv * dv)) * std::abs(state.payload[j]);
  }
  return m;
}

void check_compatible(const StateEvaluator& s1, const StateEvaluator& s2) {
  if (s1.geometry != s2.geometry) throw Error(ErrorCode::GeometryMismatch, "states live on different geometries");
  if (std::abs(s1.p - s2.p) > 1e-12 * std::max(s1.p, s2.p))
    throw Error(ErrorCode::PowerMismatch, "states have different p");
}

}  // namespace

cplx inner_product(const StateEvaluator& s1, const StateEvaluator& s2, double* abs_mass) {
  check_compatible(s1, s2);
  std::vector<cplx> terms(s2.nodes.size());
  parallel_for(terms.size(), [&](std::size_t i) {
    terms[i] = s2.weights[i] * std::conj(state_eval(s1, s2.nodes[i])) * s2.payload[i];
  });
  if (abs_mass) {
    std::vector<double> mags(terms.size());
    parallel_for(mags.size(), [&](std::size_t i) {
      mags[i] = s2.weights[i] * state_mass(s1, s2.nodes[i]) * std::abs(s2.payload[i]);
    });
    *abs_mass = pairwise_sum(mags);
  }
  return pairwise_sum(terms);
}

cplx toeplitz_inner(const PlaneFunction& F, const StateEvaluator& s1, const StateEvaluator& s2,
                    const ToeplitzOptions& options) {
  check_compatible(s1, s2);
  if (s1.nodes.empty() || s2.nodes.empty()) return 0.0;
  const double p = s1.p;
  const double margin = options.inflate / std::sqrt(p);
  if (std::exp(-0.5 * kPi * options.inflate * options.inflate) > 1e-10)
    throw Error(ErrorCode::DomainTooSmall, "kernel mass outside the inflated box exceeds 1e-10");
  const double h = options.spacing / std::sqrt(p);

  double umin = INFINITY, umax = -INFINITY, vmin = INFINITY, vmax = -INFINITY;
  for (const auto* s : {&s1, &s2})
    for (const auto& x : s->nodes) {
      umin = std::min(umin, x.u);
      umax = std::max(umax, x.u);
      vmin = std::min(vmin, x.v);
      vmax = std::max(vmax, x.v);
    }
  umin -= margin;
  vmin -= margin;
  umax += margin;
  vmax += margin;
  const long nu = static_cast<long>(std::ceil((umax - umin) / h)) + 1;
  const long nv = static_cast<long>(std::ceil((vmax - vmin) / h)) + 1;

  // cells of side `margin`; a grid point can only see nodes in its 3x3 block
  auto cell_of = [&](Point2 x) {
    return std::make_pair(static_cast<long>(std::floor((x.u - umin) / margin)),
                          static_cast<long>(std::floor((x.v - vmin) / margin)));
  };
  auto occupied = [&](const StateEvaluator& s) {
    std::map<std::pair<long, long>, bool> cells;
    for (const auto& x : s.nodes) cells[cell_of(x)] = true;
    return cells;
  };
  auto cells1 = occupied(s1);
  auto cells2 = occupied(s2);
  auto near = [&](const std::map<std::pair<long, long>, bool>& cells, Point2 x) {
    auto [cu, cv] = cell_of(x);
    for (long du = -1; du <= 1; ++du)
      for (long dv = -1; dv <= 1; ++dv)
        if (cells.count({cu + du, cv + dv})) return true;
    return false;
  };

  std::vector<cplx> rows(nv);
  parallel_for(static_cast<std::size_t>(nv), [&](std::size_t iv) {
    std::vector<cplx> terms;
    terms.reserve(nu);
    double v = vmin + h * static_cast<double>(iv);
    for (long iu = 0; iu < nu; ++iu) {
      Point2 x{umin + h * static_cast<double>(iu), v};
      if (!near(cells1, x) || !near(cells2, x)) continue;
      cplx a = state_eval(s1, x);
      cplx b = &s1 == &s2 ? a : state_eval(s2, x);
      terms.push_back(std::conj(F(x) * a) * b);
    }
    rows[iv] = pairwise_sum(terms);
  });
  return h * h * pairwise_sum(rows);
}

std::vector<CircleIntersection> intersect_circles(const CircleSpec& c1, const CircleSpec& c2) {
  const double du = c2.center.u - c1.center.u, dv = c2.center.v - c1.center.v;
  const double d = std::hypot(du, dv);
  const double r1 = c1.radius, r2 = c2.radius;
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw Error(ErrorCode::InvalidSpec, "radii must be positive");
  if (std::abs(d - std::abs(r1 - r2)) <= 1e-6 || std::abs(d - (r1 + r2)) <= 1e-6)
    throw Error(ErrorCode::TangentCircles, "circles are tangent or coincide");
  if (d > r1 + r2 || d < std::abs(r1 - r2)) return {};

  const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
  const double hh = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  const double eu = du / d, ev = dv / d;
  std::vector<CircleIntersection> out;
  for (double sgn : {1.0, -1.0}) {
    CircleIntersection x;
    x.point = {c1.center.u + a * eu - sgn * hh * ev, c1.center.v + a * ev + sgn * hh * eu};
    double a1 = std::atan2(x.point.v - c1.center.v, x.point.u - c1.center.u);
    double a2 = std::atan2(x.point.v - c2.center.v, x.point.u - c2.center.u);
    if (a1 < 0) a1 += 2.0 * kPi;
    if (a2 < 0) a2 += 2.0 * kPi;
    x.t1 = r1 * a1;
    x.t2 = r2 * a2;
    double th = a2 - a1;  // tangent directions are a_i + pi/2
    th = std::fmod(th, 2.0 * kPi);
    if (th < 0) th += 2.0 * kPi;
    x.theta = th;
    out.push_back(x);
  }
  return out;
}

}  // namespace isoq
