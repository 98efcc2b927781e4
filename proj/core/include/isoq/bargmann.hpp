#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "isoq/numerics.hpp"

namespace isoq {

enum class KernelModel { Bargmann, Hyperbolic, ModularQuotient };

const char* to_string(KernelModel model);

struct Point2 {
  double u = 0.0;
  double v = 0.0;
};

struct ParametrizedCurve {
  double period = 0.0;
  std::function<Point2(double)> position;
  std::function<Point2(double)> velocity;
  bool arclength = false;
};

struct CircleSpec {
  Point2 center;
  double radius = 1.0;
};

// Counter-clockwise arclength parametrization starting at center + (r, 0).
ParametrizedCurve circle_curve(const CircleSpec& circle);

// phi(t) = pi * int_0^t (u v' - v u') ds, so that exp(i phi) is the flat unit
// section of L along the curve in the kernel's gauge.
double connection_phase(const ParametrizedCurve& curve, double t);

struct HolonomyReport {
  cplx value;              // ODE transport of L^p once around the curve
  cplx shoelace;           // exp(2 pi i p Area) from the polygon area
  double signed_area = 0.0;
  double discrepancy = 0.0;
};

HolonomyReport holonomy(const ParametrizedCurve& curve, double p);

struct BohrSommerfeldCurve {
  ParametrizedCurve curve;
  double p = 1.0;
  double initial_phase = 0.0;       // zeta(0) = exp(i initial_phase)
  std::vector<double> node_params;
  std::vector<double> phases;       // connection phase + initial phase at the nodes
  std::vector<cplx> section_values; // zeta at the nodes, unit modulus
  double holonomy_residual = 0.0;

  // Phase of zeta at an arbitrary parameter, by direct transport from t = 0.
  double phase_at(double t) const;
  // zeta^p at an arbitrary parameter.
  cplx section_power(double t) const;
};

struct StateEvaluator {
  KernelModel geometry = KernelModel::Bargmann;
  double p = 1.0;
  std::vector<Point2> nodes;
  std::vector<double> weights;
  std::vector<cplx> payload;
};

using CurveFunction = std::function<cplx(double)>;

std::size_t default_node_count(double p, double length, double oversampling = 1.0);

// Admissibility at level p: |hol(L^p) - 1| < 1e-8.
bool is_admissible(const CircleSpec& circle, double p);

BohrSommerfeldCurve make_bs_curve(const ParametrizedCurve& curve, double p,
                                  std::size_t node_count, double initial_phase = 0.0);

StateEvaluator make_state(const BohrSommerfeldCurve& bs, const CurveFunction& f);

std::pair<BohrSommerfeldCurve, StateEvaluator> make_bs_circle(
    const CircleSpec& circle, double p, const CurveFunction& f, double initial_phase = 0.0,
    double oversampling = 1.0);

// p * P(sqrt(p) Z, sqrt(p) Z') in the flat model.
cplx bargmann_kernel(double p, Point2 z, Point2 w);

cplx state_eval(const StateEvaluator& state, Point2 x);

// <s1, s2>, antilinear in the first slot. abs_mass, when given, receives the
// sum of the moduli of all terms of the double sum.
cplx inner_product(const StateEvaluator& s1, const StateEvaluator& s2, double* abs_mass = nullptr);

struct ToeplitzOptions {
  double inflate = 6.0;     // bounding box margin in units of 1/sqrt(p)
  double spacing = 0.3;     // grid step in units of 1/sqrt(p)
};

using PlaneFunction = std::function<cplx(Point2)>;

// <T_F s1, s2> = int conj(F) conj(s1) s2 over the inflated bounding box.
cplx toeplitz_inner(const PlaneFunction& F, const StateEvaluator& s1, const StateEvaluator& s2,
                    const ToeplitzOptions& options = {});

struct CircleIntersection {
  Point2 point;
  double theta = 0.0;  // oriented angle from tangent 1 to tangent 2, in [0, 2 pi)
  double t1 = 0.0;
  double t2 = 0.0;
};

std::vector<CircleIntersection> intersect_circles(const CircleSpec& c1, const CircleSpec& c2);

}  // namespace isoq
