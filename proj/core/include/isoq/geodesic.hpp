#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include "isoq/moebius.hpp"

namespace isoq {

// Oriented geodesic of H with unit hyperbolic speed. Endpoints are points of
// R, or infinity (represented by INFINITY) for vertical axes.
struct Geodesic {
  double start = 0.0;  // backward endpoint
  double end = 0.0;    // forward endpoint
  double translation_length = 0.0;
  std::optional<MoebiusElement> generator;

  bool vertical() const { return std::isinf(start) || std::isinf(end); }
  cplx position(double t) const;
  cplx velocity(double t) const;
  // parameter of the orthogonal projection of w onto the axis
  double param_of(cplx w) const;
};

Geodesic geodesic_between(double start, double end);

Geodesic geodesic_from_hyperbolic(const MoebiusElement& g0);

// Coefficient c(t) of the unit flat section zeta(t) = c(t) dz of K along a curve.
struct GeodesicSection {
  Geodesic geo;
  double flatness_error = 0.0;

  cplx operator()(double t) const;
};

// Checks flatness by transporting zeta(0) with the connection ODE over one
// period (or [-4, 4] without a generator); throws FlatnessViolation above 1e-8.
GeodesicSection geodesic_section(const Geodesic& geo);

// Image of a boundary point under g; INFINITY for the pole.
double apply_boundary(const MoebiusElement& g, double x);

// Integral of i * gamma'(s) / Im gamma(s) over [a, b] by composite Gauss-Legendre.
cplx transport_exponent(const std::function<cplx(double)>& position,
                        const std::function<cplx(double)>& velocity, double a, double b,
                        int panels);

}  // namespace isoq
