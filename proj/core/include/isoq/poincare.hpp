#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "isoq/cosets.hpp"
#include "isoq/geodesic.hpp"

namespace isoq {

struct SeriesOptions {
  double term_cutoff = 1e-17;     // T-orbit sums stop below this fraction of the class peak
  double converge_tol = 1e-8;     // last shell / absolute series mass above this throws
  bool strict = true;
};

struct SeriesValue {
  cplx value;
  double truncation_estimate = 0.0;
  std::vector<double> shell_abs;  // sum of |terms| per word-length shell
  double shell_ratio = 0.0;       // last shell over the one before
  std::size_t terms = 0;
};

// Geodesic of H on the axis of a hyperbolic g0 in SL2(Z).
struct ClosedGeodesic {
  IntMatrix g0;
  Geodesic geo;
  GeodesicSection section;
};

ClosedGeodesic closed_geodesic(const IntMatrix& g0);

// sum over cosets of j(g^{-1}, z)^{-2p} Q(g^{-1} z)^{-p}
SeriesValue katok_series(int p, const CosetTable& table, cplx z, const SeriesOptions& opt = {});

// sum over cosets of the unfolded integral of the kernel against the geodesic section
SeriesValue geodesic_quadrature_series(int p, const ClosedGeodesic& cg, const CosetTable& table, cplx z,
                                       const SeriesOptions& opt = {});

struct RpsResult {
  cplx katok;
  cplx quadrature;
  cplx ratio;  // quadrature / katok
  SeriesValue katok_detail;
  SeriesValue quadrature_detail;
};

RpsResult relative_poincare_series(int p, const IntMatrix& g0, cplx z, const CosetTable& table,
                                   const SeriesOptions& opt = {});

// Exact closed form of quadrature / katok: C_p (-1)^p (A (end - start))^p,
// C_p = 2^{2p-2} (2p-1) B(p, p) / pi.
cplx katok_normalization(int p, const IntMatrix& g0);

// Circle of hyperbolic radius R around the fixed point of an elliptic g0,
// traversed counter-clockwise with unit speed.
struct EllipticCircle {
  IntMatrix g0;
  cplx center;
  double radius = 0.0;
  double period = 0.0;      // 2 pi sinh R
  int order = 0;            // order of g0 in PSL2(Z)
  double shift = 0.0;       // g0 gamma(t) = gamma(t + shift)

  cplx position(double t) const;
  cplx velocity(double t) const;
  // unit flat section coefficient, transported from c(0) = conj(gamma'(0)) / y^2
  cplx section(double t) const;
  // c(0) j(g0, gamma(0))^2 / c(shift), continuous in the radius
  cplx holonomy_ratio() const;
  // p-th power of the holonomy ratio, the Bohr-Sommerfeld test on the quotient
  cplx holonomy(int p) const;
};

EllipticCircle elliptic_circle(const IntMatrix& g0, double radius);

// Radius of the k-th admissible circle (k >= 1) at level p.
double admissible_elliptic_radius(const IntMatrix& g0, int p, int k);

SeriesValue elliptic_series(int p, const EllipticCircle& circle, const std::function<cplx(double)>& f,
                            const CosetTable& table, cplx z, const SeriesOptions& opt = {},
                            int node_count = 0);

// Truncated cusp form of weight 2p.
class CuspFormEvaluator {
public:
  using Fn = std::function<SeriesValue(cplx)>;

  CuspFormEvaluator(int p, std::shared_ptr<const CosetTable> table, Fn fn);

  int p() const { return p_; }
  int weight() const { return 2 * p_; }
  const CosetTable& table() const { return *table_; }
  SeriesValue evaluate(cplx z) const { return fn_(z); }
  cplx operator()(cplx z) const { return fn_(z).value; }
  double truncation_error_estimate(cplx z) const { return fn_(z).truncation_estimate; }

private:
  int p_;
  std::shared_ptr<const CosetTable> table_;
  Fn fn_;
};

// The isotropic state of the closed geodesic: the quadrature series, evaluated
// as kappa times the Katok series with kappa measured once by quadrature.
struct GeodesicState {
  ClosedGeodesic curve;
  cplx kappa;
  CuspFormEvaluator form;
};

GeodesicState make_geodesic_state(int p, const IntMatrix& g0, std::shared_ptr<const CosetTable> table,
                                  const SeriesOptions& opt = {});

CuspFormEvaluator make_elliptic_form(int p, const EllipticCircle& circle, std::function<cplx(double)> f,
                                     std::shared_ptr<const CosetTable> table, const SeriesOptions& opt = {});

double modularity_residual(const CuspFormEvaluator& ev, const MoebiusElement& g, cplx z);

struct PeterssonReport {
  double value = 0.0;
  double doubled = 0.0;
  double relative_change = 0.0;
  double y_max = 0.0;
  int nx = 0, ny = 0;
};

// int over {|x| <= 1/2, |z| >= 1, y <= y_max} of |f|^2 y^{2p-2}, certified by
// doubling both grid sizes. y_max <= 0 selects max(10, p).
PeterssonReport petersson_norm(const CuspFormEvaluator& ev, double y_max = 0.0, int nx = 32, int ny = 64);

// <s, s> through the reproducing property: integral over one period of
// conj(s(gamma)) conj(gamma')^p.
double reproducing_norm(const GeodesicState& state, double oversampling = 1.0);

// <s1, s2> through the reproducing property on the second curve.
cplx reproducing_pairing(const CuspFormEvaluator& s1, const ClosedGeodesic& curve2, double oversampling = 1.0);

struct PairingResult {
  cplx value;
  double abs_mass = 0.0;             // integral of the modulus of the integrand
  double truncation_estimate = 0.0;  // pointwise series truncation estimates, integrated
  double series_mass = 0.0;          // sum of |terms| of the series, integrated
  std::size_t nodes = 0;
};

PairingResult reproducing_pairing_detail(const CuspFormEvaluator& s1, const ClosedGeodesic& curve2,
                                        double oversampling = 1.0);

struct GeodesicIntersection {
  double t1 = 0.0, t2 = 0.0;
  double theta = 0.0;
  cplx lambda;
  cplx point;
  int shell = 0;
};

// Intersections of the quotient geodesics; table2 enumerates lifts of the second axis.
std::vector<GeodesicIntersection> quotient_geodesic_intersections(const ClosedGeodesic& geo1,
                                                                  const ClosedGeodesic& geo2,
                                                                  const CosetTable& table2);

}  // namespace isoq
