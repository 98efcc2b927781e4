#include "isoq/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "isoq/error.hpp"
#include "isoq/parallel.hpp"

namespace isoq {

namespace {

std::string format_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

namespace {

struct ClassSum {
  cplx sum;
  double abs_sum = 0.0;
  std::size_t terms = 0;
};

// Sums term(cls, n) over the T-orbit of every class; the orbit is walked
// outward from the term nearest to z until the form-based magnitude proxy
// falls below term_cutoff times the largest proxy seen.
template <class Term>
SeriesValue sum_classes(int p, const CosetTable& table, cplx z, const SeriesOptions& opt, Term term) {
  if (!(z.imag() > 0.0)) throw Error(ErrorCode::NotInUpperHalfPlane, "Im z must be positive");
  const double log_cut = std::log(opt.term_cutoff);
  std::vector<ClassSum> sums(table.classes.size());
  parallel_for(table.classes.size(), [&](std::size_t i) {
    const CosetClass& cls = table.classes[i];
    const QuadForm& q = cls.form;
    auto log_proxy = [&](std::int64_t n) { return -p * std::log(std::abs(q(z - static_cast<double>(n)))); };
    const double center = z.real() + static_cast<double>(q.B) / (2.0 * static_cast<double>(q.A));
    const std::int64_t n0 = static_cast<std::int64_t>(std::llround(center));
    double peak = log_proxy(n0);
    std::vector<cplx> terms;
    for (int dir : {1, -1}) {
      int small = 0;
      for (std::int64_t k = (dir == 1 ? 0 : 1); k < 100000; ++k) {
        std::int64_t n = n0 + dir * k;
        double lp = log_proxy(n);
        peak = std::max(peak, lp);
        if (lp < peak + log_cut) {
          if (++small >= 2 && k > 1) break;
          continue;
        }
        small = 0;
        terms.push_back(term(cls, n));
      }
    }
    ClassSum& s = sums[i];
    s.sum = pairwise_sum(terms);
    for (const auto& t : terms) s.abs_sum += std::abs(t);
    s.terms = terms.size();
  });

  const double mult = table.term_multiplicity();
  SeriesValue out;
  out.shell_abs.assign(table.max_word_length + 1, 0.0);
  std::vector<cplx> class_sums(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    class_sums[i] = mult * sums[i].sum;
    out.shell_abs[table.classes[i].shell] += mult * sums[i].abs_sum;
    out.terms += sums[i].terms;
  }
  out.value = pairwise_sum(class_sums);

  const int L = table.max_word_length;
  const double last = out.shell_abs[L];
  if (L >= 1 && out.shell_abs[L - 1] > 0.0) {
    out.shell_ratio = last / out.shell_abs[L - 1];
    out.truncation_estimate = out.shell_ratio < 1.0 ? last / (1.0 - out.shell_ratio) : INFINITY;
  } else {
    out.shell_ratio = L == 0 ? 0.0 : INFINITY;
    out.truncation_estimate = last;
  }
  // judged against the absolute mass, since the sum itself may cancel
  double mass = 0.0;
  for (double a : out.shell_abs) mass += a;
  if (opt.strict && L >= 1 && last > opt.converge_tol * mass)
    throw Error(ErrorCode::TruncationNotConverged,
                "last word-length shell carries " + format_g(last / mass) + " of the absolute series mass");
  return out;
}

void require_weight(int p) {
  if (p < 2) throw Error(ErrorCode::WeightTooSmall, "weight 2p must be at least 4");
}

MoebiusElement orbit_element(const CosetClass& cls, std::int64_t n) {
  return (IntMatrix{1, n, 0, 1} * cls.rep).to_moebius();
}

}  // namespace

ClosedGeodesic closed_geodesic(const IntMatrix& g0) {
  ClosedGeodesic cg;
  cg.g0 = g0;
  cg.geo = geodesic_from_hyperbolic(g0.to_moebius());
  cg.section = geodesic_section(cg.geo);
  return cg;
}

SeriesValue katok_series(int p, const CosetTable& table, cplx z, const SeriesOptions& opt) {
  require_weight(p);
  return sum_classes(p, table, z, opt, [&](const CosetClass& cls, std::int64_t n) {
    return ipow(cls.form(z - static_cast<double>(n)), -p);
  });
}

SeriesValue geodesic_quadrature_series(int p, const ClosedGeodesic& cg, const CosetTable& table, cplx z,
                                       const SeriesOptions& opt) {
  require_weight(p);
  if (!(table.generator == cg.g0)) throw Error(ErrorCode::InvalidSpec, "table built for another generator");
  std::vector<double> gx, gw;
  gauss_legendre(10, gx, gw);
  const double np = hyperbolic_kernel_constant(p);
  const double window = 34.0 / p + 2.0;
  const double width = std::min(0.5, 1.0 / std::sqrt(static_cast<double>(p)));
  const int panels = static_cast<int>(std::ceil(2.0 * window / width));
  const Geodesic& geo = cg.geo;
  return sum_classes(p, table, z, opt, [&](const CosetClass& cls, std::int64_t n) {
    MoebiusElement g = orbit_element(cls, n);
    double tc = geo.param_of(moebius_apply(g.inverse(), z));
    double a = tc - window, h = 2.0 * window / panels;
    cplx s = 0.0;
    for (int k = 0; k < panels; ++k) {
      double mid = a + (k + 0.5) * h;
      for (std::size_t i = 0; i < gx.size(); ++i) {
        double t = mid + 0.5 * h * gx[i];
        cplx x = geo.position(t);
        cplx jj = g.c * x + g.d;
        cplx w = (g.a * x + g.b) / jj;
        cplx pushed = std::conj(geo.velocity(t) / (jj * jj));
        s += gw[i] * ipow(z - std::conj(w), -2 * p) * ipow(pushed, p);
      }
    }
    return np * 0.5 * h * s;
  });
}

cplx katok_normalization(int p, const IntMatrix& g0) {
  Geodesic geo = geodesic_from_hyperbolic(g0.to_moebius());
  double beta = std::exp(2.0 * std::lgamma(p) - std::lgamma(2.0 * p));
  double cp = std::ldexp(2.0 * p - 1.0, 2 * p - 2) * beta / kPi;
  double lead = static_cast<double>(g0.c) * (geo.end - geo.start);
  double sign = p % 2 == 0 ? 1.0 : -1.0;
  return sign * cp * std::pow(lead, p);
}

RpsResult relative_poincare_series(int p, const IntMatrix& g0, cplx z, const CosetTable& table,
                                   const SeriesOptions& opt) {
  require_weight(p);
  ClosedGeodesic cg = closed_geodesic(g0);
  RpsResult r;
  r.katok_detail = katok_series(p, table, z, opt);
  r.quadrature_detail = geodesic_quadrature_series(p, cg, table, z, opt);
  r.katok = r.katok_detail.value;
  r.quadrature = r.quadrature_detail.value;
  r.ratio = r.quadrature / r.katok;
  return r;
}

cplx EllipticCircle::position(double t) const {
  cplx w = std::polar(std::tanh(0.5 * radius), t / std::sinh(radius));
  return (center - std::conj(center) * w) / (1.0 - w);
}

cplx EllipticCircle::velocity(double t) const {
  cplx w = std::polar(std::tanh(0.5 * radius), t / std::sinh(radius));
  cplx dw = kI * w / std::sinh(radius);
  return (center - std::conj(center)) / ((1.0 - w) * (1.0 - w)) * dw;
}

namespace {

cplx circle_transport(const EllipticCircle& c, double t) {
  if (t == 0.0) return 0.0;
  int panels = std::max(1, static_cast<int>(std::ceil(32.0 * std::abs(t) / c.period)));
  return transport_exponent([&](double s) { return c.position(s); },
                            [&](double s) { return c.velocity(s); }, 0.0, t, panels);
}

}  // namespace

cplx EllipticCircle::section(double t) const {
  cplx v0 = velocity(0.0);
  double y0 = position(0.0).imag();
  return std::conj(v0) / (y0 * y0) * std::exp(circle_transport(*this, t));
}

cplx EllipticCircle::holonomy_ratio() const {
  cplx j = static_cast<double>(g0.c) * position(0.0) + static_cast<double>(g0.d);
  return section(0.0) * j * j / section(shift);
}

cplx EllipticCircle::holonomy(int p) const { return ipow(holonomy_ratio(), p); }

EllipticCircle elliptic_circle(const IntMatrix& g0, double radius) {
  int order = psl2_order(g0);
  if (order < 2 || std::llabs(g0.trace()) >= 2) throw Error(ErrorCode::NotElliptic, "generator must be elliptic");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidSpec, "radius must be positive");
  EllipticCircle c;
  c.g0 = g0;
  c.radius = radius;
  c.order = order;
  c.period = 2.0 * kPi * std::sinh(radius);
  double tr = static_cast<double>(g0.trace());
  double im = std::sqrt(4.0 - tr * tr) / (2.0 * std::abs(static_cast<double>(g0.c)));
  c.center = {static_cast<double>(g0.a - g0.d) / (2.0 * static_cast<double>(g0.c)), im};
  MoebiusElement m = g0.to_moebius();
  cplx moved = moebius_apply(m, c.position(0.0));
  for (int k = 1; k < order; ++k) {
    double s = k * c.period / order;
    if (std::abs(c.position(s) - moved) < 1e-9 * std::max(1.0, std::abs(moved))) {
      c.shift = s;
      return c;
    }
  }
  throw Error(ErrorCode::InvalidSpec, "generator does not rotate the circle onto itself");
}

double admissible_elliptic_radius(const IntMatrix& g0, int p, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidSpec, "k must be at least 1");
  // continuous phase of the holonomy ratio as a function of the radius
  auto phase = [&](double r) {
    EllipticCircle c = elliptic_circle(g0, r);
    cplx j = static_cast<double>(g0.c) * c.position(0.0) + static_cast<double>(g0.d);
    cplx x = circle_transport(c, c.shift);
    return p * (2.0 * std::arg(j) - x.real()) / (2.0 * kPi);
  };
  double r0 = 1e-3, f0 = phase(r0);
  int found = 0;
  const double dr = 0.01;
  for (double r = r0 + dr; r < 8.0; r += dr) {
    double f1 = phase(r);
    double lo_int = std::floor(std::min(f0, f1)), hi_int = std::floor(std::max(f0, f1));
    for (double m = lo_int + 1; m <= hi_int; m += 1.0) {
      if (++found == k) {
        double a = r - dr, b = r;
        double fa = phase(a) - m;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (a + b), fm = phase(mid) - m;
          if ((fm < 0) == (fa < 0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        return 0.5 * (a + b);
      }
    }
    f0 = f1;
  }
  throw Error(ErrorCode::InvalidSpec, "no admissible radius found below 8");
}

SeriesValue elliptic_series(int p, const EllipticCircle& circle, const std::function<cplx(double)>& f,
                            const CosetTable& table, cplx z, const SeriesOptions& opt, int node_count) {
  require_weight(p);
  if (!(table.generator == circle.g0)) throw Error(ErrorCode::InvalidSpec, "table built for another generator");
  if (std::abs(circle.holonomy(p) - 1.0) >= 1e-8)
    throw Error(ErrorCode::NotBohrSommerfeldAtLevelP, "circle holonomy is nontrivial at this level");
  if (node_count <= 0) {
    double n = std::ceil(32.0 * std::sqrt(static_cast<double>(p)) * circle.period);
    node_count = static_cast<int>(std::max(64.0, n));
  }
  node_count = ((node_count + 11) / 12) * 12;
  const double h = circle.period / node_count;
  std::vector<cplx> pts(node_count), payload(node_count);
  for (int k = 0; k < node_count; ++k) {
    double t = k * h;
    cplx x = circle.position(t);
    pts[k] = x;
    payload[k] = h * ipow(circle.section(t), p) * std::pow(x.imag(), 2 * p) * f(t);
  }
  const double np = hyperbolic_kernel_constant(p);
  return sum_classes(p, table, z, opt, [&](const CosetClass& cls, std::int64_t n) {
    MoebiusElement g = orbit_element(cls, n);
    cplx s = 0.0;
    for (int k = 0; k < node_count; ++k) {
      cplx jj = g.c * pts[k] + g.d;
      cplx w = (g.a * pts[k] + g.b) / jj;
      s += ipow(z - std::conj(w), -2 * p) * ipow(std::conj(jj), -2 * p) * payload[k];
    }
    return np * s;
  });
}

CuspFormEvaluator::CuspFormEvaluator(int p, std::shared_ptr<const CosetTable> table, Fn fn)
    : p_(p), table_(std::move(table)), fn_(std::move(fn)) {}

GeodesicState make_geodesic_state(int p, const IntMatrix& g0, std::shared_ptr<const CosetTable> table,
                                  const SeriesOptions& opt) {
  require_weight(p);
  if (!(table->generator == g0)) throw Error(ErrorCode::InvalidSpec, "table built for another generator");
  ClosedGeodesic cg = closed_geodesic(g0);
  // the ratio is exact coset by coset; the identity class alone avoids the
  // cancellations between cosets that make odd weights vanish
  CosetTable small = coset_reps(g0, 0, table->convention);
  SeriesOptions loose = opt;
  loose.strict = false;
  cplx zref = cg.geo.position(0.0);
  cplx katok = katok_series(p, small, zref, loose).value;
  cplx quad = geodesic_quadrature_series(p, cg, small, zref, loose).value;
  cplx kappa = katok == 0.0 ? cplx(0.0) : quad / katok;
  auto fn = [p, table, kappa, opt](cplx z) {
    SeriesValue v = katok_series(p, *table, z, opt);
    v.value *= kappa;
    v.truncation_estimate *= std::abs(kappa);
    for (double& s : v.shell_abs) s *= std::abs(kappa);
    return v;
  };
  return GeodesicState{cg, kappa, CuspFormEvaluator(p, table, fn)};
}

CuspFormEvaluator make_elliptic_form(int p, const EllipticCircle& circle, std::function<cplx(double)> f,
                                     std::shared_ptr<const CosetTable> table, const SeriesOptions& opt) {
  auto fn = [p, circle, f, table, opt](cplx z) { return elliptic_series(p, circle, f, *table, z, opt); };
  return CuspFormEvaluator(p, table, fn);
}

double modularity_residual(const CuspFormEvaluator& ev, const MoebiusElement& g, cplx z) {
  cplx sz = ev(z);
  cplx sgz = ev(moebius_apply(g, z));
  cplx j = j_factor(g, z);
  return std::abs(sgz - ipow(j, 2 * ev.p()) * sz) / (std::abs(sz) + 1e-300);
}

PeterssonReport petersson_norm(const CuspFormEvaluator& ev, double y_max, int nx, int ny) {
  const int p = ev.p();
  if (y_max <= 0.0) y_max = std::max(10.0, static_cast<double>(p));
  if (y_max < 10.0) throw Error(ErrorCode::InvalidSpec, "y_max must be at least 10");
  auto integrate = [&](int mx, int my) {
    QuadratureRule xr = build_rule(RuleKind::GaussLegendreComposite, -0.5, 0.5, mx);
    std::vector<double> rows(xr.size());
    parallel_for(xr.size(), [&](std::size_t i) {
      double x = xr.nodes[i];
      double y0 = std::sqrt(1.0 - x * x);
      QuadratureRule yr = build_rule(RuleKind::GaussLegendreComposite, y0, y_max, my);
      std::vector<double> terms(yr.size());
      for (std::size_t k = 0; k < yr.size(); ++k) {
        double y = yr.nodes[k];
        terms[k] = yr.weights[k] * std::norm(ev(cplx(x, y))) * std::pow(y, 2 * p - 2);
      }
      rows[i] = xr.weights[i] * pairwise_sum(terms);
    });
    return pairwise_sum(rows);
  };
  PeterssonReport rep;
  rep.y_max = y_max;
  rep.nx = nx;
  rep.ny = ny;
  rep.value = integrate(nx, ny);
  rep.doubled = integrate(2 * nx, 2 * ny);
  rep.relative_change = rep.doubled == 0.0 ? 0.0 : std::abs(rep.doubled - rep.value) / std::abs(rep.doubled);
  if (rep.relative_change > 1e-4) throw Error(ErrorCode::GridTooCoarse, "doubling changed the norm by more than 1e-4");
  return rep;
}

PairingResult reproducing_pairing_detail(const CuspFormEvaluator& s1, const ClosedGeodesic& curve2,
                                        double oversampling) {
  const int p = s1.p();
  const double l = curve2.geo.translation_length;
  int n = static_cast<int>(std::max(64.0, std::ceil(16.0 * std::sqrt(static_cast<double>(p)) * l * oversampling)));
  const double h = l / n;
  std::vector<cplx> terms(n);
  std::vector<double> mags(n), bounds(n), series(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
    double t = k * h;
    cplx x = curve2.geo.position(t);
    cplx w = h * ipow(std::conj(curve2.geo.velocity(t)), p);
    SeriesValue v = s1.evaluate(x);
    terms[k] = std::conj(v.value) * w;
    mags[k] = std::abs(terms[k]);
    bounds[k] = v.truncation_estimate * std::abs(w);
    double m = 0.0;
    for (double a : v.shell_abs) m += a;
    series[k] = m * std::abs(w);
  });
  PairingResult out;
  out.value = pairwise_sum(terms);
  out.abs_mass = pairwise_sum(mags);
  out.truncation_estimate = pairwise_sum(bounds);
  out.series_mass = pairwise_sum(series);
  out.nodes = static_cast<std::size_t>(n);
  return out;
}

cplx reproducing_pairing(const CuspFormEvaluator& s1, const ClosedGeodesic& curve2, double oversampling) {
  return reproducing_pairing_detail(s1, curve2, oversampling).value;
}

double reproducing_norm(const GeodesicState& state, double oversampling) {
  return reproducing_pairing(state.form, state.curve, oversampling).real();
}

namespace {

struct Semicircle {
  double m, r;
};

Semicircle as_semicircle(double a, double b) { return {0.5 * (a + b), 0.5 * std::abs(b - a)}; }

bool interleave(double a1, double b1, double a2, double b2) {
  double lo1 = std::min(a1, b1), hi1 = std::max(a1, b1);
  bool in_a = a2 > lo1 && a2 < hi1;
  bool in_b = b2 > lo1 && b2 < hi1;
  return in_a != in_b;
}

}  // namespace

std::vector<GeodesicIntersection> quotient_geodesic_intersections(const ClosedGeodesic& geo1,
                                                                  const ClosedGeodesic& geo2,
                                                                  const CosetTable& table2) {
  if (!(table2.generator == geo2.g0)) throw Error(ErrorCode::InvalidSpec, "table built for another generator");
  const Geodesic& ax1 = geo1.geo;
  const Geodesic& ax2 = geo2.geo;
  const double l1 = ax1.translation_length, l2 = ax2.translation_length;
  std::vector<GeodesicIntersection> out;
  for (const CosetClass& cls : table2.classes) {
    MoebiusElement g0m = cls.rep.to_moebius();
    double ga = apply_boundary(g0m, ax2.start), gb = apply_boundary(g0m, ax2.end);
    if (std::isinf(ga) || std::isinf(gb)) continue;
    double lo = std::min(ga, gb), hi = std::max(ga, gb);
    double lo1 = std::min(ax1.start, ax1.end), hi1 = std::max(ax1.start, ax1.end);
    auto nmin = static_cast<std::int64_t>(std::floor(lo1 - hi)) - 1;
    auto nmax = static_cast<std::int64_t>(std::ceil(hi1 - lo)) + 1;
    for (std::int64_t n = nmin; n <= nmax; ++n) {
      double a2 = ga + n, b2 = gb + n;
      if (std::abs(a2 - ax1.start) < 1e-12 && std::abs(b2 - ax1.end) < 1e-12)
        throw Error(ErrorCode::SameAxis, "the two closed geodesics coincide");
      if (std::abs(a2 - ax1.end) < 1e-12 && std::abs(b2 - ax1.start) < 1e-12)
        throw Error(ErrorCode::SameAxis, "the two closed geodesics coincide");
      if (!interleave(ax1.start, ax1.end, a2, b2)) continue;
      Semicircle c1 = as_semicircle(ax1.start, ax1.end), c2 = as_semicircle(a2, b2);
      double x = (c1.r * c1.r - c2.r * c2.r + c2.m * c2.m - c1.m * c1.m) / (2.0 * (c2.m - c1.m));
      double y = std::sqrt(std::max(0.0, c1.r * c1.r - (x - c1.m) * (x - c1.m)));
      cplx z(x, y);
      double t1 = ax1.param_of(z);
      if (t1 < 0.0 || t1 >= l1) continue;
      MoebiusElement g = orbit_element(cls, n);
      double t2 = ax2.param_of(moebius_apply(g.inverse(), z));
      cplx x2 = ax2.position(t2);
      cplx jj = j_factor(g, x2);
      cplx v1 = ax1.velocity(t1);
      cplx v2 = ax2.velocity(t2) / (jj * jj);
      double theta = std::arg(v2 / v1);
      if (theta < 0.0) theta += 2.0 * kPi;
      GeodesicIntersection hit;
      hit.t1 = t1;
      hit.t2 = t2 - std::floor(t2 / l2) * l2;
      hit.theta = theta;
      hit.lambda = std::conj(geo1.section(t1)) * geo2.section(t2) * jj * jj * y * y;
      hit.point = z;
      hit.shell = cls.shell;
      out.push_back(hit);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.t1 < b.t1; });
  for (const auto& hit : out)
    if (hit.shell >= table2.max_word_length - 1)
      throw Error(ErrorCode::TruncationSuspect, "intersection found near the truncation boundary");
  return out;
}

}  // namespace isoq
