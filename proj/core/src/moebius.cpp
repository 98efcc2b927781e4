#include "isoq/moebius.hpp"

#include <cmath>
#include <sstream>

#include "isoq/error.hpp"

namespace isoq {

const char* to_string(MoebiusClass c) {
  switch (c) {
    case MoebiusClass::Elliptic: return "elliptic";
    case MoebiusClass::Parabolic: return "parabolic";
    case MoebiusClass::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

MoebiusElement MoebiusElement::make(double a, double b, double c, double d) {
  if (std::abs(a * d - b * c - 1.0) >= 1e-12) throw Error(ErrorCode::InvalidSpec, "determinant must be 1");
  return {a, b, c, d};
}

MoebiusClass MoebiusElement::classify() const {
  double t = std::abs(trace());
  if (t > 2.0 + 1e-12) return MoebiusClass::Hyperbolic;
  if (t < 2.0 - 1e-12) return MoebiusClass::Elliptic;
  return MoebiusClass::Parabolic;
}

MoebiusElement MoebiusElement::operator*(const MoebiusElement& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

IntMatrix IntMatrix::power(int k) const {
  IntMatrix base = k >= 0 ? *this : inverse();
  IntMatrix r;
  for (int i = 0; i < std::abs(k); ++i) r = r * base;
  return r;
}

IntMatrix IntMatrix::sign_normalized() const {
  std::int64_t first = a != 0 ? a : (b != 0 ? b : (c != 0 ? c : d));
  return first < 0 ? -*this : *this;
}

MoebiusElement IntMatrix::to_moebius() const {
  return {static_cast<double>(a), static_cast<double>(b), static_cast<double>(c), static_cast<double>(d)};
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

IntMatrix to_integer(const MoebiusElement& g) {
  auto round_exact = [](double x) {
    double r = std::round(x);
    if (std::abs(x - r) > 1e-9 || std::abs(r) > 9e15) throw Error(ErrorCode::NotInteger, "entry is not an integer");
    return static_cast<std::int64_t>(r);
  };
  IntMatrix m{round_exact(g.a), round_exact(g.b), round_exact(g.c), round_exact(g.d)};
  if (m.det() != 1) throw Error(ErrorCode::NotInteger, "integer matrix must have determinant 1");
  return m;
}

namespace {

void require_upper(cplx z) {
  if (!(z.imag() > 0.0)) throw Error(ErrorCode::NotInUpperHalfPlane, "Im z must be positive");
}

}  // namespace

cplx moebius_apply(const MoebiusElement& g, cplx z) {
  require_upper(z);
  return (g.a * z + g.b) / (g.c * z + g.d);
}

cplx j_factor(const MoebiusElement& g, cplx z) {
  require_upper(z);
  return g.c * z + g.d;
}

double hyperbolic_kernel_constant(int p) {
  double sign = (p % 2 == 0) ? 1.0 : -1.0;
  return sign * std::ldexp(2.0 * p - 1.0, 2 * p - 2) / kPi;
}

cplx hyperbolic_kernel(int p, cplx z, cplx w) {
  if (p < 1) throw Error(ErrorCode::InvalidSpec, "p must be at least 1");
  require_upper(z);
  require_upper(w);
  cplx base = z - std::conj(w);
  return hyperbolic_kernel_constant(p) * ipow(base, -2 * p);
}

double weighted_kernel_modulus(int p, cplx z, cplx w) {
  require_upper(z);
  require_upper(w);
  double ratio = z.imag() * w.imag() / std::norm(z - std::conj(w));
  return std::abs(hyperbolic_kernel_constant(p)) * std::pow(ratio, p);
}

}  // namespace isoq
