#pragma once

#include <cstdint>
#include <string>

#include "isoq/numerics.hpp"

namespace isoq {

enum class MoebiusClass { Elliptic, Parabolic, Hyperbolic };

const char* to_string(MoebiusClass c);

struct MoebiusElement {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  // Throws InvalidSpec when |ad - bc - 1| >= 1e-12.
  static MoebiusElement make(double a, double b, double c, double d);

  double trace() const { return a + d; }
  MoebiusClass classify() const;
  MoebiusElement inverse() const { return {d, -b, -c, a}; }
  MoebiusElement operator*(const MoebiusElement& o) const;
};

// Exact integer matrices for SL2(Z) bookkeeping.
struct IntMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  std::int64_t trace() const { return a + d; }
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator-() const { return {-a, -b, -c, -d}; }
  IntMatrix inverse() const { return {d, -b, -c, a}; }
  IntMatrix power(int k) const;
  // representative of {g, -g} whose first nonzero entry is positive
  IntMatrix sign_normalized() const;
  std::int64_t frobenius_sq() const { return a * a + b * b + c * c + d * d; }
  MoebiusElement to_moebius() const;
  std::string str() const;

  bool operator==(const IntMatrix&) const = default;
  auto operator<=>(const IntMatrix&) const = default;
};

inline const IntMatrix kMatS{0, -1, 1, 0};
inline const IntMatrix kMatT{1, 1, 0, 1};
inline const IntMatrix kMatTinv{1, -1, 0, 1};

// Rounds every entry; throws NotInteger if any entry is not an integer or det != 1.
IntMatrix to_integer(const MoebiusElement& g);

cplx moebius_apply(const MoebiusElement& g, cplx z);
cplx j_factor(const MoebiusElement& g, cplx z);

// Coefficient of dz^p dwbar^p in the Bergman kernel of weight 2p on H.
cplx hyperbolic_kernel(int p, cplx z, cplx w);

// |P_p(z, w)| y_z^p y_w^p, invariant under simultaneous Moebius action.
double weighted_kernel_modulus(int p, cplx z, cplx w);

// (-1)^p 2^{2p-2} (2p-1) / pi
double hyperbolic_kernel_constant(int p);

}  // namespace isoq
