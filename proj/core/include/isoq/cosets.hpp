#pragma once

#include <cstdint>
#include <vector>

#include "isoq/moebius.hpp"

namespace isoq {

enum class SignConvention { Psl2Distinct, Sl2WithMinusIdentity };

const char* to_string(SignConvention c);
SignConvention sign_convention_from_string(const std::string& s);

// Integral binary quadratic form A z^2 + B z + C.
struct QuadForm {
  std::int64_t A = 0, B = 0, C = 0;

  cplx operator()(cplx z) const { return (static_cast<double>(A) * z + static_cast<double>(B)) * z + static_cast<double>(C); }
  std::int64_t discriminant() const { return B * B - 4 * A * C; }
  // the form z -> Q(z - n)
  QuadForm shifted(std::int64_t n) const;
  bool operator==(const QuadForm&) const = default;
};

// c z^2 + (d - a) z - b, whose roots are the fixed points of g0.
QuadForm katok_form(const IntMatrix& g0);

// z -> j(h, z)^2 Q(h z)
QuadForm pullback(const QuadForm& q, const IntMatrix& h);

// Coset g <g0> reduced to a canonical integer representative.
IntMatrix canonical_coset(const IntMatrix& g, const IntMatrix& g0);

// A class of cosets { T^n g <g0> : n in Z }. `form` is the form of the
// representative, j(g^{-1}, z)^2 Q(g^{-1} z), with B reduced into (-|A|, |A|].
struct CosetClass {
  IntMatrix rep;
  QuadForm form;
  int shell = 0;
};

struct CosetTable {
  IntMatrix generator;
  int max_word_length = 0;
  SignConvention convention = SignConvention::Psl2Distinct;
  std::vector<IntMatrix> representatives;  // canonical, breadth-first order
  std::vector<int> shells;                 // word length at which each was reached
  std::vector<CosetClass> classes;         // T-orbit classes

  double term_multiplicity() const { return convention == SignConvention::Sl2WithMinusIdentity ? 2.0 : 1.0; }
  int elliptic_order() const;  // order of g0 in PSL2(Z), 0 for hyperbolic
};

// Breadth-first enumeration of cosets gamma <g0> by left multiplication with
// S, T, T^{-1}, up to the given word length.
CosetTable coset_reps(const IntMatrix& g0, int max_word_length,
                      SignConvention convention = SignConvention::Psl2Distinct);

// Order of g in PSL2(Z) (2 or 3 for elliptic elements), 0 when infinite.
int psl2_order(const IntMatrix& g);

}  // namespace isoq
