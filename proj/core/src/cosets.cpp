#include "isoq/cosets.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "isoq/error.hpp"

namespace isoq {

const char* to_string(SignConvention c) {
  return c == SignConvention::Psl2Distinct ? "psl2-distinct" : "sl2-with-minus-identity";
}

SignConvention sign_convention_from_string(const std::string& s) {
  if (s == "psl2-distinct" || s == "psl2") return SignConvention::Psl2Distinct;
  if (s == "sl2-with-minus-identity" || s == "sl2") return SignConvention::Sl2WithMinusIdentity;
  throw Error(ErrorCode::ConfigError, "unknown sign convention: " + s);
}

QuadForm QuadForm::shifted(std::int64_t n) const {
  return {A, B - 2 * A * n, A * n * n - B * n + C};
}

QuadForm katok_form(const IntMatrix& g0) { return {g0.c, g0.d - g0.a, -g0.b}; }

QuadForm pullback(const QuadForm& q, const IntMatrix& h) {
  // j(h,z)^2 Q(hz) = A (pz+q)^2 + B (pz+q)(rz+s) + C (rz+s)^2 for h = [[p,q],[r,s]]
  const std::int64_t p = h.a, qq = h.b, r = h.c, s = h.d;
  QuadForm out;
  out.A = q.A * p * p + q.B * p * r + q.C * r * r;
  out.B = 2 * q.A * p * qq + q.B * (p * s + qq * r) + 2 * q.C * r * s;
  out.C = q.A * qq * qq + q.B * qq * s + q.C * s * s;
  return out;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

int psl2_order(const IntMatrix& g) {
  IntMatrix id;
  IntMatrix x = g;
  for (int k = 1; k <= 6; ++k) {
    if (x == id || x == -id) return k;
    x = x * g;
  }
  return 0;
}

int CosetTable::elliptic_order() const { return psl2_order(generator); }

IntMatrix canonical_coset(const IntMatrix& g, const IntMatrix& g0) {
  const int order = psl2_order(g0);
  auto better = [](const IntMatrix& x, const IntMatrix& y) {
    std::int64_t fx = x.frobenius_sq(), fy = y.frobenius_sq();
    return fx != fy ? fx < fy : x < y;
  };
  IntMatrix best = g.sign_normalized();
  if (order > 0) {
    IntMatrix x = g;
    for (int k = 1; k < order; ++k) {
      x = x * g0;
      IntMatrix cand = x.sign_normalized();
      if (better(cand, best)) best = cand;
    }
    return best;
  }
  // the Frobenius norm of g g0^k is convex in k: walk outward until it grows
  for (const IntMatrix& step : {g0, g0.inverse()}) {
    IntMatrix x = g;
    std::int64_t prev = g.frobenius_sq();
    for (int k = 0; k < 200; ++k) {
      x = x * step;
      std::int64_t f = x.frobenius_sq();
      IntMatrix cand = x.sign_normalized();
      if (better(cand, best)) best = cand;
      if (f > prev) break;
      prev = f;
    }
  }
  return best;
}

CosetTable coset_reps(const IntMatrix& g0, int max_word_length, SignConvention convention) {
  if (g0.det() != 1) throw Error(ErrorCode::NotInteger, "generator must lie in SL2(Z)");
  if (max_word_length < 0) throw Error(ErrorCode::WordLengthTooSmall, "word length must be nonnegative");
  const std::int64_t tr = std::llabs(g0.trace());
  if (tr == 2) throw Error(ErrorCode::InvalidSpec, "parabolic generators are not supported");

  CosetTable table;
  table.generator = g0;
  table.max_word_length = max_word_length;
  table.convention = convention;

  std::set<IntMatrix> seen;
  std::vector<IntMatrix> frontier{canonical_coset(IntMatrix{}, g0)};
  seen.insert(frontier.front());
  table.representatives.push_back(frontier.front());
  table.shells.push_back(0);
  for (int len = 1; len <= max_word_length; ++len) {
    std::vector<IntMatrix> next;
    for (const auto& g : frontier) {
      for (const IntMatrix& s : {kMatS, kMatT, kMatTinv}) {
        IntMatrix h = canonical_coset(s * g, g0);
        if (seen.insert(h).second) {
          next.push_back(h);
          table.representatives.push_back(h);
          table.shells.push_back(len);
        }
      }
    }
    frontier = std::move(next);
  }

  // group cosets into T-orbits, keyed by the canonical coset of the member
  // whose form has B in (-|A|, |A|]
  const QuadForm q0 = katok_form(g0);
  std::map<IntMatrix, std::size_t> index;
  for (std::size_t i = 0; i < table.representatives.size(); ++i) {
    const IntMatrix& g = table.representatives[i];
    QuadForm f = pullback(q0, g.inverse());
    if (f.A == 0) throw Error(ErrorCode::InvalidSpec, "generator has a rational fixed point");
    const std::int64_t n = f.A > 0 ? floor_div(f.B + f.A - 1, 2 * f.A) : floor_div(-f.A - f.B, -2 * f.A);
    QuadForm red = f.shifted(n);
    IntMatrix rep = canonical_coset(IntMatrix{1, n, 0, 1} * g, g0);
    auto it = index.find(rep);
    if (it == index.end()) {
      index.emplace(rep, table.classes.size());
      table.classes.push_back({rep, red, table.shells[i]});
    } else {
      auto& cls = table.classes[it->second];
      cls.shell = std::min(cls.shell, table.shells[i]);
    }
  }
  return table;
}

}  // namespace isoq
