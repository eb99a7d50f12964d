#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "teich/common.hpp"

namespace teich {

// Point of the boundary circle R u {inf}, stored projectively as p/q.
struct BPoint {
  double p = 0.0, q = 1.0;

  static BPoint infinity() { return {1.0, 0.0}; }
  static BPoint of(double x) { return {x, 1.0}; }
  bool isInf() const { return q == 0.0; }
  double value() const { return p / q; }

  void normalize() {
    double m = std::max(std::fabs(p), std::fabs(q));
    if (m == 0.0) fail(ErrorCode::NumericBlowup, "degenerate boundary point");
    p /= m;
    q /= m;
    if ((q < 0.0) || (q == 0.0 && p < 0.0)) { p = -p; q = -q; }
  }
};

inline bool samePoint(const BPoint& a, const BPoint& b, double tol = 1e-12) {
  // cross product of projective representatives
  double cr = a.p * b.q - b.p * a.q;
  double scale = std::max({std::fabs(a.p), std::fabs(a.q)}) *
                 std::max({std::fabs(b.p), std::fabs(b.q)});
  return std::fabs(cr) <= tol * std::max(scale, 1e-300);
}

// Real 2x2 matrix of determinant 1, identified with its negative.
struct MoebiusMap {
  double a = 1, b = 0, c = 0, d = 1;

  static MoebiusMap identity() { return {}; }

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }

  MoebiusMap normalized() const {
    double dt = det();
    if (!(dt > 0) && !(dt < 0)) fail(ErrorCode::NumericBlowup, "singular Moebius map");
    if (dt < 0) fail(ErrorCode::BadInput, "orientation-reversing matrix");
    double s = std::sqrt(dt);
    return {a / s, b / s, c / s, d / s};
  }

  MoebiusMap inverse() const { return MoebiusMap{d, -b, -c, a}.normalized(); }

  BPoint apply(const BPoint& z) const {
    BPoint w{a * z.p + b * z.q, c * z.p + d * z.q};
    w.normalize();
    return w;
  }

  std::complex<double> apply(std::complex<double> z) const {
    return (a * z + b) / (c * z + d);
  }
};

inline MoebiusMap operator*(const MoebiusMap& A, const MoebiusMap& B) {
  return {A.a * B.a + A.b * B.c, A.a * B.b + A.b * B.d, A.c * B.a + A.d * B.c,
          A.c * B.b + A.d * B.d};
}

enum class IsometryType { Parabolic, Hyperbolic, Elliptic, Identity };

inline IsometryType classify(const MoebiusMap& m, double tol = 1e-9) {
  MoebiusMap n = m.normalized();
  double t = std::fabs(n.trace());
  if (std::fabs(n.b) < tol && std::fabs(n.c) < tol && std::fabs(n.a - n.d) < tol)
    return IsometryType::Identity;
  if (std::fabs(t - 2.0) <= tol) return IsometryType::Parabolic;
  return t > 2.0 ? IsometryType::Hyperbolic : IsometryType::Elliptic;
}

inline double translationLength(const MoebiusMap& m) {
  double t = std::fabs(m.normalized().trace());
  if (t <= 2.0) fail(ErrorCode::BadInput, "translation length needs a hyperbolic element");
  return 2.0 * std::acosh(t / 2.0);
}

// Repelling and attracting fixed points of a hyperbolic element.
inline std::pair<BPoint, BPoint> axisEndpoints(const MoebiusMap& m0) {
  MoebiusMap m = m0.normalized();
  double tr = m.trace();
  if (std::fabs(tr) <= 2.0) fail(ErrorCode::BadInput, "axis needs a hyperbolic element");
  if (tr < 0) { m.a = -m.a; m.b = -m.b; m.c = -m.c; m.d = -m.d; tr = -tr; }
  double disc = std::sqrt(tr * tr - 4.0);
  BPoint att, rep;
  if (std::fabs(m.c) < 1e-14) {
    // one fixed point at infinity
    BPoint other = BPoint::of(m.b / (m.d - m.a));
    if (std::fabs(m.a) > std::fabs(m.d)) { att = BPoint::infinity(); rep = other; }
    else { rep = BPoint::infinity(); att = other; }
  } else {
    double f1 = (m.a - m.d + disc) / (2.0 * m.c);  // eigenvalue (tr+disc)/2
    double f2 = (m.a - m.d - disc) / (2.0 * m.c);
    att = BPoint::of(f1);
    rep = BPoint::of(f2);
  }
  return {rep, att};
}

// Cross ratio (p,q,r,s) = (p-r)(q-s)/((p-s)(q-r)), with points at infinity
// handled by limit cancellation.
inline double crossRatio(const BPoint& p, const BPoint& q, const BPoint& r, const BPoint& s) {
  const BPoint* pts[4] = {&p, &q, &r, &s};
  for (int i = 0; i < 4; i++)
    for (int j = i + 1; j < 4; j++)
      if (samePoint(*pts[i], *pts[j])) fail(ErrorCode::CoincidentPoints, "cross ratio needs distinct points");
  auto diff = [](const BPoint& x, const BPoint& y) { return x.p * y.q - y.p * x.q; };
  // (p-r)(q-s)/((p-s)(q-r)) in projective coordinates: the q-factors cancel.
  double num = diff(p, r) * diff(q, s);
  double den = diff(p, s) * diff(q, r);
  if (den == 0.0) fail(ErrorCode::CoincidentPoints, "degenerate cross ratio");
  return num / den;
}

inline double crossRatio(double p, double q, double r, double s) {
  return crossRatio(BPoint::of(p), BPoint::of(q), BPoint::of(r), BPoint::of(s));
}

// Geodesic of the upper half plane, as an unordered endpoint pair and, when
// available, the primitive integer triple (a,b,c) of a(x^2+y^2)+bx+c=0 whose
// roots are the endpoints.
struct GeodesicLine {
  BPoint e1, e2;
  std::optional<std::array<long long, 3>> triple;

  static GeodesicLine fromEndpoints(const BPoint& a, const BPoint& b) {
    if (samePoint(a, b)) fail(ErrorCode::CoincidentPoints, "line endpoints must differ");
    return {a, b, std::nullopt};
  }

  static GeodesicLine fromTriple(long long a, long long b, long long c) {
    long long g = std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c));
    if (g == 0) fail(ErrorCode::BadInput, "zero triple");
    a /= g; b /= g; c /= g;
    long long lead = a != 0 ? a : (b != 0 ? b : c);
    if (lead < 0) { a = -a; b = -b; c = -c; }
    double D = (double)b * b - 4.0 * (double)a * (double)c;
    if (D <= 0) fail(ErrorCode::BadInput, "triple must have positive discriminant");
    GeodesicLine L;
    L.triple = {a, b, c};
    if (a == 0) {
      L.e1 = BPoint::infinity();
      L.e2 = BPoint{-(double)c, (double)b};
      L.e2.normalize();
    } else {
      double sq = std::sqrt(D);
      L.e1 = BPoint::of((-b + sq) / (2.0 * a));
      L.e2 = BPoint::of((-b - sq) / (2.0 * a));
    }
    return L;
  }
};

enum class LineRelationKind { Equal, Asymptotic, Intersecting, Ultraparallel };

struct LineRelation {
  LineRelationKind kind;
  double cosTheta = 0.0;   // Intersecting: |u|
  double coshDist = 0.0;   // Ultraparallel: |u|
  double u = 0.0;          // signed invariant
};

// Geometric invariant of a line pair: conjugate L1 to (0, inf); with kappa
// the ratio of the images of L2's endpoints, u = (kappa+1)/(kappa-1).
// |u| < 1: intersecting with cos(theta) = |u|; |u| > 1: ultraparallel with
// cosh(dist) = |u|; |u| = 1: asymptotic.
inline LineRelation lineRelation(const GeodesicLine& L1, const GeodesicLine& L2,
                                 double tol = 1e-12) {
  LineRelation rel{};
  if (L1.triple && L2.triple) {
    auto [a1, b1, c1] = *L1.triple;
    auto [a2, b2, c2] = *L2.triple;
    if (a1 == a2 && b1 == b2 && c1 == c2) { rel.kind = LineRelationKind::Equal; return rel; }
    // polarized discriminant pairing; u = B / sqrt(D1 D2), exactly comparable
    long long B = b1 * b2 - 2 * (a1 * c2 + a2 * c1);
    long long D1 = b1 * b1 - 4 * a1 * c1;
    long long D2 = b2 * b2 - 4 * a2 * c2;
    __int128 lhs = (__int128)B * B;
    __int128 rhs = (__int128)D1 * D2;
    double u = (double)B / std::sqrt((double)D1 * (double)D2);
    rel.u = u;
    if (lhs == rhs) { rel.kind = LineRelationKind::Asymptotic; return rel; }
    if (lhs < rhs) { rel.kind = LineRelationKind::Intersecting; rel.cosTheta = std::fabs(u); return rel; }
    rel.kind = LineRelationKind::Ultraparallel;
    rel.coshDist = std::fabs(u);
    return rel;
  }
  // numeric route via the cross ratio
  bool shared = samePoint(L1.e1, L2.e1, tol) || samePoint(L1.e1, L2.e2, tol) ||
                samePoint(L1.e2, L2.e1, tol) || samePoint(L1.e2, L2.e2, tol);
  if (shared) {
    bool both = (samePoint(L1.e1, L2.e1, tol) && samePoint(L1.e2, L2.e2, tol)) ||
                (samePoint(L1.e1, L2.e2, tol) && samePoint(L1.e2, L2.e1, tol));
    rel.kind = both ? LineRelationKind::Equal : LineRelationKind::Asymptotic;
    return rel;
  }
  double kappa = crossRatio(L2.e2, L2.e1, L1.e1, L1.e2);  // image ratio after L1 -> (0, inf)
  double u = (kappa + 1.0) / (kappa - 1.0);
  rel.u = u;
  double au = std::fabs(u);
  if (std::fabs(au - 1.0) <= tol) { rel.kind = LineRelationKind::Asymptotic; return rel; }
  if (au < 1.0) { rel.kind = LineRelationKind::Intersecting; rel.cosTheta = au; return rel; }
  rel.kind = LineRelationKind::Ultraparallel;
  rel.coshDist = au;
  return rel;
}

// R(u) = u log|(u+1)/(u-1)| - 2, the gradient-pairing summand.  For large
// |u| the expansion 2(1/(3u^2) + 1/(5u^4) + ...) avoids cancellation.
inline double pairingR(double u) {
  double au = std::fabs(u);
  if (au == 1.0) fail(ErrorCode::SingularArgument, "R is singular at +-1");
  if (au > 1e4) {
    double x = 1.0 / (u * u);
    double term = x, s = 0.0;
    for (int k = 1; k < 40; k++) {
      s += 2.0 * term / (2 * k + 1);
      term *= x;
      if (term < 1e-20 * s) break;
    }
    return s;
  }
  if (au < 1.0) return u * 2.0 * std::atanh(u) - 2.0;
  return u * 2.0 * std::atanh(1.0 / u) - 2.0;
}

// S(t) = R(cosh t) for t > 0.
inline double pairingS(double t) {
  if (t <= 0.0) fail(ErrorCode::SingularArgument, "S needs t > 0");
  if (t > 12.0) {
    // cosh t is large; use the series directly on u = cosh t
    double u = std::cosh(t);
    double x = 1.0 / (u * u);
    double term = x, s = 0.0;
    for (int k = 1; k < 40; k++) {
      s += 2.0 * term / (2 * k + 1);
      term *= x;
      if (term < 1e-20 * s) break;
    }
    return s;
  }
  return pairingR(std::cosh(t));
}

// lambda(a) = a(1-a)/(2 sin pi a) on [0,1], extended by continuity to the
// endpoints; symmetric about 1/2, with 1/8 <= lambda <= 1/(2 pi).
inline double lambdaFn(double a) {
  if (a < 0.0 || a > 1.0) fail(ErrorCode::OutOfRange, "lambda needs a in [0,1]");
  if (a == 0.0 || a == 1.0) return 1.0 / (2.0 * M_PI);
  double s = std::sin(M_PI * a);
  // near the endpoints sin(pi a) ~ pi a; the ratio stays well conditioned
  return a * (1.0 - a) / (2.0 * s);
}

// log Gamma via the Stirling series with argument-shift recursion (shift
// until the argument is at least 10).
inline double logGamma(double z) {
  if (z <= 0.0) fail(ErrorCode::OutOfRange, "logGamma needs z > 0");
  double shift = 0.0;
  while (z < 10.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  static const double B[] = {
      1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188,
      -691.0 / 360360, 1.0 / 156, -3617.0 / 122400};
  double s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * M_PI);
  double zp = z;
  for (double b : B) {
    s += b / zp;
    zp *= z * z;
  }
  return s + shift;
}

struct CircuitSum {
  double value = 0.0;
  double tailBound = 0.0;
  long long terms = 0;
};

// Brute-force circuit sum  sum_{n>=0} S((a+n) l), truncated when the
// geometric tail bound drops below tailTol.  The series bound
// S(t) <= (2/3)/sinh^2(t) <= 3.6 e^{-2t} for t >= 1 controls the tail.
// Compensated summation.
inline CircuitSum circuitSumBrute(double a, double ell, double tailTol = 1e-14) {
  if (a <= 0.0 || ell <= 0.0) fail(ErrorCode::NonpositiveParam, "circuit sum needs a, l > 0");
  KahanSum acc;
  long long n = 0;
  double tail;
  double geo = 1.0 - std::exp(-2.0 * ell);
  while (true) {
    acc.add(pairingS((a + (double)n) * ell));
    tail = 3.6 * std::exp(-2.0 * (a + (double)n + 1) * ell) / geo;
    n++;
    if (tail < tailTol && (a + (double)n) * ell > 1.0) break;
    if (n > 200000000LL) fail(ErrorCode::NumericBlowup, "circuit sum truncation too slow");
  }
  return {acc.sum, tail, n};
}

// Closed-form expansion of the circuit sum,
//   2/l + log(Gamma(a)^2 l^{2a-1} / (2^{2a} pi)) + 2a - 1,
// with remainder O(l^{1-eps}).
inline double circuitSumAsymptotic(double a, double ell) {
  if (a <= 0.0 || ell <= 0.0) fail(ErrorCode::NonpositiveParam, "circuit sum needs a, l > 0");
  return 2.0 / ell + 2.0 * logGamma(a) + (2.0 * a - 1.0) * std::log(ell) -
         2.0 * a * std::log(2.0) - std::log(M_PI) + 2.0 * a - 1.0;
}

// Two-sided circuit sum  sum_{n in Z} S((a+n) l)  for 0 < a < 1:
//   4/l + 2 log(1/(2 sin pi a)) + O(l^{1-eps}).
inline double twoSidedAsymptotic(double a, double ell) {
  if (a <= 0.0 || a >= 1.0) fail(ErrorCode::OutOfRange, "two-sided sum needs 0 < a < 1");
  if (ell <= 0.0) fail(ErrorCode::NonpositiveParam, "circuit sum needs l > 0");
  return 4.0 / ell + 2.0 * std::log(1.0 / (2.0 * std::sin(M_PI * a)));
}

// a = 1 circuit sum  sum_{n>=1} S(n l) = 2/l + log(l/(4 pi)) + 1 + O(l^{1-eps}).
inline double a1Asymptotic(double ell) {
  if (ell <= 0.0) fail(ErrorCode::NonpositiveParam, "circuit sum needs l > 0");
  return 2.0 / ell + std::log(ell / (4.0 * M_PI)) + 1.0;
}

// Partial sum  sum_{|n| <= N} (z-n)^{-2}, converging to pi^2 / sin^2(pi z)
// with tail O(1/N).
inline std::complex<double> gardinerCuspPartialSum(std::complex<double> z, long long N) {
  if (!(z.imag() > 0.0)) fail(ErrorCode::NotInUpperHalfPlane, "z must have positive imaginary part");
  if (N < 1) fail(ErrorCode::NonpositiveParam, "N must be at least 1");
  std::complex<double> one(1.0, 0.0);
  std::complex<double> sum = one / (z * z);
  KahanSum re, im;
  re.add(sum.real());
  im.add(sum.imag());
  for (long long n = 1; n <= N; n++) {
    std::complex<double> t = one / ((z - (double)n) * (z - (double)n)) +
                             one / ((z + (double)n) * (z + (double)n));
    re.add(t.real());
    im.add(t.imag());
  }
  return {re.sum, im.sum};
}

inline std::complex<double> gardinerCuspClosedForm(std::complex<double> z) {
  std::complex<double> s = std::sin(M_PI * z);
  return M_PI * M_PI / (s * s);
}

}  // namespace teich
