#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "teich/surface.hpp"

namespace teich {

// Lambda-lengths indexed by EdgeId.  K is double for numeric work or Rat for
// the exact multiplicative identities.  Logarithmic quantities (shears,
// balanced lengths) additionally come in a formal-log flavour where the
// vector x stores x_e = log(lambda_e) as free exact rationals.
template <typename K>
using LambdaVec = std::vector<K>;

using LogLambda = std::vector<Rat>;  // x_e = log lambda_e, exact

template <typename K>
inline void requirePositive(const IdealTriangulation& T, const LambdaVec<K>& lam) {
  if ((int)lam.size() != T.edgeCount())
    fail(ErrorCode::MissingWeight, "lambda vector size mismatch");
  for (EdgeId e = 0; e < T.edgeCount(); e++)
    if (!(lam[e] > 0))
      fail(ErrorCode::NonpositiveLambda, "lambda('" + T.edgeNames[e] + "') must be positive");
}

// h-length of the horocycle segment in each vertex sector:
// h = lambda_opposite / (lambda_adjacent * lambda_adjacent).
template <typename K>
inline std::vector<std::array<K, 3>> hLengths(const IdealTriangulation& T,
                                              const LambdaVec<K>& lam) {
  requirePositive(T, lam);
  std::vector<std::array<K, 3>> h(T.triangleCount());
  for (TriId t = 0; t < T.triangleCount(); t++)
    for (int v = 0; v < 3; v++)
      h[t][v] = lam[T.side(t, v + 1)] / (lam[T.side(t, v)] * lam[T.side(t, v + 2)]);
  return h;
}

// Side roles of the quadrilateral of edge e, oriented along the slot whose
// triangle traverses e co-orientedly (that triangle is on the left).
//   aTail/bHead: left-triangle sides at the tail/head of e,
//   dTail/cHead: right-triangle sides at the tail/head of e.
// Reversing the orientation of e swaps aTail<->cHead and bHead<->dTail, so
// the shear below does not depend on the choice of slot.
struct ShearQuad {
  EdgeId aTail, bHead, cHead, dTail;
};

inline ShearQuad shearQuad(const IdealTriangulation& T, EdgeId e) {
  Slot left = T.slotsOfEdge[e][0];
  Slot right = T.partner(left);
  if (left.tri == right.tri && left.side == right.side)
    fail(ErrorCode::SelfFolded, "edge '" + T.edgeNames[e] + "' is self-glued");
  ShearQuad q;
  q.aTail = T.side(left.tri, left.side + 2);
  q.bHead = T.side(left.tri, left.side + 1);
  q.cHead = T.side(right.tri, right.side + 2);
  q.dTail = T.side(right.tri, right.side + 1);
  return q;
}

// Shear coordinate of edge e.  With the quadrilateral roles above,
//   sigma_e = log(lambda_a lambda_c) - log(lambda_b lambda_d),
// the sign choice for which the four form constructions agree (see the
// symplectic tests); both orientations of e give the same value.
inline double shearOf(const IdealTriangulation& T, const LambdaVec<double>& lam, EdgeId e) {
  auto q = shearQuad(T, e);
  return std::log(lam[q.aTail]) + std::log(lam[q.cHead]) - std::log(lam[q.bHead]) -
         std::log(lam[q.dTail]);
}

inline std::vector<double> shearCoords(const IdealTriangulation& T, const LambdaVec<double>& lam) {
  requirePositive(T, lam);
  std::vector<double> sigma(T.edgeCount());
  for (EdgeId e = 0; e < T.edgeCount(); e++) sigma[e] = shearOf(T, lam, e);
  return sigma;
}

// Exact shears of a formal-log point: linear in x.
inline std::vector<Rat> shearCoordsLog(const IdealTriangulation& T, const LogLambda& x) {
  if ((int)x.size() != T.edgeCount()) fail(ErrorCode::MissingWeight, "log-lambda size mismatch");
  std::vector<Rat> sigma(T.edgeCount(), Rat(0));
  for (EdgeId e = 0; e < T.edgeCount(); e++) {
    auto q = shearQuad(T, e);
    sigma[e] = x[q.aTail] + x[q.cHead] - x[q.bHead] - x[q.dTail];
  }
  return sigma;
}

// Ptolemy flip of edge e.  The two adjacent triangles (e,x,y), (e,z,w) are
// replaced by (e,y,z), (e,w,x) and lambda_e by (l_x l_z + l_y l_w)/l_e.  The
// result is re-validated; a flip producing a self-folded triangle is
// rejected.
template <typename K>
inline std::pair<IdealTriangulation, LambdaVec<K>> ptolemyFlip(const IdealTriangulation& T,
                                                               const LambdaVec<K>& lam, EdgeId e) {
  requirePositive(T, lam);
  Slot s1 = T.slotsOfEdge[e][0];
  Slot s2 = T.slotsOfEdge[e][1];
  if (s1.tri == s2.tri) fail(ErrorCode::SelfFolded, "flip of a self-folded edge");
  EdgeId x = T.side(s1.tri, s1.side + 1), y = T.side(s1.tri, s1.side + 2);
  EdgeId z = T.side(s2.tri, s2.side + 1), w = T.side(s2.tri, s2.side + 2);

  std::vector<std::vector<std::string>> raw;
  for (TriId t = 0; t < T.triangleCount(); t++) {
    if (t == s1.tri) {
      raw.push_back({T.edgeNames[e], T.edgeNames[y], T.edgeNames[z]});
    } else if (t == s2.tri) {
      raw.push_back({T.edgeNames[e], T.edgeNames[w], T.edgeNames[x]});
    } else {
      raw.push_back({T.edgeNames[T.tris[t][0]], T.edgeNames[T.tris[t][1]],
                     T.edgeNames[T.tris[t][2]]});
    }
  }
  IdealTriangulation T2 = validate(raw);

  LambdaVec<K> lam2(T2.edgeCount());
  for (EdgeId f = 0; f < T2.edgeCount(); f++) lam2[f] = lam[T.edgeIdOf(T2.edgeNames[f])];
  EdgeId e2 = T2.edgeIdOf(T.edgeNames[e]);
  lam2[e2] = (lam[x] * lam[z] + lam[y] * lam[w]) / lam[e];
  return {std::move(T2), std::move(lam2)};
}

inline bool flipIsLegal(const IdealTriangulation& T, EdgeId e) {
  Slot s1 = T.slotsOfEdge[e][0];
  Slot s2 = T.slotsOfEdge[e][1];
  if (s1.tri == s2.tri) return false;
  EdgeId x = T.side(s1.tri, s1.side + 1), y = T.side(s1.tri, s1.side + 2);
  EdgeId z = T.side(s2.tri, s2.side + 1), w = T.side(s2.tri, s2.side + 2);
  // flipped triangles are (e,y,z) and (e,w,x)
  return e != y && e != z && y != z && e != w && e != x && w != x;
}

// Shrinking the horocycle at cusp c by hyperbolic distance t multiplies each
// lambda_e by exp(t/2 * #side-ends of e at c).
inline LambdaVec<double> rescaleDecoration(const IdealTriangulation& T,
                                           const LambdaVec<double>& lam, int cusp, double t) {
  requirePositive(T, lam);
  LambdaVec<double> out = lam;
  for (const auto& end : T.cusps.at(cusp).ends) out[end.edge] *= std::exp(t / 2.0);
  return out;
}

inline LogLambda rescaleDecorationLog(const IdealTriangulation& T, const LogLambda& x, int cusp,
                                      const Rat& t) {
  LogLambda out = x;
  for (const auto& end : T.cusps.at(cusp).ends) out[end.edge] += t / 2;
  return out;
}

// L(A) = sum over edges of 2 w_e log(lambda_e); decoration-independent for
// balanced w.
inline double balancedLength(const IdealTriangulation& T, const LambdaVec<double>& lam,
                             const WeightSystem& w) {
  requirePositive(T, lam);
  if ((int)w.size() != T.edgeCount()) fail(ErrorCode::MissingWeight, "weight vector size mismatch");
  double L = 0;
  for (EdgeId e = 0; e < T.edgeCount(); e++) L += 2.0 * ratToDouble(w[e]) * std::log(lam[e]);
  return L;
}

inline Rat balancedLengthLog(const IdealTriangulation& T, const LogLambda& x,
                             const WeightSystem& w) {
  if ((int)w.size() != T.edgeCount() || (int)x.size() != T.edgeCount())
    fail(ErrorCode::MissingWeight, "vector size mismatch");
  Rat L = 0;
  for (EdgeId e = 0; e < T.edgeCount(); e++) L += 2 * w[e] * x[e];
  return L;
}

}  // namespace teich
