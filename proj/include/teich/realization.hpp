#pragma once

#include <cmath>
#include <deque>
#include <vector>

#include "teich/coords.hpp"
#include "teich/hyperbolic.hpp"
#include "teich/surface.hpp"

namespace teich {

// Horocycle: Euclidean diameter at a finite base point, height when based
// at infinity.
struct Horocycle {
  BPoint base;
  double size = 1.0;
};

// Signed distance between two horocycles along the geodesic joining their
// base points (negative when the horodiscs overlap).
inline double horocycleDistance(const Horocycle& h1, const Horocycle& h2) {
  if (!(h1.size > 0.0) || !(h2.size > 0.0)) fail(ErrorCode::UndecoratedCusp, "horocycle size must be positive");
  if (h1.base.isInf() && h2.base.isInf()) fail(ErrorCode::CoincidentPoints, "horocycles at a common cusp");
  if (h1.base.isInf()) return std::log(h1.size / h2.size);
  if (h2.base.isInf()) return std::log(h2.size / h1.size);
  double dx = h1.base.value() - h2.base.value();
  if (dx == 0.0) fail(ErrorCode::CoincidentPoints, "horocycles at a common cusp");
  return std::log(dx * dx / (h1.size * h2.size));
}

// lambda-length = exp(distance/2).
inline double lambdaOfHorocycles(const Horocycle& h1, const Horocycle& h2) {
  return std::exp(horocycleDistance(h1, h2) / 2.0);
}

namespace detail {

// Model ideal triangle with ccw vertices (0, inf, -1).
inline BPoint modelVertex(int k) {
  switch (((k % 3) + 3) % 3) {
    case 0: return BPoint::of(0.0);
    case 1: return BPoint::infinity();
    default: return BPoint::of(-1.0);
  }
}

// Moebius map sending (p1, p2, p3) to (0, inf, -1).
inline MoebiusMap mapToStd(const BPoint& p1, const BPoint& p2, const BPoint& p3) {
  auto D = [](const BPoint& x, const BPoint& y) { return x.p * y.q - y.p * x.q; };
  double d32 = D(p3, p2), d31 = D(p3, p1);
  MoebiusMap m{-d32 * p1.q, d32 * p1.p, d31 * p2.q, -d31 * p2.p};
  double dt = m.det();
  if (!(std::fabs(dt) > 1e-300)) fail(ErrorCode::NumericBlowup, "degenerate point triple");
  if (dt < 0) { m.a = -m.a; m.b = -m.b; m.c = -m.c; m.d = -m.d; }  // never for ccw triples
  double s = std::sqrt(std::fabs(dt));
  return {m.a / s, m.b / s, m.c / s, m.d / s};
}

inline MoebiusMap mapTakingTriple(const BPoint& a1, const BPoint& a2, const BPoint& a3,
                                  const BPoint& b1, const BPoint& b2, const BPoint& b3) {
  return mapToStd(b1, b2, b3).inverse() * mapToStd(a1, a2, a3);
}

// Gluing across side i of a triangle placed in its own model frame: returns
// the placement (child model frame -> parent model frame) of the partner
// triangle entered through its side i', for shear value sigma.  In the frame
// (tail, head, left apex) = (0, inf, -1) the new apex sits at exp(-sigma).
inline MoebiusMap glueAcross(int i, int iPrime, double sigma) {
  BPoint tail = modelVertex(i), head = modelVertex(i + 1), apex = modelVertex(i + 2);
  MoebiusMap toStd = mapToStd(tail, head, apex);
  BPoint newApex = toStd.inverse().apply(BPoint::of(std::exp(-sigma)));
  // child ccw vertices (i', i'+1, i'+2) land on (head, tail, newApex)
  return mapTakingTriple(modelVertex(iPrime), modelVertex(iPrime + 1), modelVertex(iPrime + 2),
                         head, tail, newApex);
}

}  // namespace detail

struct PlacedTriangle {
  TriId tri = -1;
  MoebiusMap place;                 // model frame -> H
  std::array<BPoint, 3> verts;
  std::array<double, 3> horo{0, 0, 0};  // sizes; valid when decorated
  int depth = 0;
};

struct DecoratedRealization {
  IdealTriangulation T;
  std::vector<double> sigma;
  bool decorated = false;
  std::vector<PlacedTriangle> placed;
  struct TreeEdge {
    int parent = -1;
    int side = -1;   // side of the parent crossed
    int child = -1;
    EdgeId edge = -1;
  };
  std::vector<TreeEdge> treeEdges;
};

namespace detail {

inline void fillVerts(PlacedTriangle& p) {
  for (int k = 0; k < 3; k++) p.verts[k] = p.place.apply(modelVertex(k));
}

inline Horocycle horoAt(const PlacedTriangle& p, int k) { return {p.verts[k], p.horo[k]}; }

// Solves the horocycle size at vertex `k` of a placed triangle from the
// lambda of the side joining it to vertex `known`.
inline double solveHoro(const BPoint& unknown, const BPoint& knownPt, double knownSize,
                        double lambda) {
  if (unknown.isInf()) return lambda * lambda * knownSize;           // height
  if (knownPt.isInf()) return knownSize / (lambda * lambda);        // diameter
  double dx = unknown.value() - knownPt.value();
  return dx * dx / (lambda * lambda * knownSize);
}

}  // namespace detail

// Breadth-first development from shear coordinates.  The base triangle is
// tris[0], placed with ideal vertices {0, -1, inf}; every other placement is
// reached by gluing across edges so the developed quadrilateral realizes the
// prescribed shear.  Truncated at combinatorial depth `depth`.
inline DecoratedRealization develop(const IdealTriangulation& T, const std::vector<double>& sigma,
                                    int depth) {
  if ((int)sigma.size() != T.edgeCount()) fail(ErrorCode::BadInput, "shear vector size mismatch");
  DecoratedRealization R;
  R.T = T;
  R.sigma = sigma;
  PlacedTriangle base;
  base.tri = 0;
  base.place = MoebiusMap::identity();
  detail::fillVerts(base);
  R.placed.push_back(base);

  std::deque<std::pair<int, int>> queue;  // (placed index, entry side or -1)
  queue.push_back({0, -1});
  while (!queue.empty()) {
    auto [idx, entry] = queue.front();
    queue.pop_front();
    const PlacedTriangle cur = R.placed[idx];
    if (cur.depth >= depth) continue;
    for (int i = 0; i < 3; i++) {
      if (i == entry) continue;
      Slot here{cur.tri, i};
      Slot there = T.partner(here);
      EdgeId e = T.side(cur.tri, i);
      PlacedTriangle child;
      child.tri = there.tri;
      child.place = (cur.place * detail::glueAcross(i, there.side, sigma[e])).normalized();
      child.depth = cur.depth + 1;
      detail::fillVerts(child);
      R.placed.push_back(child);
      int cidx = (int)R.placed.size() - 1;
      R.treeEdges.push_back({idx, i, cidx, e});
      queue.push_back({cidx, there.side});
    }
  }
  return R;
}

// Development from lambda-lengths: shears are derived from lambda and
// horocycles are solved on the base triangle and propagated.
inline DecoratedRealization developFromLambda(const IdealTriangulation& T,
                                              const LambdaVec<double>& lam, int depth) {
  requirePositive(T, lam);
  DecoratedRealization R = develop(T, shearCoords(T, lam), depth);
  R.decorated = true;
  // base horocycles: model vertices (0, inf, -1); sides s0=(0,inf), s1=(inf,-1), s2=(-1,0)
  {
    auto& b = R.placed[0];
    double l0 = lam[T.side(b.tri, 0)], l1 = lam[T.side(b.tri, 1)], l2 = lam[T.side(b.tri, 2)];
    b.horo[0] = l1 / (l0 * l2);
    b.horo[1] = l0 * l1 / l2;
    b.horo[2] = l0 / (l1 * l2);
  }
  for (const auto& te : R.treeEdges) {
    const auto& parent = R.placed[te.parent];
    auto& child = R.placed[te.child];
    Slot there = R.T.partner({parent.tri, te.side});
    int ip = there.side;
    // shared endpoints: child vertex ip = parent head, ip+1 = parent tail
    child.horo[ip] = parent.horo[(te.side + 1) % 3];
    child.horo[(ip + 1) % 3] = parent.horo[te.side];
    int apex = (ip + 2) % 3;
    double lamTailApex = lam[T.side(child.tri, ip + 1)];
    child.horo[apex] = detail::solveHoro(child.verts[apex], child.verts[(ip + 1) % 3],
                                         child.horo[(ip + 1) % 3], lamTailApex);
    // coupling consistency on the head side
    double lamHeadApex = lam[T.side(child.tri, ip + 2)];
    double got = lambdaOfHorocycles(detail::horoAt(child, apex), detail::horoAt(child, ip));
    if (std::fabs(got - lamHeadApex) > 1e-6 * std::max(1.0, lamHeadApex))
      fail(ErrorCode::NumericBlowup, "horocycle propagation lost coupling consistency");
  }
  return R;
}

// Shear of a developed interior edge, measured from the four vertices of its
// quadrilateral; must reproduce the input shear.
inline double measuredShear(const DecoratedRealization& R, size_t treeEdgeIndex) {
  const auto& te = R.treeEdges.at(treeEdgeIndex);
  const auto& parent = R.placed[te.parent];
  const auto& child = R.placed[te.child];
  Slot there = R.T.partner({parent.tri, te.side});
  BPoint tail = parent.verts[te.side];
  BPoint head = parent.verts[(te.side + 1) % 3];
  BPoint left = parent.verts[(te.side + 2) % 3];
  BPoint right = child.verts[(there.side + 2) % 3];
  double cr = crossRatio(tail, head, right, left);
  if (!(-cr > 0.0)) fail(ErrorCode::NumericBlowup, "degenerate developed quadrilateral");
  return -std::log(-cr);
}

// lambda-length of an edge measured from any placed decorated instance.
inline double measureLambda(const DecoratedRealization& R, EdgeId e) {
  if (!R.decorated) fail(ErrorCode::UndecoratedCusp, "realization carries no decoration");
  for (const auto& p : R.placed) {
    for (int i = 0; i < 3; i++) {
      if (R.T.side(p.tri, i) != e) continue;
      return lambdaOfHorocycles(detail::horoAt(p, i), detail::horoAt(p, (i + 1) % 3));
    }
  }
  fail(ErrorCode::BadInput, "edge not present in the realization");
}

// Holonomy around a cusp: the composition of gluing maps along the cusp
// link, starting at the given corner with its triangle in the model frame.
inline MoebiusMap cuspHolonomyFrom(const IdealTriangulation& T, const std::vector<double>& sigma,
                                   Corner start) {
  MoebiusMap M = MoebiusMap::identity();
  TriId t = start.tri;
  int v = start.vert;
  do {
    Slot crossing{t, (v + 2) % 3};
    Slot next = T.partner(crossing);
    M = (M * detail::glueAcross(crossing.side, next.side, sigma[T.side(t, crossing.side)]))
            .normalized();
    t = next.tri;
    v = next.side;
  } while (!(t == start.tri && v == start.vert));
  return M;
}

inline MoebiusMap cuspHolonomy(const IdealTriangulation& T, const std::vector<double>& sigma,
                               int cusp) {
  if ((int)sigma.size() != T.edgeCount()) fail(ErrorCode::BadInput, "shear vector size mismatch");
  const auto& link = T.cusps.at(cusp);
  if (link.corners.empty()) fail(ErrorCode::IncompleteDevelopment, "empty cusp link");
  return cuspHolonomyFrom(T, sigma, link.corners[0]);
}

namespace detail {

// Size of the length-one horocycle at the fixed point of a primitive
// parabolic: height |b| at infinity, diameter 1/|c| at a finite point.
inline double canonicalHoroSize(const MoebiusMap& H, const BPoint& fixedPt) {
  MoebiusMap N = H.normalized();
  if (fixedPt.isInf()) {
    if (std::fabs(N.c) > 1e-9) fail(ErrorCode::IncompleteDevelopment, "holonomy does not fix infinity");
    return std::fabs(N.b / N.a);
  }
  if (std::fabs(N.c) < 1e-300) fail(ErrorCode::IncompleteDevelopment, "holonomy fixes infinity unexpectedly");
  return 1.0 / std::fabs(N.c);
}

}  // namespace detail

// Reduced length of an edge: signed distance between the length-one
// horocycles at its two cusps.  Independent of any decoration.
inline double reducedLength(const IdealTriangulation& T, const std::vector<double>& sigma,
                            EdgeId e) {
  Slot s = T.slotsOfEdge[e][0];
  BPoint tailPt = detail::modelVertex(s.side);
  BPoint headPt = detail::modelVertex(s.side + 1);
  // walk both endpoint cusps in the chart that places triangle s.tri in the
  // model frame
  MoebiusMap Ht = cuspHolonomyFrom(T, sigma, {s.tri, s.side});
  MoebiusMap Hh = cuspHolonomyFrom(T, sigma, {s.tri, (s.side + 1) % 3});
  if (classify(Ht) != IsometryType::Parabolic || classify(Hh) != IsometryType::Parabolic)
    fail(ErrorCode::IncompleteDevelopment, "reduced length needs parabolic cusp holonomies");
  Horocycle a{tailPt, detail::canonicalHoroSize(Ht, tailPt)};
  Horocycle b{headPt, detail::canonicalHoroSize(Hh, headPt)};
  return horocycleDistance(a, b);
}

}  // namespace teich
