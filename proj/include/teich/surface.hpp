#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "teich/common.hpp"

namespace teich {

using EdgeId = int;
using TriId = int;

// A side slot: side `side` (0..2) of triangle `tri`.  Sides of a triangle are
// stored in counterclockwise order; side i runs from ideal vertex i to vertex
// i+1, so the triangle itself lies on the left of its directed side.
struct Slot {
  TriId tri = -1;
  int side = -1;
  bool operator==(const Slot& o) const { return tri == o.tri && side == o.side; }
};

// Corner (vertex sector) at vertex `vert` of triangle `tri`.  The incoming
// side is vert-1, the outgoing side is vert, the opposite side is vert+1.
struct Corner {
  TriId tri = -1;
  int vert = -1;
  bool operator==(const Corner& o) const { return tri == o.tri && vert == o.vert; }
  bool operator<(const Corner& o) const { return tri != o.tri ? tri < o.tri : vert < o.vert; }
};

// One crossing of a cusp link with an edge: the link passes through the end
// of side `slot` that sits at the cusp.
struct SideEnd {
  Slot slot;
  EdgeId edge = -1;
};

// Cyclic counterclockwise sequence of side-ends around one cusp, with the
// corner sitting after each crossing (between ends[i] and ends[i+1]).
struct CuspLink {
  int cusp = -1;
  std::vector<SideEnd> ends;
  std::vector<Corner> corners;
  size_t size() const { return ends.size(); }
};

struct IdealTriangulation {
  std::vector<std::string> edgeNames;
  std::vector<std::array<EdgeId, 3>> tris;        // ccw side labels
  std::vector<std::array<Slot, 2>> slotsOfEdge;   // the two occurrences of each edge
  std::vector<CuspLink> cusps;
  std::vector<std::vector<int>> cuspOfCorner;     // [tri][vert] -> cusp id
  int genus = 0;

  int edgeCount() const { return (int)edgeNames.size(); }
  int triangleCount() const { return (int)tris.size(); }
  int cuspCount() const { return (int)cusps.size(); }

  EdgeId edgeIdOf(const std::string& name) const {
    for (EdgeId e = 0; e < (int)edgeNames.size(); e++)
      if (edgeNames[e] == name) return e;
    fail(ErrorCode::BadInput, "unknown edge '" + name + "'");
  }

  EdgeId side(TriId t, int i) const { return tris[t][((i % 3) + 3) % 3]; }

  // The other occurrence of the edge in slot (t, i).
  Slot partner(Slot s) const {
    EdgeId e = side(s.tri, s.side);
    const auto& occ = slotsOfEdge[e];
    return (occ[0] == s) ? occ[1] : occ[0];
  }
};

// Validates a raw triangle list (ccw side labels) and derives the surface
// data: edge slots, cusp links (corner walk) and (g, n).
//
// Corner walk: from the corner at vertex v of a triangle, the ccw direction
// around the cusp crosses the incoming side v-1 to its other occurrence
// (t', i') and continues at the corner at vertex i' of t'.  With sides stored
// ccw this enumerates each cusp link counterclockwise; the orientation is
// pinned by the once-punctured-torus checks (link pattern and the omega
// example) in the test suite.
inline IdealTriangulation validate(const std::vector<std::vector<std::string>>& rawTriangles) {
  if (rawTriangles.empty()) fail(ErrorCode::EmptyInput, "no triangles");
  IdealTriangulation T;
  std::map<std::string, EdgeId> ids;
  for (const auto& raw : rawTriangles) {
    if (raw.size() != 3) fail(ErrorCode::BadInput, "triangle needs exactly 3 sides");
    std::array<EdgeId, 3> tri;
    for (int i = 0; i < 3; i++) {
      auto it = ids.find(raw[i]);
      if (it == ids.end()) {
        it = ids.emplace(raw[i], (EdgeId)T.edgeNames.size()).first;
        T.edgeNames.push_back(raw[i]);
      }
      tri[i] = it->second;
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      fail(ErrorCode::SelfFolded, "edge '" + raw[0] + "/" + raw[1] + "/" + raw[2] +
                                      "' appears twice in one triangle");
    T.tris.push_back(tri);
  }

  std::vector<std::vector<Slot>> occ(T.edgeNames.size());
  for (TriId t = 0; t < (int)T.tris.size(); t++)
    for (int i = 0; i < 3; i++) occ[T.tris[t][i]].push_back({t, i});
  for (EdgeId e = 0; e < (int)occ.size(); e++) {
    if (occ[e].size() != 2)
      fail(ErrorCode::EdgeDegree, "edge '" + T.edgeNames[e] + "' occupies " +
                                      std::to_string(occ[e].size()) + " side-slots, expected 2");
    T.slotsOfEdge.push_back({occ[e][0], occ[e][1]});
  }

  // Corner walk.
  int nTri = T.triangleCount();
  T.cuspOfCorner.assign(nTri, std::vector<int>(3, -1));
  for (TriId t0 = 0; t0 < nTri; t0++) {
    for (int v0 = 0; v0 < 3; v0++) {
      if (T.cuspOfCorner[t0][v0] != -1) continue;
      CuspLink link;
      link.cusp = (int)T.cusps.size();
      TriId t = t0;
      int v = v0;
      do {
        if (T.cuspOfCorner[t][v] != -1)
          fail(ErrorCode::NonsurfaceGluing, "corner walk revisits a corner before closing");
        T.cuspOfCorner[t][v] = link.cusp;
        link.corners.push_back({t, v});
        Slot crossing{t, (v + 2) % 3};  // incoming side at vertex v
        link.ends.push_back({crossing, T.side(t, crossing.side)});
        Slot next = T.partner(crossing);
        t = next.tri;
        v = next.side;
      } while (!(t == t0 && v == v0));
      // rotate so the link starts with a side-end crossing into corner[0]
      std::rotate(link.ends.begin(), link.ends.begin() + 1, link.ends.end());
      T.cusps.push_back(std::move(link));
    }
  }

  int E = T.edgeCount(), nT = T.triangleCount(), n = T.cuspCount();
  int chi = nT - E + n;  // = 2 - 2g
  if (chi > 2 || (2 - chi) % 2 != 0)
    fail(ErrorCode::NonsurfaceGluing, "Euler characteristic " + std::to_string(chi) +
                                          " is not that of a closed oriented surface");
  T.genus = (2 - chi) / 2;
  if (E != 6 * T.genus - 6 + 3 * n || nT != 4 * T.genus - 4 + 2 * n)
    fail(ErrorCode::NonsurfaceGluing, "edge/triangle counts inconsistent with (g,n)");
  return T;
}

inline std::vector<CuspLink> cuspLinks(const IdealTriangulation& T) { return T.cusps; }

using IntMatrix = std::vector<std::vector<long long>>;

// Fock's skew-symmetric edge count: eps[a][b] sums +1 over corners where a
// immediately precedes b counterclockwise around the cusp, i.e. corners with
// outgoing side a and incoming side b.
inline IntMatrix epsilonMatrix(const IdealTriangulation& T) {
  int E = T.edgeCount();
  IntMatrix eps(E, std::vector<long long>(E, 0));
  for (TriId t = 0; t < T.triangleCount(); t++) {
    for (int v = 0; v < 3; v++) {
      EdgeId out = T.side(t, v);
      EdgeId in = T.side(t, v + 2);
      eps[out][in] += 1;
      eps[in][out] -= 1;
    }
  }
  return eps;
}

// Weight system: one rational per edge.
using WeightSystem = std::vector<Rat>;

inline WeightSystem weightsFromMap(const IdealTriangulation& T,
                                   const std::map<std::string, Rat>& byName) {
  WeightSystem w(T.edgeCount());
  for (EdgeId e = 0; e < T.edgeCount(); e++) {
    auto it = byName.find(T.edgeNames[e]);
    if (it == byName.end())
      fail(ErrorCode::MissingWeight, "no weight for edge '" + T.edgeNames[e] + "'");
    w[e] = it->second;
  }
  return w;
}

// (cusps x edges) matrix; entry = number of side-ends of the edge on the link.
inline IntMatrix balanceMatrix(const IdealTriangulation& T) {
  IntMatrix M(T.cuspCount(), std::vector<long long>(T.edgeCount(), 0));
  for (const auto& link : T.cusps)
    for (const auto& end : link.ends) M[link.cusp][end.edge] += 1;
  return M;
}

inline bool isBalanced(const IdealTriangulation& T, const WeightSystem& w) {
  if ((int)w.size() != T.edgeCount()) fail(ErrorCode::MissingWeight, "weight vector size mismatch");
  for (const auto& link : T.cusps) {
    Rat sum = 0;
    for (const auto& end : link.ends) sum += w[end.edge];
    if (sum != 0) return false;
  }
  return true;
}

namespace detail {

// Row-reduces a rational matrix in place; returns the pivot columns.
inline std::vector<int> rowReduce(std::vector<std::vector<Rat>>& M) {
  std::vector<int> pivots;
  size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; c++) {
    size_t p = r;
    while (p < rows && M[p][c] == 0) p++;
    if (p == rows) continue;
    std::swap(M[p], M[r]);
    Rat inv = 1 / M[r][c];
    for (size_t j = c; j < cols; j++) M[r][j] *= inv;
    for (size_t i = 0; i < rows; i++) {
      if (i == r || M[i][c] == 0) continue;
      Rat f = M[i][c];
      for (size_t j = c; j < cols; j++) M[i][j] -= f * M[r][j];
    }
    pivots.push_back((int)c);
    r++;
  }
  return pivots;
}

}  // namespace detail

namespace detail {

inline std::vector<std::vector<Rat>> toRational(const IntMatrix& A) {
  std::vector<std::vector<Rat>> M(A.size());
  for (size_t i = 0; i < A.size(); i++) {
    M[i].reserve(A[i].size());
    for (long long x : A[i]) M[i].emplace_back((long)x);
  }
  return M;
}

}  // namespace detail

inline int matrixRank(const IntMatrix& A) {
  auto M = detail::toRational(A);
  return (int)detail::rowReduce(M).size();
}

// Exact rational basis of the kernel of an integer matrix.
inline std::vector<std::vector<Rat>> kernelBasis(const IntMatrix& A) {
  size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  auto M = detail::toRational(A);
  auto pivots = detail::rowReduce(M);
  std::vector<bool> isPivot(cols, false);
  for (int c : pivots) isPivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (size_t freeCol = 0; freeCol < cols; freeCol++) {
    if (isPivot[freeCol]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[freeCol] = 1;
    for (size_t r = 0; r < pivots.size(); r++) v[pivots[r]] = -M[r][freeCol];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Basis of the balanced weight systems; Lemma-level expectation is dimension
// 6g-6+2n, asserted by the test suite.
inline std::vector<WeightSystem> balancedBasis(const IdealTriangulation& T) {
  return kernelBasis(balanceMatrix(T));
}

}  // namespace teich
