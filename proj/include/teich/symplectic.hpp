#pragma once

#include <string>
#include <vector>

#include "teich/coords.hpp"
#include "teich/surface.hpp"

namespace teich {

// Co-indexed cyclic weight sequences around one cusp.
struct CuspSequencePair {
  std::vector<Rat> a;  // partial sums are taken from this sequence
  std::vector<Rat> b;
};

// Elementary 2-form on balanced sequences:
//   omega = 1/2 * sum_j (A_j + A_{j-1}) b_j,  A_k = a_1 + ... + a_k.
// Cyclic-shift invariant and alternating; equals 1/2 sum (A_j b_j - B_j a_j).
inline Rat omegaCusp(const CuspSequencePair& seq) {
  if (seq.a.size() != seq.b.size())
    fail(ErrorCode::LengthMismatch, "sequences must be co-indexed");
  Rat A = 0, prev = 0, total = 0;
  Rat sumB = 0;
  for (size_t j = 0; j < seq.a.size(); j++) {
    prev = A;
    A += seq.a[j];
    total += (A + prev) * seq.b[j];
    sumB += seq.b[j];
  }
  if (A != 0 || sumB != 0) fail(ErrorCode::Unbalanced, "sequences must sum to zero");
  return total / 2;
}

namespace detail {

inline CuspSequencePair linkSequences(const CuspLink& link, const WeightSystem& wa,
                                      const WeightSystem& wb) {
  CuspSequencePair seq;
  seq.a.reserve(link.size());
  seq.b.reserve(link.size());
  for (const auto& end : link.ends) {
    seq.a.push_back(wa[end.edge]);
    seq.b.push_back(wb[end.edge]);
  }
  return seq;
}

}  // namespace detail

// Sum of the elementary form over all cusp links (side-end weights are the
// edge weights).
inline Rat omegaTotal(const IdealTriangulation& T, const WeightSystem& wa,
                      const WeightSystem& wb) {
  if (!isBalanced(T, wa) || !isBalanced(T, wb))
    fail(ErrorCode::Unbalanced, "omega requires balanced weight systems");
  Rat total = 0;
  for (const auto& link : T.cusps) total += omegaCusp(detail::linkSequences(link, wa, wb));
  return total;
}

// {L(A), L(B)} = 2 * sum_cusps omega.
inline Rat poissonBracket(const IdealTriangulation& T, const WeightSystem& wa,
                          const WeightSystem& wb) {
  return 2 * omegaTotal(T, wa, wb);
}

// omega_WP(sigma_A, sigma_B) = 1/2 * sum_cusps omega.
inline Rat wpShearPairing(const IdealTriangulation& T, const WeightSystem& wa,
                          const WeightSystem& wb) {
  return omegaTotal(T, wa, wb) / 2;
}

// The balanced weight system W_e expressing 2*sigma_e as a length: +1 per
// occurrence as a tail-left/head-right quadrilateral side, -1 per
// head-left/tail-right occurrence, accumulated when sides coincide.
inline WeightSystem shearWeightSystem(const IdealTriangulation& T, EdgeId e) {
  auto q = shearQuad(T, e);
  WeightSystem w(T.edgeCount(), Rat(0));
  w[q.aTail] += 1;
  w[q.cHead] += 1;
  w[q.bHead] -= 1;
  w[q.dTail] -= 1;
  return w;
}

// Antisymmetric integer matrix A with 2-form  1/2 * sum_{e,f} A_ef dloglam_e ^ dloglam_f.
using FormMatrix = IntMatrix;

namespace detail {

inline void addWedge(FormMatrix& M, EdgeId a, EdgeId b, long long c = 1) {
  M[a][b] += c;
  M[b][a] -= c;
}

using IntVec = std::vector<long long>;

// d log h of the corner at vertex v: unit_opp - unit_in - unit_out.
inline IntVec hLog(const IdealTriangulation& T, const Corner& c) {
  IntVec v(T.edgeCount(), 0);
  v[T.side(c.tri, c.vert + 1)] += 1;
  v[T.side(c.tri, c.vert)] -= 1;
  v[T.side(c.tri, c.vert + 2)] -= 1;
  return v;
}

inline void addWedgeVec(FormMatrix& M, const IntVec& u, const IntVec& v) {
  int E = (int)u.size();
  for (int a = 0; a < E; a++) {
    if (u[a] == 0) continue;
    for (int b = 0; b < E; b++) {
      if (v[b] == 0) continue;
      M[a][b] += u[a] * v[b];
      M[b][a] -= u[a] * v[b];
    }
  }
}

inline FormMatrix zeroForm(const IdealTriangulation& T) {
  return FormMatrix(T.edgeCount(), std::vector<long long>(T.edgeCount(), 0));
}

inline void divideExact(FormMatrix& M, long long d, const char* what) {
  for (auto& row : M)
    for (auto& x : row) {
      if (x % d != 0) fail(ErrorCode::LengthMismatch, std::string(what) + ": entry not divisible");
      x /= d;
    }
}

}  // namespace detail

// WP form from lambda-lengths: per triangle, wedges of d log lambda over the
// sides in clockwise order.
inline FormMatrix wpFormLambda(const IdealTriangulation& T) {
  auto M = detail::zeroForm(T);
  for (TriId t = 0; t < T.triangleCount(); t++) {
    detail::addWedge(M, T.side(t, 0), T.side(t, 2));
    detail::addWedge(M, T.side(t, 2), T.side(t, 1));
    detail::addWedge(M, T.side(t, 1), T.side(t, 0));
  }
  return M;
}

// Same form from h-lengths per triangle (vertex sectors in clockwise order);
// the raw sum is four times the lambda form and is normalized here.
inline FormMatrix wpFormHTriangles(const IdealTriangulation& T) {
  auto M = detail::zeroForm(T);
  for (TriId t = 0; t < T.triangleCount(); t++) {
    auto h0 = detail::hLog(T, {t, 2});
    auto h1 = detail::hLog(T, {t, 1});
    auto h2 = detail::hLog(T, {t, 0});
    detail::addWedgeVec(M, h0, h1);
    detail::addWedgeVec(M, h1, h2);
    detail::addWedgeVec(M, h2, h0);
  }
  detail::divideExact(M, 4, "h-triangle form");
  return M;
}

// Same form from consecutive h-wedges around each cusp (counterclockwise)
// with the same factor-4 normalization.
inline FormMatrix wpFormHCusps(const IdealTriangulation& T) {
  auto M = detail::zeroForm(T);
  for (const auto& link : T.cusps) {
    size_t p = link.corners.size();
    for (size_t j = 0; j < p; j++) {
      auto hj = detail::hLog(T, link.corners[j]);
      auto hn = detail::hLog(T, link.corners[(j + 1) % p]);
      detail::addWedgeVec(M, hj, hn);
    }
  }
  detail::divideExact(M, 4, "h-cusp form");
  return M;
}

// Same form as 1/2 sum_e d log lambda_e ^ d sigma_e.
inline FormMatrix wpFormLambdaSigma(const IdealTriangulation& T) {
  auto M = detail::zeroForm(T);
  for (EdgeId e = 0; e < T.edgeCount(); e++) {
    WeightSystem w = shearWeightSystem(T, e);
    for (EdgeId f = 0; f < T.edgeCount(); f++) {
      if (w[f] == 0) continue;
      long long c = (long long)w[f].get_num().get_si();
      M[e][f] += c;
      M[f][e] -= c;
    }
  }
  detail::divideExact(M, 2, "lambda-sigma form");
  return M;
}

struct FockCheckReport {
  bool pass = true;
  IntMatrix omega;    // omega_total(W_e, W_f)
  IntMatrix twoEps;   // 2 * eps
  std::string firstFailure;
};

// Verifies omega_total(W_e, W_f) = 2 eps_{ef} for every edge pair, exactly.
inline FockCheckReport fockCheck(const IdealTriangulation& T) {
  FockCheckReport rep;
  int E = T.edgeCount();
  auto eps = epsilonMatrix(T);
  rep.omega.assign(E, std::vector<long long>(E, 0));
  rep.twoEps.assign(E, std::vector<long long>(E, 0));
  std::vector<WeightSystem> W(E);
  for (EdgeId e = 0; e < E; e++) W[e] = shearWeightSystem(T, e);
  for (EdgeId e = 0; e < E; e++) {
    for (EdgeId f = 0; f < E; f++) {
      Rat om = omegaTotal(T, W[e], W[f]);
      if (om.get_den() != 1)
        fail(ErrorCode::LengthMismatch, "omega(W_e, W_f) must be an integer");
      rep.omega[e][f] = (long long)om.get_num().get_si();
      rep.twoEps[e][f] = 2 * eps[e][f];
      if (rep.omega[e][f] != rep.twoEps[e][f] && rep.pass) {
        rep.pass = false;
        rep.firstFailure = "edges ('" + T.edgeNames[e] + "','" + T.edgeNames[f] + "'): omega=" +
                           std::to_string(rep.omega[e][f]) + " vs 2eps=" +
                           std::to_string(rep.twoEps[e][f]);
      }
    }
  }
  return rep;
}

struct LprReport {
  bool pass = true;
  Rat lhs;  // L(B)(x)
  Rat rhs;  // sum_cusps omega(sigma(x), b)
};

// Corollary-level identity: L(B) evaluated at a formal-log point equals the
// cusp sum of the elementary form with first-role weights sigma_e(x).
inline LprReport lprCheck(const IdealTriangulation& T, const LogLambda& x,
                          const WeightSystem& wb) {
  if (!isBalanced(T, wb)) fail(ErrorCode::Unbalanced, "lpr requires a balanced weight system");
  LprReport rep;
  rep.lhs = balancedLengthLog(T, x, wb);
  std::vector<Rat> sigma = shearCoordsLog(T, x);
  rep.rhs = 0;
  for (const auto& link : T.cusps) {
    CuspSequencePair seq;
    for (const auto& end : link.ends) {
      seq.a.push_back(sigma[end.edge]);
      seq.b.push_back(wb[end.edge]);
    }
    rep.rhs += omegaCusp(seq);
  }
  rep.pass = (rep.lhs == rep.rhs);
  return rep;
}

}  // namespace teich
