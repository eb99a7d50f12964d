#pragma once

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "teich/coords.hpp"
#include "teich/surface.hpp"

namespace fixtures {

using namespace teich;

// once-punctured torus: square with a diagonal
inline IdealTriangulation torus11() {
  return validate({{"alpha", "beta", "gamma"}, {"alpha", "beta", "gamma"}});
}

// thrice-punctured sphere: the Gamma(2) pillow
inline IdealTriangulation pillow03() {
  return validate({{"alpha", "beta", "gamma"}, {"alpha", "gamma", "beta"}});
}

// four-punctured sphere: boundary of the tetrahedron
inline IdealTriangulation sphere04() {
  return validate({{"e12", "e23", "e13"},
                   {"e13", "e34", "e14"},
                   {"e14", "e24", "e12"},
                   {"e24", "e34", "e23"}});
}

// twice-punctured torus: two vertical strips of the square torus
inline IdealTriangulation torus12() {
  return validate({{"e1", "vp", "d1"},
                   {"d1", "e1", "v"},
                   {"e2", "v", "d2"},
                   {"d2", "e2", "vp"}});
}

// genus-2 surface with one puncture: fan triangulation of the octagon
inline IdealTriangulation genus21() {
  return validate({{"a", "b", "p"},
                   {"p", "a", "q"},
                   {"q", "b", "r"},
                   {"r", "c", "s"},
                   {"s", "d", "t"},
                   {"t", "c", "d"}});
}

inline std::vector<IdealTriangulation> suiteTriangulations() {
  return {torus11(), pillow03(), sphere04(), torus12(), genus21()};
}

inline unsigned long long testSeed() {
  if (const char* env = std::getenv("TEICH_SEED")) return std::strtoull(env, nullptr, 10);
  return 271828182845ULL;
}

inline std::mt19937_64 rng() { return std::mt19937_64(testSeed()); }

inline Rat randomRational(std::mt19937_64& g, int numRange = 20, int denRange = 12) {
  std::uniform_int_distribution<int> num(-numRange, numRange);
  std::uniform_int_distribution<int> den(1, denRange);
  Rat q(num(g), den(g));
  q.canonicalize();
  return q;
}

inline Rat randomPositiveRational(std::mt19937_64& g, int numRange = 20, int denRange = 12) {
  std::uniform_int_distribution<int> num(1, numRange);
  std::uniform_int_distribution<int> den(1, denRange);
  Rat q(num(g), den(g));
  q.canonicalize();
  return q;
}

inline WeightSystem randomBalanced(const IdealTriangulation& T, std::mt19937_64& g) {
  auto basis = balancedBasis(T);
  WeightSystem w(T.edgeCount(), Rat(0));
  for (const auto& v : basis) {
    Rat coeff = randomRational(g, 9, 7);
    for (size_t e = 0; e < v.size(); e++) w[e] += coeff * v[e];
  }
  return w;
}

inline LambdaVec<Rat> randomLambdaRat(const IdealTriangulation& T, std::mt19937_64& g) {
  LambdaVec<Rat> lam(T.edgeCount());
  for (auto& x : lam) x = randomPositiveRational(g);
  return lam;
}

inline LambdaVec<double> randomLambda(const IdealTriangulation& T, std::mt19937_64& g) {
  std::uniform_real_distribution<double> d(0.2, 5.0);
  LambdaVec<double> lam(T.edgeCount());
  for (auto& x : lam) x = d(g);
  return lam;
}

inline LogLambda randomLogLambda(const IdealTriangulation& T, std::mt19937_64& g) {
  LogLambda x(T.edgeCount());
  for (auto& v : x) v = randomRational(g, 9, 7);
  return x;
}

// Random legal flip sequence; returns the resulting triangulation (and
// lambda when given).  Surfaces with no legal flip come back unchanged.
inline IdealTriangulation randomFlipVariant(const IdealTriangulation& T0, std::mt19937_64& g,
                                            int flips = 6) {
  IdealTriangulation T = T0;
  LambdaVec<Rat> lam(T.edgeCount(), Rat(1));
  for (int k = 0; k < flips; k++) {
    std::vector<EdgeId> legal;
    for (EdgeId e = 0; e < T.edgeCount(); e++)
      if (flipIsLegal(T, e)) legal.push_back(e);
    if (legal.empty()) break;
    std::uniform_int_distribution<size_t> pick(0, legal.size() - 1);
    auto [T2, lam2] = ptolemyFlip(T, lam, legal[pick(g)]);
    T = std::move(T2);
    lam = std::move(lam2);
  }
  return T;
}

}  // namespace fixtures
