#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <random>

#include "fixtures.hpp"
#include "teich/realization.hpp"

using namespace teich;

// Independent arclength oracle for the distance between two horocycles,
// integrating the hyperbolic metric along the joining geodesic.  Both bases
// finite: the geodesic is the semicircle over the base interval, ds =
// d(theta)/sin(theta); the horocycle crossings are found by bisection.
namespace {

// unique transversal crossing of the horocycle at one endpoint: the geodesic
// is inside the horodisc near its own endpoint and outside near the other
double crossingAngle(double m, double r, double baseX, double diam, double thetaNear,
                     double thetaFar) {
  std::complex<double> center(baseX, diam / 2.0);
  auto signedDist = [&](double th) {
    std::complex<double> z(m + r * std::cos(th), r * std::sin(th));
    return std::abs(z - center) - diam / 2.0;
  };
  double lo = thetaNear + (thetaFar > thetaNear ? 1e-9 : -1e-9);
  double hi = thetaFar - (thetaFar > thetaNear ? 1e-9 : -1e-9);
  for (int it = 0; it < 200; it++) {
    double mid = (lo + hi) / 2.0;
    if (signedDist(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2.0;
}

double arclengthOracle(double p1, double d1, double p2, double d2) {
  double pL = std::min(p1, p2), pR = std::max(p1, p2);
  double dL = p1 < p2 ? d1 : d2, dR = p1 < p2 ? d2 : d1;
  double m = (pL + pR) / 2.0, r = (pR - pL) / 2.0;
  double thL = crossingAngle(m, r, pL, dL, M_PI, 0.0);  // left horocycle crossing
  double thR = crossingAngle(m, r, pR, dR, 0.0, M_PI);  // right horocycle crossing
  // integrate d(theta)/sin(theta) between the crossings with Simpson's rule
  double a = std::min(thL, thR), b = std::max(thL, thR);
  int n = 4000;
  double h = (b - a) / n, s = 0.0;
  for (int i = 0; i <= n; i++) {
    double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w / std::sin(a + i * h);
  }
  double len = s * h / 3.0;
  // walking left to right theta decreases: overlap when the crossings come
  // in the wrong order
  return thL > thR ? len : -len;
}

}  // namespace

TEST_CASE("horocycle distances") {
  SECTION("tangent horocycles along a vertical geodesic") {
    Horocycle top{BPoint::infinity(), 0.7};
    Horocycle bottom{BPoint::of(2.0), 0.7};
    CHECK(horocycleDistance(top, bottom) == Catch::Approx(0.0).margin(1e-15));
    CHECK(lambdaOfHorocycles(top, bottom) == Catch::Approx(1.0).margin(1e-15));
  }
  SECTION("closed forms against the arclength oracle") {
    auto g = fixtures::rng();
    std::uniform_real_distribution<double> base(-3.0, 3.0), diam(0.05, 1.2);
    int done = 0;
    while (done < 20) {
      double p1 = base(g), p2 = base(g), d1 = diam(g), d2 = diam(g);
      if (std::fabs(p1 - p2) < 0.4) continue;
      Horocycle h1{BPoint::of(p1), d1}, h2{BPoint::of(p2), d2};
      double closed = horocycleDistance(h1, h2);
      double oracle = arclengthOracle(p1, d1, p2, d2);
      CHECK(closed == Catch::Approx(oracle).margin(1e-8));
      done++;
    }
  }
  SECTION("overlapping horodiscs give negative distance") {
    Horocycle h1{BPoint::of(0.0), 1.0}, h2{BPoint::of(0.5), 1.0};
    CHECK(horocycleDistance(h1, h2) < 0.0);
    CHECK(horocycleDistance(h1, h2) ==
          Catch::Approx(arclengthOracle(0.0, 1.0, 0.5, 1.0)).margin(1e-8));
  }
}

TEST_CASE("development from shears") {
  auto g = fixtures::rng();
  SECTION("zero shears on the punctured torus give symmetric quadrilaterals") {
    auto T = fixtures::torus11();
    auto R = develop(T, std::vector<double>(3, 0.0), 3);
    for (size_t i = 0; i < R.treeEdges.size(); i++)
      CHECK(measuredShear(R, i) == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("measured shear equals input shear") {
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (const auto& T : fixtures::suiteTriangulations()) {
      std::vector<double> sigma(T.edgeCount());
      for (auto& s : sigma) s = d(g);
      auto R = develop(T, sigma, 3);
      for (size_t i = 0; i < R.treeEdges.size(); i++)
        CHECK(measuredShear(R, i) == Catch::Approx(sigma[R.treeEdges[i].edge]).margin(1e-10));
    }
  }
  SECTION("developed edges match between placement maps") {
    auto T = fixtures::torus11();
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> sigma{d(g), d(g), d(g)};
    auto R = develop(T, sigma, 5);
    for (const auto& te : R.treeEdges) {
      const auto& parent = R.placed[te.parent];
      const auto& child = R.placed[te.child];
      Slot there = T.partner({parent.tri, te.side});
      // the shared edge through the two composed placement maps
      BPoint tailP = parent.verts[te.side];
      BPoint headP = parent.verts[(te.side + 1) % 3];
      BPoint headC = child.verts[there.side];
      BPoint tailC = child.verts[(there.side + 1) % 3];
      CHECK(samePoint(tailP, tailC, 1e-10));
      CHECK(samePoint(headP, headC, 1e-10));
    }
  }
}

TEST_CASE("lambda round trip through the developing map") {
  auto g = fixtures::rng();
  for (const auto& T : {fixtures::torus11(), fixtures::sphere04()}) {
    for (int k = 0; k < 10; k++) {
      auto lam = fixtures::randomLambda(T, g);
      auto R = developFromLambda(T, lam, 2);
      for (EdgeId e = 0; e < T.edgeCount(); e++) {
        double measured = measureLambda(R, e);
        CHECK(measured == Catch::Approx(lam[e]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("cusp holonomy") {
  auto g = fixtures::rng();
  SECTION("balanced shears develop complete cusps") {
    for (const auto& T : {fixtures::torus11(), fixtures::sphere04()}) {
      auto basis = balancedBasis(T);
      std::uniform_real_distribution<double> d(-1.0, 1.0);
      for (int trial = 0; trial < 25; trial++) {
        std::vector<double> sigma(T.edgeCount(), 0.0);
        for (const auto& v : basis) {
          double coeff = d(g);
          for (EdgeId e = 0; e < T.edgeCount(); e++) sigma[e] += coeff * ratToDouble(v[e]);
        }
        for (int cusp = 0; cusp < T.cuspCount(); cusp++) {
          auto H = cuspHolonomy(T, sigma, cusp);
          CHECK(std::fabs(std::fabs(H.normalized().trace()) - 2.0) < 1e-9);
        }
      }
    }
  }
  SECTION("cusp shear sum s gives |trace| = 2 cosh(s/2) on the punctured torus") {
    auto T = fixtures::torus11();
    std::uniform_real_distribution<double> d(-0.8, 0.8);
    for (int trial = 0; trial < 25; trial++) {
      std::vector<double> sigma{d(g), d(g), d(g)};
      double s = 0.0;
      for (const auto& end : T.cusps[0].ends) s += sigma[end.edge];
      auto H = cuspHolonomy(T, sigma, 0);
      CHECK(std::fabs(H.normalized().trace()) ==
            Catch::Approx(2.0 * std::cosh(s / 2.0)).margin(1e-9));
      if (std::fabs(s) > 0.05) CHECK(classify(H) == IsometryType::Hyperbolic);
    }
  }
  SECTION("trace is independent of the starting corner") {
    auto T = fixtures::torus12();
    std::uniform_real_distribution<double> d(-0.9, 0.9);
    std::vector<double> sigma(T.edgeCount());
    for (auto& s : sigma) s = d(g);
    for (const auto& link : T.cusps) {
      double ref = std::fabs(cuspHolonomyFrom(T, sigma, link.corners[0]).normalized().trace());
      for (const auto& corner : link.corners) {
        double tr = std::fabs(cuspHolonomyFrom(T, sigma, corner).normalized().trace());
        CHECK(tr == Catch::Approx(ref).margin(1e-10));
      }
    }
  }
}

TEST_CASE("reduced lengths on the modular pillow") {
  auto T = fixtures::pillow03();
  std::vector<double> sigma(3, 0.0);  // the complete structure
  for (EdgeId e = 0; e < 3; e++)
    CHECK(reducedLength(T, sigma, e) == Catch::Approx(2.0 * std::log(2.0)).margin(1e-12));
}

TEST_CASE("undecorated realizations refuse lambda measurement") {
  auto T = fixtures::torus11();
  auto R = develop(T, std::vector<double>(3, 0.0), 2);
  CHECK_THROWS_MATCHES(measureLambda(R, 0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::UndecoratedCusp;
                       }));
}
