#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "teich/hyperbolic.hpp"

namespace teich {

enum class TessKind { TwoLine, ThreeTwoThreeLine };

// Tessellation line as a primitive, sign-normalized integer triple.
struct TessLine {
  long long a = 0, b = 1, c = 0;

  static TessLine of(long long a, long long b, long long c) {
    long long g = std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c));
    if (g == 0) fail(ErrorCode::BadInput, "zero triple");
    a /= g; b /= g; c /= g;
    long long lead = a != 0 ? a : (b != 0 ? b : c);
    if (lead < 0) { a = -a; b = -b; c = -c; }
    return {a, b, c};
  }

  long long disc() const { return b * b - 4 * a * c; }
  TessKind kind() const {
    long long D = disc();
    if (D == 1) return TessKind::TwoLine;
    if (D == 4) return TessKind::ThreeTwoThreeLine;
    fail(ErrorCode::BadInput, "line outside the tessellation orbits");
  }
  // weight of the tessellation weight system: +1 for 323-lines, -1 for 2-lines
  int weight() const { return kind() == TessKind::ThreeTwoThreeLine ? +1 : -1; }

  GeodesicLine geodesic() const { return GeodesicLine::fromTriple(a, b, c); }

  bool operator<(const TessLine& o) const {
    return std::array<long long, 3>{a, b, c} < std::array<long long, 3>{o.a, o.b, o.c};
  }
  bool operator==(const TessLine& o) const { return a == o.a && b == o.b && c == o.c; }
};

// Polarized discriminant pairing; cosh(dist) = |B| / sqrt(D1 D2) for
// ultraparallel pairs, cos(angle) likewise for intersecting ones.
inline long long pairingB(const TessLine& x, const TessLine& y) {
  return x.b * y.b - 2 * (x.a * y.c + y.a * x.c);
}

enum class TessRelation { Equal, Asymptotic, Intersecting, Ultraparallel };

struct TessClassified {
  TessRelation rel;
  double datum = 0.0;  // cos(theta) or cosh(dist)
};

inline TessClassified classifyPair(const TessLine& x, const TessLine& y) {
  if (x == y) return {TessRelation::Equal, 0.0};
  long long B = pairingB(x, y);
  __int128 lhs = (__int128)B * B;
  __int128 rhs = (__int128)x.disc() * y.disc();
  double datum = std::fabs((double)B) / std::sqrt((double)x.disc() * (double)y.disc());
  if (lhs == rhs) return {TessRelation::Asymptotic, 1.0};
  if (lhs < rhs) return {TessRelation::Intersecting, datum};
  return {TessRelation::Ultraparallel, datum};
}

// Integer Moebius action on triples: the coefficients transform as the
// binary quadratic form Q -> Q o g^{-1}, g = (p q; r s).
inline TessLine actLine(long long p, long long q, long long r, long long s, const TessLine& L) {
  long long a2 = L.a * s * s - L.b * s * r + L.c * r * r;
  long long b2 = -2 * L.a * s * q + L.b * (s * p + q * r) - 2 * L.c * r * p;
  long long c2 = L.a * q * q - L.b * q * p + L.c * p * p;
  return TessLine::of(a2, b2, c2);
}

// Breadth-first orbit enumeration under T = (1,1;0,1) and S = (0,-1;1,0),
// deduplicating by normalized triple and keeping lines whose distance datum
// to the seed is at most `bound` (ultraparallels within the bound plus the
// finitely many intersecting lines; the asymptotic families are infinite and
// are excluded from every pairing sum anyway).  Word length caps the search;
// stability of the kept count under increasing word length is the
// saturation check.
inline std::vector<TessLine> enumerateLines(const TessLine& seed, double bound, int maxWordLen) {
  if (std::gcd(std::gcd(std::llabs(seed.a), std::llabs(seed.b)), std::llabs(seed.c)) != 1)
    fail(ErrorCode::SeedNotPrimitive, "seed triple must be primitive");
  std::set<TessLine> seen{seed};
  std::vector<TessLine> frontier{seed};
  std::vector<TessLine> kept{seed};
  for (int len = 0; len < maxWordLen && !frontier.empty(); len++) {
    std::vector<TessLine> next;
    for (const auto& L : frontier) {
      const TessLine images[3] = {
          actLine(1, 1, 0, 1, L),    // T
          actLine(1, -1, 0, 1, L),   // T^{-1}
          actLine(0, -1, 1, 0, L),   // S
      };
      for (const auto& M : images) {
        if (!seen.insert(M).second) continue;
        next.push_back(M);
        auto cls = classifyPair(seed, M);
        if (cls.rel == TessRelation::Ultraparallel && cls.datum <= bound) kept.push_back(M);
        if (cls.rel == TessRelation::Intersecting) kept.push_back(M);
      }
    }
    frontier = std::move(next);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

namespace detail {

inline std::vector<long long> divisorsOf(long long n) {
  std::vector<long long> ds;
  for (long long i = 1; i * i <= n; i++) {
    if (n % i) continue;
    ds.push_back(i);
    if (i != n / i) ds.push_back(n / i);
  }
  return ds;
}

}  // namespace detail

// All tessellation lines of discriminant `disc` at pairing value |B| = bAbs
// from the reference 2-line (0,1,0).  B = b, so these are the triples with
// fixed |b|; complete per shell by divisor enumeration of ac = (b^2-disc)/4.
inline std::vector<TessLine> shellVsTwoRef(long long disc, long long bAbs) {
  std::vector<TessLine> out;
  if (bAbs < 0) return out;
  long long b2 = bAbs * bAbs;
  if ((b2 - disc) % 4 != 0) return out;
  long long n = (b2 - disc) / 4;  // = a*c
  if (n == 0) return out;         // asymptotic vertical families, excluded by classification
  long long an = std::llabs(n);
  for (long long a : detail::divisorsOf(an)) {
    long long cMag = an / a;
    long long c = n > 0 ? cMag : -cMag;
    int bSigns = bAbs == 0 ? 1 : 2;
    for (int sgn = 0; sgn < bSigns; sgn++) {
      long long b = sgn == 0 ? bAbs : -bAbs;
      TessLine L{a, b, c};
      if (std::gcd(std::gcd(a, std::llabs(b)), std::llabs(c)) != 1) continue;
      if (L.disc() != disc) continue;
      out.push_back(L);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All tessellation lines of discriminant `disc` with |a - c| = m: the
// pairing with the reference 323-line (1,0,-1) is B = 2(a-c).  Complete per
// shell via factorizations of (a+c)^2 - b^2 = m^2 - disc.
inline std::vector<TessLine> shellVsThreeRef(long long disc, long long m) {
  std::set<TessLine> out;
  long long M = m * m - disc;
  if (M == 0) return {};  // asymptotic families
  long long aM = std::llabs(M);
  for (long long e : detail::divisorsOf(aM)) {
    long long f0 = M / e;
    for (auto [E, F] : {std::pair<long long, long long>{e, f0},
                        std::pair<long long, long long>{-e, -f0}}) {
      if ((E + F) % 2 != 0) continue;
      long long k = (E + F) / 2;   // a + c
      long long b = (F - E) / 2;
      for (long long mm : {m, -m}) {
        if (mm == 0 && m != 0) continue;
        if ((k + mm) % 2 != 0) continue;
        long long a = (k + mm) / 2, c = (k - mm) / 2;
        if (a == 0 && b == 0 && c == 0) continue;
        long long g = std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c));
        if (g == 0 || g > 1) continue;
        TessLine L = TessLine::of(a, b, c);
        if (L.disc() != disc) continue;
        if (std::llabs(L.a - L.c) != m) continue;
        out.insert(L);
      }
    }
  }
  return {out.begin(), out.end()};
}

struct ShellRow {
  double coshDist = 0.0;
  long long countTwo = 0;    // 2-lines on the shell
  long long countThree = 0;  // 323-lines on the shell
  double contribution = 0.0; // weighted w * R added by the shell
};

struct UltraparallelSum {
  double value = 0.0;
  double tailEstimate = 0.0;
  std::vector<ShellRow> shells;
};

// Weighted sum over an explicit enumerated set (spec operation): terms
// w(eta) R(cosh d(ref, eta)) for the ultraparallels with cosh d <= cutoff.
inline UltraparallelSum weightedUltraparallelSum(const TessLine& ref,
                                                 const std::vector<TessLine>& lines,
                                                 double cutoff) {
  std::map<double, ShellRow> shells;
  for (const auto& L : lines) {
    auto cls = classifyPair(ref, L);
    if (cls.rel != TessRelation::Ultraparallel || cls.datum > cutoff) continue;
    auto& row = shells[cls.datum];
    row.coshDist = cls.datum;
    (L.kind() == TessKind::TwoLine ? row.countTwo : row.countThree) += 1;
  }
  if (shells.empty()) fail(ErrorCode::CutoffTooSmall, "no ultraparallel terms below the cutoff");
  UltraparallelSum sum;
  KahanSum acc;
  for (auto& [d, row] : shells) {
    row.contribution = pairingR(d) * (double)(row.countThree - row.countTwo);
    acc.add(row.contribution);
    sum.shells.push_back(row);
  }
  sum.value = acc.sum;
  double lastShellCount = (double)(sum.shells.back().countTwo + sum.shells.back().countThree);
  sum.tailEstimate = (2.0 / 3.0) * lastShellCount / cutoff;
  return sum;
}

namespace detail {

// Sums w(eta) R(cosh d) over all tessellation lines ultraparallel to the
// reference, using the exact shell enumerations; refTwo picks (0,1,0) as the
// reference, otherwise (1,0,-1).  Shells are accumulated in increasing cosh
// order; `checkpoints` must be increasing and each receives the partial sum.
inline std::vector<double> ultraparallelLadder(bool refTwo, const std::vector<double>& checkpoints,
                                               std::vector<ShellRow>* rows = nullptr) {
  double cutoff = checkpoints.back();
  struct Shell {
    double d;
    long long signedCount;  // (+323s) - (2-lines), weighted counts
    long long total;
  };
  std::map<double, std::pair<long long, long long>> shells;  // d -> (two, three)
  if (refTwo) {
    for (long long u = 3; (double)u <= cutoff; u += 2)
      shells[(double)u].first += (long long)shellVsTwoRef(1, u).size();
    for (long long u = 2; (double)u <= cutoff; u += 1)
      shells[(double)u].second += (long long)shellVsTwoRef(4, 2 * u).size();
  } else {
    for (long long m = 2; (double)m <= cutoff; m += 1)
      shells[(double)m].first += (long long)shellVsThreeRef(1, m).size();
    for (long long m = 3; (double)m / 2.0 <= cutoff; m += 1)
      shells[(double)m / 2.0].second += (long long)shellVsThreeRef(4, m).size();
  }
  std::vector<double> out;
  KahanSum acc;
  size_t ci = 0;
  for (auto& [d, counts] : shells) {
    while (ci < checkpoints.size() && d > checkpoints[ci]) {
      out.push_back(acc.sum);
      ci++;
    }
    double contribution = pairingR(d) * (double)(counts.second - counts.first);
    acc.add(contribution);
    if (rows) rows->push_back({d, counts.first, counts.second, contribution});
  }
  while (ci < checkpoints.size()) {
    out.push_back(acc.sum);
    ci++;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Gamma(2) quotient data.  The six ideal geodesics of the tri-cornered
// pillow: 323-lines a, b, c and 2-lines alpha, beta, gamma.  Gamma(2)-orbits
// of tessellation lines are classified by the triple mod 2.
// ---------------------------------------------------------------------------

struct Gamma2Class {
  const char* name;
  long long disc;
  std::array<int, 3> signature;  // triple mod 2
  TessLine lift;                 // canonical representative
};

inline const std::array<Gamma2Class, 6>& gamma2Classes() {
  static const std::array<Gamma2Class, 6> classes = {{
      {"a", 4, {1, 0, 1}, TessLine::of(1, 0, -1)},
      {"b", 4, {0, 0, 1}, TessLine::of(0, 2, -1)},
      {"c", 4, {1, 0, 0}, TessLine::of(1, 2, 0)},
      {"alpha", 1, {0, 1, 0}, TessLine::of(0, 1, 0)},
      {"beta", 1, {0, 1, 1}, TessLine::of(0, 1, 1)},
      {"gamma", 1, {1, 1, 0}, TessLine::of(1, 1, 0)},
  }};
  return classes;
}

inline int gamma2ClassOf(const TessLine& L) {
  std::array<int, 3> sig{(int)(((L.a % 2) + 2) % 2), (int)(((L.b % 2) + 2) % 2),
                         (int)(((L.c % 2) + 2) % 2)};
  for (int i = 0; i < 6; i++) {
    const auto& cls = gamma2Classes()[i];
    if (cls.disc == L.disc() && cls.signature == sig) return i;
  }
  fail(ErrorCode::UnsupportedGroup, "line outside the Gamma(2) tessellation classes");
}

inline int gamma2ClassByName(const std::string& name) {
  for (int i = 0; i < 6; i++)
    if (name == gamma2Classes()[i].name) return i;
  fail(ErrorCode::BadInput, "unknown Gamma(2) geodesic '" + name + "'");
}

// Cusp incidence: each cusp is crossed, at quarter spacing on its horocycle,
// by one 323-line (twice) and the two 2-lines ending there.
struct Gamma2CuspSegment {
  int cls;
  double position;  // fraction of the horocycle
};

inline const std::array<std::array<Gamma2CuspSegment, 4>, 3>& gamma2CuspTables() {
  // cusps: 0 = infinity, 1 = zero, 2 = one  (mod-2 classes (1:0), (0:1), (1:1))
  static const std::array<std::array<Gamma2CuspSegment, 4>, 3> tables = {{
      {{{3, 0.0}, {1, 0.25}, {4, 0.5}, {1, 0.75}}},
      {{{3, 0.0}, {2, 0.25}, {5, 0.5}, {2, 0.75}}},
      {{{4, 0.0}, {0, 0.25}, {5, 0.5}, {0, 0.75}}},
  }};
  return tables;
}

// Reduced length of a tessellation line on the Gamma(2) quotient: the
// length-one horocycle at cusp p/q has diameter 1/(2 q^2) (height 2 at
// infinity), giving log(4 (p1 q2 - p2 q1)^2).
inline double gamma2ReducedLength(const TessLine& L) {
  long long D = L.disc();
  long long root = D == 1 ? 1 : 2;
  if (D != 1 && D != 4) fail(ErrorCode::UnsupportedGroup, "line outside the tessellation");
  long long p1, q1, p2, q2;
  if (L.a == 0) {
    p1 = 1; q1 = 0;                       // infinity
    p2 = -L.c; q2 = L.b;
  } else {
    p1 = -L.b + root; q1 = 2 * L.a;
    p2 = -L.b - root; q2 = 2 * L.a;
  }
  long long g1 = std::gcd(std::llabs(p1), std::llabs(q1));
  long long g2 = std::gcd(std::llabs(p2), std::llabs(q2));
  p1 /= g1; q1 /= g1; p2 /= g2; q2 /= g2;
  long long det = p1 * q2 - p2 * q1;
  return std::log(4.0 * (double)(det * det));
}

namespace detail {

// PSL(2,Z)/Gamma(2) coset representatives and their permutation action on
// the six line classes.
struct Gamma2Symmetry {
  std::array<std::array<long long, 4>, 6> reps;
  std::array<std::array<int, 6>, 6> classImage;  // classImage[rep][cls]
};

inline const Gamma2Symmetry& gamma2Symmetry() {
  static const Gamma2Symmetry sym = [] {
    Gamma2Symmetry s;
    auto mul = [](std::array<long long, 4> x, std::array<long long, 4> y) {
      return std::array<long long, 4>{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                      x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
    };
    std::array<long long, 4> T{1, 1, 0, 1}, S{0, -1, 1, 0};
    s.reps[0] = {1, 0, 0, 1};
    s.reps[1] = T;
    s.reps[2] = S;
    s.reps[3] = mul(T, S);
    s.reps[4] = mul(S, T);
    s.reps[5] = mul(T, mul(S, T));
    for (int r = 0; r < 6; r++)
      for (int c = 0; c < 6; c++)
        s.classImage[r][c] = gamma2ClassOf(actLine(s.reps[r][0], s.reps[r][1], s.reps[r][2],
                                                   s.reps[r][3], gamma2Classes()[c].lift));
    return s;
  }();
  return sym;
}

// Maps a class pair (j,k) by the symmetry so that j lands on "alpha" (3) or
// "a" (0), whose canonical lifts have exact shell enumerations.
inline std::pair<int, int> canonicalizePair(int j, int k) {
  const auto& sym = gamma2Symmetry();
  for (int r = 0; r < 6; r++) {
    int jj = sym.classImage[r][j];
    if (jj == 0 || jj == 3) return {jj, sym.classImage[r][k]};
  }
  fail(ErrorCode::UnsupportedGroup, "no symmetry representative found");
}

// Per-class shell data for the two canonical reference lifts.
struct ClassifiedShells {
  // intersections: cos(theta) and per-class counts
  std::vector<std::pair<double, std::array<long long, 6>>> crossings;
  // ultraparallel shells in increasing cosh order with per-class counts
  std::vector<std::pair<double, std::array<long long, 6>>> shells;
};

inline ClassifiedShells classifyShells(bool refTwo, double cutoff) {
  ClassifiedShells out;
  auto addLines = [&](double datum, const std::vector<TessLine>& lines, bool crossing) {
    if (lines.empty()) return;
    std::array<long long, 6> counts{};
    for (const auto& L : lines) counts[gamma2ClassOf(L)]++;
    if (crossing)
      out.crossings.push_back({datum, counts});
    else
      out.shells.push_back({datum, counts});
  };
  if (refTwo) {
    addLines(0.0, shellVsTwoRef(4, 0), true);  // the orthogonal partner
    std::map<double, std::array<long long, 6>> shells;
    for (long long u = 3; (double)u <= cutoff; u += 2)
      for (const auto& L : shellVsTwoRef(1, u)) shells[(double)u][gamma2ClassOf(L)]++;
    for (long long u = 2; (double)u <= cutoff; u += 1)
      for (const auto& L : shellVsTwoRef(4, 2 * u)) shells[(double)u][gamma2ClassOf(L)]++;
    for (auto& [d, counts] : shells) out.shells.push_back({d, counts});
  } else {
    addLines(0.0, shellVsThreeRef(1, 0), true);   // orthogonal 2-line
    addLines(0.5, shellVsThreeRef(4, 1), true);   // pi/3 and 2pi/3 crossings
    std::map<double, std::array<long long, 6>> shells;
    for (long long m = 2; (double)m <= cutoff; m += 1)
      for (const auto& L : shellVsThreeRef(1, m)) shells[(double)m][gamma2ClassOf(L)]++;
    for (long long m = 3; (double)m / 2.0 <= cutoff; m += 1)
      for (const auto& L : shellVsThreeRef(4, m)) shells[(double)m / 2.0][gamma2ClassOf(L)]++;
    for (auto& [d, counts] : shells) out.shells.push_back({d, counts});
  }
  return out;
}

}  // namespace detail

struct PairingTerm {
  std::string type;  // "reduced", "lambda", "intersection", "ultraparallel"
  std::string first, second;
  double datum = 0.0;       // fraction, cos(theta) or cosh cutoff
  double weight = 0.0;      // weight product multiplier
  double value = 0.0;       // contribution to the pairing
};

struct PairingResult {
  double value = 0.0;       // the assembled pairing estimate at the cutoff
  double tailEstimate = 0.0;
  std::vector<PairingTerm> terms;
};

// Regularized constant attached to a pair of horocycle crossings a fraction
// f apart: log(1/(2 pi)) for a segment paired with itself, log(1/(2 sin pi f))
// for distinct crossings.
inline double cuspPairConstant(double fraction) {
  double f = fraction - std::floor(fraction);
  if (f == 0.0) return std::log(1.0 / (2.0 * M_PI));
  return std::log(1.0 / (2.0 * std::sin(M_PI * f)));
}

// WP gradient pairing of balanced weight systems on the six Gamma(2)
// geodesics, assembled from reduced lengths, cusp crossing constants,
// intersection terms and the ultraparallel sums up to the cutoff.
inline PairingResult shprPairing(const std::array<Rat, 6>& wa, const std::array<Rat, 6>& wb,
                                 double cutoff) {
  // balance: at each cusp the 323-line crosses twice, the two 2-lines once
  for (const auto& table : gamma2CuspTables()) {
    Rat sa = 0, sb = 0;
    for (const auto& seg : table) {
      sa += wa[seg.cls];
      sb += wb[seg.cls];
    }
    if (sa != 0 || sb != 0) fail(ErrorCode::Unbalanced, "weights must balance at every cusp");
  }
  if (cutoff < 2.0) fail(ErrorCode::CutoffTooSmall, "cutoff below the smallest shells");

  const double twoOverPi = 2.0 / M_PI;
  PairingResult res;
  KahanSum acc;

  // reduced-length diagonal terms
  for (int j = 0; j < 6; j++) {
    double w = ratToDouble(wa[j] * wb[j]);
    if (w == 0.0) continue;
    double red = gamma2ReducedLength(gamma2Classes()[j].lift);
    double v = w * twoOverPi * (red + 2.0);
    acc.add(v);
    res.terms.push_back({"reduced", gamma2Classes()[j].name, gamma2Classes()[j].name, red, w, v});
  }

  // cusp crossing constants over ordered segment pairs
  for (const auto& table : gamma2CuspTables()) {
    for (const auto& s1 : table) {
      for (const auto& s2 : table) {
        double w = ratToDouble(wa[s1.cls] * wb[s2.cls]);
        if (w == 0.0) continue;
        double f = s2.position - s1.position;
        double v = w * twoOverPi * cuspPairConstant(f);
        acc.add(v);
        res.terms.push_back({"lambda", gamma2Classes()[s1.cls].name,
                             gamma2Classes()[s2.cls].name, f - std::floor(f), w, v});
      }
    }
  }

  // connecting-class sums, reduced to the canonical reference lifts by the
  // PSL(2,Z)/Gamma(2) symmetry
  auto shellDataTwo = detail::classifyShells(true, cutoff);
  auto shellDataThree = detail::classifyShells(false, cutoff);

  double tail = 0.0;
  for (int j = 0; j < 6; j++) {
    for (int k = 0; k < 6; k++) {
      double w = ratToDouble(wa[j] * wb[k]);
      if (w == 0.0) continue;
      auto [jj, kk] = detail::canonicalizePair(j, k);
      const auto& data = (jj == 3) ? shellDataTwo : shellDataThree;
      for (const auto& [cosTheta, counts] : data.crossings) {
        if (counts[kk] == 0) continue;
        double v = w * (double)counts[kk] * twoOverPi * pairingR(cosTheta);
        acc.add(v);
        res.terms.push_back({"intersection", gamma2Classes()[j].name, gamma2Classes()[k].name,
                             cosTheta, w * (double)counts[kk], v});
      }
      KahanSum ultra;
      long long lastCount = 0;
      for (const auto& [coshD, counts] : data.shells) {
        if (counts[kk] == 0) continue;
        ultra.add((double)counts[kk] * pairingR(coshD));
        lastCount = counts[kk];
      }
      double v = w * twoOverPi * ultra.sum;
      acc.add(v);
      tail += std::fabs(w) * twoOverPi * (2.0 / 3.0) * (double)lastCount / cutoff;
      res.terms.push_back({"ultraparallel", gamma2Classes()[j].name, gamma2Classes()[k].name,
                           cutoff, w, v});
    }
  }
  res.value = acc.sum;
  res.tailEstimate = tail;
  return res;
}

inline std::array<Rat, 6> gamma2SigmaWeights() {
  return {Rat(1), Rat(1), Rat(1), Rat(-1), Rat(-1), Rat(-1)};
}

// The constant the Dedekind distance relation converges to, derived from the
// vanishing self-pairing of the tessellation weight system: minus one third
// of the reduced-length, cusp-constant and intersection buckets.  Equals
// log(pi^4/36).
inline double dedekindConstant() {
  auto w = gamma2SigmaWeights();
  double buckets = 0.0;
  for (int j = 0; j < 6; j++)
    buckets += ratToDouble(w[j] * w[j]) * (gamma2ReducedLength(gamma2Classes()[j].lift) + 2.0);
  for (const auto& table : gamma2CuspTables())
    for (const auto& s1 : table)
      for (const auto& s2 : table)
        buckets += ratToDouble(w[s1.cls] * w[s2.cls]) * cuspPairConstant(s2.position - s1.position);
  // intersections: per ordered class pair, crossings with the canonical lifts
  auto crossTwo = detail::classifyShells(true, 0.0).crossings;
  auto crossThree = detail::classifyShells(false, 0.0).crossings;
  for (int j = 0; j < 6; j++) {
    for (int k = 0; k < 6; k++) {
      double wj = ratToDouble(w[j] * w[k]);
      if (wj == 0.0) continue;
      auto [jj, kk] = detail::canonicalizePair(j, k);
      const auto& crossings = (jj == 3) ? crossTwo : crossThree;
      for (const auto& [cosTheta, counts] : crossings)
        buckets += wj * (double)counts[kk] * pairingR(cosTheta);
    }
  }
  return -buckets / 3.0;
}

struct DedekindReport {
  std::vector<double> cutoffs;
  std::vector<double> sumThree;   // ultraparallel sums around the 323-line
  std::vector<double> sumTwo;     // around the 2-line
  std::vector<double> delta;
  double target = 0.0;
  std::vector<double> error;
  double extrapolated = 0.0;
  double extrapolatedError = 0.0;
  bool cauchy = false;
  std::vector<ShellRow> shellsThree, shellsTwo;
};

// Evaluates the distance relation: delta(cutoff) = sum over ultraparallels
// to a 323-line minus the sum over ultraparallels to a 2-line, against the
// derived constant, over a doubling cutoff ladder.
inline DedekindReport dedekindRelation(double cutoff, bool keepShells = false) {
  if (cutoff < 10.0) fail(ErrorCode::CutoffTooSmall, "cutoff must be at least 10");
  DedekindReport rep;
  for (double c = cutoff; c >= 10.0; c /= 2.0) rep.cutoffs.push_back(c);
  std::reverse(rep.cutoffs.begin(), rep.cutoffs.end());
  rep.sumThree = detail::ultraparallelLadder(false, rep.cutoffs,
                                             keepShells ? &rep.shellsThree : nullptr);
  rep.sumTwo = detail::ultraparallelLadder(true, rep.cutoffs,
                                           keepShells ? &rep.shellsTwo : nullptr);
  rep.target = dedekindConstant();
  for (size_t i = 0; i < rep.cutoffs.size(); i++) {
    rep.delta.push_back(rep.sumThree[i] - rep.sumTwo[i]);
    rep.error.push_back(rep.delta.back() - rep.target);
  }
  size_t n = rep.cutoffs.size();
  if (n >= 2) {
    double c1 = rep.cutoffs[n - 2], c2 = rep.cutoffs[n - 1];
    double d1 = rep.delta[n - 2], d2 = rep.delta[n - 1];
    rep.extrapolated = (c2 * d2 - c1 * d1) / (c2 - c1);
    rep.extrapolatedError = rep.extrapolated - rep.target;
    rep.cauchy = true;
    for (size_t i = 2; i < n; i++) {
      double prev = std::fabs(rep.delta[i - 1] - rep.delta[i - 2]);
      double curr = std::fabs(rep.delta[i] - rep.delta[i - 1]);
      if (curr > prev * 1.25 + 1e-12) rep.cauchy = false;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Intersection cosine sum: lifts of a closed geodesic crossing a fundamental
// interval of a tessellation line.
// ---------------------------------------------------------------------------

struct IntersectionSum {
  double value = 0.0;
  long long count = 0;
  bool flaggedEmpty = false;
};

namespace detail {

struct IntMat {
  long long p, q, r, s;
  bool operator<(const IntMat& o) const {
    return std::array<long long, 4>{p, q, r, s} < std::array<long long, 4>{o.p, o.q, o.r, o.s};
  }
  IntMat normalizedSign() const {
    if (p < 0 || (p == 0 && q < 0)) return {-p, -q, -r, -s};
    return *this;
  }
};

inline IntMat matMul(const IntMat& x, const IntMat& y) {
  return {x.p * y.p + x.q * y.r, x.p * y.q + x.q * y.s, x.r * y.p + x.s * y.r,
          x.r * y.q + x.s * y.s};
}

// axis of an integer hyperbolic matrix as a line triple (r, s-p, -q)
inline TessLine axisTriple(const IntMat& g) {
  long long A = g.r, B = g.s - g.p, C = -g.q;
  return TessLine::of(A, B, C);
}

// unit Euclidean tangent of the geodesic (p -> q) at a crossing point z
inline std::complex<double> geodesicTangent(const BPoint& p, const BPoint& q,
                                            std::complex<double> z) {
  if (q.isInf()) return {0.0, 1.0};
  if (p.isInf()) return {0.0, -1.0};
  double pm = p.value(), qm = q.value();
  double m = (pm + qm) / 2.0;
  std::complex<double> t = std::complex<double>(0, -1) * (z - m);
  if (qm < pm) t = -t;
  return t / std::abs(t);
}

}  // namespace detail

// Sum of cos(theta) over the intersections of the closed geodesic of `g`
// (an integer hyperbolic matrix) with the tessellation line `alpha`, angles
// measured from alpha (oriented toward its larger endpoint) to the closed
// geodesic (oriented repelling -> attracting).  Lifts of the axis are
// enumerated by conjugation and matched against a fundamental half of the
// alpha lift; supported for the canonical lifts (0,1,0) and (1,0,-1).
inline IntersectionSum intersectionCosSum(const TessLine& alpha,
                                          const std::array<long long, 4>& gArr, int maxWordLen) {
  detail::IntMat g{gArr[0], gArr[1], gArr[2], gArr[3]};
  if (g.p * g.s - g.q * g.r != 1) fail(ErrorCode::BadInput, "matrix must have determinant 1");
  if (std::llabs(g.p + g.s) <= 2) fail(ErrorCode::BadInput, "matrix must be hyperbolic");
  bool refTwo = alpha == TessLine::of(0, 1, 0);
  bool refThree = alpha == TessLine::of(1, 0, -1);
  if (!refTwo && !refThree)
    fail(ErrorCode::UnsupportedGroup, "supported reference lifts: (0,1,0) and (1,0,-1)");

  // enumerate conjugate axes by BFS over T, S; keep one conjugating
  // representative per distinct axis so the translation direction is known
  std::set<detail::IntMat> seen;
  std::map<TessLine, detail::IntMat> axes;
  std::vector<detail::IntMat> frontier{detail::IntMat{1, 0, 0, 1}};
  seen.insert(frontier[0]);
  const detail::IntMat gens[3] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {0, -1, 1, 0}};
  axes.emplace(detail::axisTriple(g), g);
  for (int len = 0; len < maxWordLen && !frontier.empty(); len++) {
    std::vector<detail::IntMat> next;
    for (const auto& D : frontier) {
      for (const auto& h : gens) {
        detail::IntMat Dh = detail::matMul(h, D).normalizedSign();
        if (!seen.insert(Dh).second) continue;
        next.push_back(Dh);
        detail::IntMat inv{Dh.s, -Dh.q, -Dh.r, Dh.p};
        detail::IntMat conj = detail::matMul(detail::matMul(Dh, g), inv);
        axes.emplace(detail::axisTriple(conj), conj);
      }
    }
    frontier = std::move(next);
  }

  // orient alpha: (0 -> inf) for the axis, (-1 -> 1) for the semicircle
  BPoint aLo = refTwo ? BPoint::of(0.0) : BPoint::of(-1.0);
  BPoint aHi = refTwo ? BPoint::infinity() : BPoint::of(1.0);

  IntersectionSum out;
  KahanSum acc;
  for (const auto& [ax, conj] : axes) {
    auto cls = classifyPair(alpha, ax);
    if (cls.rel != TessRelation::Intersecting) continue;
    // crossing point of alpha with the axis
    std::complex<double> z;
    if (refTwo) {
      // x = 0: a y^2 + c = 0
      double y2 = -(double)ax.c / (double)ax.a;
      if (!(y2 > 0)) continue;
      z = {0.0, std::sqrt(y2)};
      if (z.imag() < 1.0 - 1e-12) continue;  // fundamental half: y >= 1
    } else {
      // on x^2+y^2 = 1: a + b x + c = 0
      double x = -(double)(ax.a + ax.c) / (double)ax.b;
      if (!(x > -1.0 && x < 1.0)) continue;
      z = {x, std::sqrt(1.0 - x * x)};
      if (x > 1e-12) continue;  // fundamental half: angle in [pi/2, pi)
    }
    // translation direction of the conjugated element: repelling -> attracting
    MoebiusMap m{(double)conj.p, (double)conj.q, (double)conj.r, (double)conj.s};
    auto [rep, att] = axisEndpoints(m);
    std::complex<double> tA = detail::geodesicTangent(aLo, aHi, z);
    std::complex<double> tB = detail::geodesicTangent(rep, att, z);
    double c = tA.real() * tB.real() + tA.imag() * tB.imag();
    acc.add(c);
    out.count++;
  }
  out.value = acc.sum;
  if (out.count == 0) out.flaggedEmpty = true;
  return out;
}

}  // namespace teich
