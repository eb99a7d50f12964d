#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace teich {

using Rat = mpq_class;

enum class ErrorCode {
  EmptyInput,
  EdgeDegree,
  NonsurfaceGluing,
  SelfFolded,
  MissingWeight,
  NonpositiveLambda,
  Unbalanced,
  LengthMismatch,
  CoincidentPoints,
  SingularArgument,
  OutOfRange,
  NonpositiveParam,
  NotInUpperHalfPlane,
  NumericBlowup,
  IncompleteDevelopment,
  UndecoratedCusp,
  SeedNotPrimitive,
  CutoffTooSmall,
  UnsupportedGroup,
  NoIntersections,
  BadInput,
};

inline const char* errorCodeName(ErrorCode c) {
  switch (c) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EdgeDegree: return "EdgeDegree";
    case ErrorCode::NonsurfaceGluing: return "NonsurfaceGluing";
    case ErrorCode::SelfFolded: return "SelfFolded";
    case ErrorCode::MissingWeight: return "MissingWeight";
    case ErrorCode::NonpositiveLambda: return "NonpositiveLambda";
    case ErrorCode::Unbalanced: return "Unbalanced";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::SingularArgument: return "SingularArgument";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonpositiveParam: return "NonpositiveParam";
    case ErrorCode::NotInUpperHalfPlane: return "NotInUpperHalfPlane";
    case ErrorCode::NumericBlowup: return "NumericBlowup";
    case ErrorCode::IncompleteDevelopment: return "IncompleteDevelopment";
    case ErrorCode::UndecoratedCusp: return "UndecoratedCusp";
    case ErrorCode::SeedNotPrimitive: return "SeedNotPrimitive";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::NoIntersections: return "NoIntersections";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(errorCodeName(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Parses "p/q", "p", or a decimal such as "1.25" into an exact rational.
inline Rat parseRational(const std::string& s) {
  if (s.empty()) fail(ErrorCode::BadInput, "empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat q;
    if (q.set_str(s, 10) != 0) fail(ErrorCode::BadInput, "bad rational literal '" + s + "'");
    q.canonicalize();
    return q;
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rat q;
    if (q.set_str(s, 10) != 0) fail(ErrorCode::BadInput, "bad integer literal '" + s + "'");
    q.canonicalize();
    return q;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac = s.size() - dot - 1;
  bool neg = !digits.empty() && digits[0] == '-';
  if (neg) digits = digits.substr(1);
  if (digits.empty()) fail(ErrorCode::BadInput, "bad decimal literal '" + s + "'");
  mpz_class num(digits, 10), den(1);
  for (size_t i = 0; i < frac; i++) den *= 10;
  Rat q(neg ? -num : num, den);
  q.canonicalize();
  return q;
}

inline std::string ratToString(const Rat& q) { return q.get_str(); }

// Kahan-compensated accumulator, used for the slowly convergent series.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double value) {
    double y = value - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

inline double ratToDouble(const Rat& q) { return q.get_d(); }

}  // namespace teich
