#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "teich/coords.hpp"
#include "teich/surface.hpp"

namespace teich {

// ---------------------------------------------------------------------------
// Input files (parsed with nlohmann::json).
// ---------------------------------------------------------------------------

// {"triangles": [["e1","e2","e3"], ...]} - sides in counterclockwise order.
inline IdealTriangulation loadTriangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  if (!j.contains("triangles")) fail(ErrorCode::BadInput, "missing 'triangles' in " + path);
  std::vector<std::vector<std::string>> raw;
  for (const auto& tri : j["triangles"]) {
    std::vector<std::string> sides;
    for (const auto& s : tri) sides.push_back(s.get<std::string>());
    raw.push_back(sides);
  }
  return validate(raw);
}

// {"weights": {"e1": "3/2", "e2": 0.5, ...}} - rational strings or numbers.
inline WeightSystem loadWeights(const std::string& path, const IdealTriangulation& T) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  if (!j.contains("weights")) fail(ErrorCode::BadInput, "missing 'weights' in " + path);
  std::map<std::string, Rat> byName;
  for (auto& [key, value] : j["weights"].items()) {
    if (value.is_string())
      byName[key] = parseRational(value.get<std::string>());
    else
      byName[key] = parseRational(value.dump());
  }
  return weightsFromMap(T, byName);
}

struct LambdaFile {
  bool formalLog = false;
  LambdaVec<double> lambdas;  // when !formalLog
  LogLambda logLambdas;       // when formalLog
};

// {"lambdas": {"e1": 1.0, ...}} or {"log_lambdas": {"e1": "2/3", ...}}.
inline LambdaFile loadLambdas(const std::string& path, const IdealTriangulation& T) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  LambdaFile out;
  if (j.contains("log_lambdas")) {
    out.formalLog = true;
    std::map<std::string, Rat> byName;
    for (auto& [key, value] : j["log_lambdas"].items())
      byName[key] = value.is_string() ? parseRational(value.get<std::string>())
                                      : parseRational(value.dump());
    out.logLambdas = weightsFromMap(T, byName);
    return out;
  }
  if (!j.contains("lambdas")) fail(ErrorCode::BadInput, "missing 'lambdas' in " + path);
  out.lambdas.assign(T.edgeCount(), 0.0);
  std::vector<bool> got(T.edgeCount(), false);
  for (auto& [key, value] : j["lambdas"].items()) {
    EdgeId e = T.edgeIdOf(key);
    out.lambdas[e] = value.get<double>();
    got[e] = true;
  }
  for (EdgeId e = 0; e < T.edgeCount(); e++)
    if (!got[e]) fail(ErrorCode::MissingWeight, "no lambda for edge '" + T.edgeNames[e] + "'");
  return out;
}

// {"shears": {"e1": 0.25, ...}}.
inline std::vector<double> loadShears(const std::string& path, const IdealTriangulation& T) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  if (!j.contains("shears")) fail(ErrorCode::BadInput, "missing 'shears' in " + path);
  std::vector<double> sigma(T.edgeCount(), 0.0);
  std::vector<bool> got(T.edgeCount(), false);
  for (auto& [key, value] : j["shears"].items()) {
    EdgeId e = T.edgeIdOf(key);
    sigma[e] = value.get<double>();
    got[e] = true;
  }
  for (EdgeId e = 0; e < T.edgeCount(); e++)
    if (!got[e]) fail(ErrorCode::MissingWeight, "no shear for edge '" + T.edgeNames[e] + "'");
  return sigma;
}

// ---------------------------------------------------------------------------
// Deterministic JSON output: insertion-ordered keys, doubles at 17
// significant digits, rationals as "p/q" strings.
// ---------------------------------------------------------------------------

class JsonWriter {
public:
  JsonWriter() { out_.reserve(256); }

  std::string str() const { return out_; }

  void beginObject() { open('{'); }
  void endObject() { close('}'); }
  void beginArray() { open('['); }
  void endArray() { close(']'); }

  void key(const std::string& k) {
    comma();
    quote(k);
    out_ += ':';
    justKeyed_ = true;
  }

  void value(double x) { comma(); out_ += formatDouble(x); }
  void value(long long x) { comma(); out_ += std::to_string(x); }
  void value(int x) { comma(); out_ += std::to_string(x); }
  void value(size_t x) { comma(); out_ += std::to_string(x); }
  void value(bool b) { comma(); out_ += b ? "true" : "false"; }
  void value(const std::string& s) { comma(); quote(s); }
  void value(const char* s) { comma(); quote(s); }
  void value(const Rat& q) { comma(); quote(ratToString(q)); }

  template <typename T>
  void field(const std::string& k, const T& v) {
    key(k);
    value(v);
  }

  static std::string formatDouble(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
  }

private:
  void open(char c) {
    comma();
    out_ += c;
    depthFirst_.push_back(true);
  }
  void close(char c) {
    out_ += c;
    depthFirst_.pop_back();
    justKeyed_ = false;
  }
  void comma() {
    if (justKeyed_) {
      justKeyed_ = false;
      return;
    }
    if (!depthFirst_.empty() && !depthFirst_.back()) out_ += ',';
    if (!depthFirst_.empty()) depthFirst_.back() = false;
  }
  void quote(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      if (c == '"' || c == '\\') out_ += '\\';
      out_ += c;
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> depthFirst_;
  bool justKeyed_ = false;
};

inline void writeIntMatrix(JsonWriter& w, const IntMatrix& M) {
  w.beginArray();
  for (const auto& row : M) {
    w.beginArray();
    for (long long x : row) w.value(x);
    w.endArray();
  }
  w.endArray();
}

}  // namespace teich
