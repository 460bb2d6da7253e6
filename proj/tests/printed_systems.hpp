// Reference quadratic systems in rendered form, frozen as test oracles,
// plus a small parser that canonicalizes them for set comparison against
// generated systems.
#pragma once

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "equigeo/engine.hpp"

namespace testutil {

using Term = std::tuple<int, int, long long>;  // (p, q, coeff) by var index
using CanonicalEquation = std::vector<Term>;
using CanonicalSystem = std::set<CanonicalEquation>;

inline CanonicalEquation canonicalize(
    std::vector<std::tuple<std::string, std::string, long long>> terms,
    const std::vector<std::string>& variables) {
  auto index = [&](const std::string& v) {
    auto it = std::find(variables.begin(), variables.end(), v);
    if (it == variables.end()) {
      throw std::runtime_error("reference system uses unknown variable " + v);
    }
    return static_cast<int>(it - variables.begin());
  };
  std::map<std::pair<int, int>, long long> acc;
  for (auto& [a, b, c] : terms) {
    int p = index(a), q = index(b);
    if (p > q) std::swap(p, q);
    acc[{p, q}] += c;
  }
  CanonicalEquation eq;
  for (auto& [pq, c] : acc) {
    if (c) eq.push_back({pq.first, pq.second, c});
  }
  if (!eq.empty() && std::get<2>(eq.front()) < 0) {
    for (Term& t : eq) std::get<2>(t) = -std::get<2>(t);
  }
  return eq;
}

// Parses "a12*a13 + b12*b13 = 0" style lines (unit coefficients only).
inline CanonicalSystem parse_printed(
    const std::vector<std::string>& lines,
    const std::vector<std::string>& variables) {
  CanonicalSystem out;
  std::regex term_re(R"(([+-]?)\s*(\w+)\*(\w+))");
  for (const std::string& line : lines) {
    std::vector<std::tuple<std::string, std::string, long long>> terms;
    for (std::sregex_iterator it(line.begin(), line.end(), term_re), end;
         it != end; ++it) {
      long long sign = ((*it)[1].str() == "-") ? -1 : 1;
      terms.push_back({(*it)[2].str(), (*it)[3].str(), sign});
    }
    if (terms.empty()) {
      throw std::runtime_error("reference equation parsed empty: " + line);
    }
    out.insert(canonicalize(terms, variables));
  }
  return out;
}

inline CanonicalSystem canonical_system(const equigeo::QuadraticSystem& sys) {
  CanonicalSystem out;
  for (const equigeo::BilinearEquation& eq : sys.equations) {
    std::vector<std::tuple<std::string, std::string, long long>> terms;
    for (const equigeo::BilinearTerm& t : eq.terms) {
      terms.push_back({sys.variables[t.p], sys.variables[t.q], t.coeff});
    }
    out.insert(canonicalize(terms, sys.variables));
  }
  return out;
}

// ---- Reference systems ----

inline std::vector<std::string> w6_system() {
  return {
      "b12*b13 + a12*a13 = 0", "b12*a13 - a12*b13 = 0",
      "a12*a23 - b12*b23 = 0", "a12*b23 + b12*a23 = 0",
      "a13*a23 + b13*b23 = 0", "a13*b23 - b13*a23 = 0",
  };
}

inline std::vector<std::string> w12_system() {
  return {
      "a12*a13 + b12*b13 + c12*c13 + q12*q13 = 0",
      "a12*b13 - b12*a13 + c12*q13 - q12*c13 = 0",
      "a12*c13 - b12*q13 - c12*a13 + q12*b13 = 0",
      "a12*q13 + b12*c13 - c12*b13 - q12*a13 = 0",
      "a12*a23 - b12*b23 - c12*c23 - q12*q23 = 0",
      "a12*b23 + b12*a23 - c12*q23 + q12*c23 = 0",
      "a12*c23 + b12*q23 + c12*a23 - q12*b23 = 0",
      "a12*q23 - b12*c23 + c12*b23 + q12*a23 = 0",
      "a13*a23 + b13*b23 + c13*c23 + q13*q23 = 0",
      "a13*b23 - b13*a23 - c13*q23 + q13*c23 = 0",
      "a13*c23 + b13*q23 - c13*a23 - q13*b23 = 0",
      "a13*q23 - b13*c23 + c13*b23 - q13*a23 = 0",
  };
}

// Two-sphere presentation of S^{4n+3}; the reference uses the generators
// u11 -> b11, k -> c11, mu -> q11 and e/f/g/h coefficients a/b/c/q.
inline std::vector<std::string> sphere_sp_system(int n) {
  std::vector<std::string> out;
  for (int j = 2; j <= n + 1; ++j) {
    std::string js = std::to_string(j);
    out.push_back("b11*b1" + js + " + c11*c1" + js + " + q11*q1" + js + " = 0");
    out.push_back("b11*a1" + js + " - c11*q1" + js + " + q11*c1" + js + " = 0");
    out.push_back("c11*a1" + js + " - q11*b1" + js + " + b11*q1" + js + " = 0");
    out.push_back("-b11*c1" + js + " + c11*b1" + js + " + a1" + js +
                  "*q11 = 0");
  }
  return out;
}

inline std::vector<std::string> v2rn_system(int n) {
  std::vector<std::string> out;
  for (int b = 3; b <= n; ++b) {
    out.push_back("a12*a1" + std::to_string(b) + " = 0");
  }
  for (int b = 3; b <= n; ++b) {
    out.push_back("a12*a2" + std::to_string(b) + " = 0");
  }
  std::string sum;
  for (int b = 3; b <= n; ++b) {
    if (!sum.empty()) sum += " + ";
    sum += "a1" + std::to_string(b) + "*a2" + std::to_string(b);
  }
  out.push_back(sum + " = 0");
  return out;
}

inline std::vector<std::string> v2rn_einstein_system(int n) {
  std::vector<std::string> out = v2rn_system(n);
  out.pop_back();  // the cross-sum equation couples equal metric classes
  return out;
}

inline std::vector<std::string> so6_system() {
  return {
      "a15*a12 = 0", "a15*a13 = 0", "a15*a14 = 0",
      "a16*a12 = 0", "a16*a13 = 0", "a16*a14 = 0",
      "a25*a12 + a35*a13 + a45*a14 = 0",
      "a26*a12 + a36*a13 + a46*a14 = 0",
      "a25*a15 + a26*a16 = 0", "a35*a15 + a36*a16 = 0",
      "a45*a15 + a46*a16 = 0",
  };
}

// Reference system for V4R6 with the metric classes {so(3), m12} and
// {m13, m23}; one published sign was repaired (it contradicted the tabulated
// solutions, which all satisfy this version).
inline std::vector<std::string> v1k_jensen_system() {
  return {
      "a12*a15 - a23*a35 - a24*a45 = 0", "a12*a16 - a23*a36 - a24*a46 = 0",
      "a13*a15 + a23*a25 - a34*a45 = 0", "a13*a16 + a23*a26 - a34*a46 = 0",
      "a14*a15 + a24*a25 + a34*a35 = 0", "a14*a16 + a24*a26 + a34*a36 = 0",
      "a12*a25 + a13*a35 + a14*a45 = 0", "a12*a26 + a13*a36 + a14*a46 = 0",
  };
}

}  // namespace testutil
