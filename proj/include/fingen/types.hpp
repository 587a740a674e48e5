#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/rational.hpp>

#include "fingen/errors.hpp"

namespace fingen {

using Point = std::uint32_t;

// A permutation of {0, ..., n-1}: p[x] is the image of x.
using Perm = std::vector<Point>;

// Subsets of the point space, one bit per point.
using PointSet = boost::dynamic_bitset<>;

// Exact arithmetic for measures and thresholds. All measures in this library
// are integer counts over a common denominator, so int64 components suffice.
using Rational = boost::rational<std::int64_t>;

// Words over the code alphabet. Letters '1'..'3' carry code content; letter
// '4' is the structural marker used by the relabeling stage.
using SymbolWord = std::string;

inline bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (Point v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline Perm identity_perm(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Point>(i);
  return p;
}

inline Perm inverse_perm(const Perm& p) {
  Perm inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<Point>(i);
  return inv;
}

// Function composition: (f * g)(x) = f(g(x)).
inline Perm compose(const Perm& f, const Perm& g) {
  if (f.size() != g.size()) throw DomainError("compose: size mismatch");
  Perm out(f.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = f[g[x]];
  return out;
}

inline PointSet translate_set(const Perm& p, const PointSet& a) {
  PointSet out(a.size());
  for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) out.set(p[x]);
  return out;
}

inline PointSet make_set(std::size_t n, std::initializer_list<Point> points) {
  PointSet s(n);
  for (Point x : points) s.set(x);
  return s;
}

inline std::vector<Point> set_points(const PointSet& s) {
  std::vector<Point> out;
  out.reserve(s.count());
  for (auto x = s.find_first(); x != PointSet::npos; x = s.find_next(x))
    out.push_back(static_cast<Point>(x));
  return out;
}

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace fingen
