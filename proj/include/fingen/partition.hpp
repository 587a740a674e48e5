#pragma once

#include <cmath>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fingen/action.hpp"
#include "fingen/types.hpp"

namespace fingen {

// A finite measurable partition of the point space. Classes are nonempty,
// class ids are dense, and measures are exact: |class| / points.
struct Partition {
  std::uint32_t points = 0;
  std::vector<std::uint32_t> class_of;        // point -> class id
  std::vector<std::vector<Point>> classes;    // class id -> sorted members
  std::vector<Rational> measures;             // class id -> exact measure

  std::size_t size() const { return classes.size(); }
};

// Builds a partition from arbitrary labels; class ids are assigned by first
// appearance in point order, which keeps every builder deterministic.
inline Partition partition_from_labels(std::uint32_t points,
                                       const std::vector<std::uint32_t>& labels) {
  if (points == 0) throw DomainError("partition needs at least one point");
  if (labels.size() != points) throw DomainError("label count differs from point count");
  Partition p;
  p.points = points;
  p.class_of.resize(points);
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  for (Point x = 0; x < points; ++x) {
    auto [it, fresh] = remap.emplace(labels[x], static_cast<std::uint32_t>(p.classes.size()));
    if (fresh) p.classes.emplace_back();
    p.class_of[x] = it->second;
    p.classes[it->second].push_back(x);
  }
  for (const auto& c : p.classes)
    p.measures.emplace_back(static_cast<std::int64_t>(c.size()),
                            static_cast<std::int64_t>(points));
  return p;
}

// Shannon entropy in nats. Measures are exact rationals; the sum is taken in
// double with the convention 0 * log 0 = 0 (empty classes cannot occur).
inline double shannon_entropy(const Partition& p) {
  double h = 0.0;
  for (const Rational& m : p.measures) {
    const double mu = boost::rational_cast<double>(m);
    if (mu > 0.0) h -= mu * std::log(mu);
  }
  return h;
}

// The translated partition g·P: the class of x in the result is the class of
// g^{-1}(x) in the input. Class ids and measures are preserved.
inline Partition translate_partition(const Perm& g, const Partition& p) {
  if (g.size() != p.points) throw DomainError("translate_partition: size mismatch");
  Partition out;
  out.points = p.points;
  out.class_of.resize(p.points);
  out.classes.resize(p.classes.size());
  out.measures = p.measures;
  for (Point x = 0; x < p.points; ++x) out.class_of[g[x]] = p.class_of[x];
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    out.classes[c].reserve(p.classes[c].size());
  }
  for (Point x = 0; x < p.points; ++x) out.classes[out.class_of[x]].push_back(x);
  return out;
}

// Common refinement of two partitions. Class ids follow first appearance in
// point order.
inline Partition join(const Partition& a, const Partition& b) {
  if (a.points != b.points) throw DomainError("join: point count mismatch");
  std::vector<std::uint32_t> labels(a.points);
  std::unordered_map<std::uint64_t, std::uint32_t> remap;
  std::uint32_t next = 0;
  for (Point x = 0; x < a.points; ++x) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(a.class_of[x]) << 32) | b.class_of[x];
    auto [it, fresh] = remap.emplace(key, next);
    if (fresh) ++next;
    labels[x] = it->second;
  }
  return partition_from_labels(a.points, labels);
}

inline Partition join(std::span<const Partition> parts) {
  if (parts.empty()) throw DomainError("join: empty partition list");
  Partition acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = join(acc, parts[i]);
  return acc;
}

// Equality as set partitions (ignoring class id labels).
inline bool same_partition(const Partition& a, const Partition& b) {
  if (a.points != b.points || a.size() != b.size()) return false;
  return join(a, b).size() == a.size();
}

}  // namespace fingen
