#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fingen/types.hpp"

namespace fingen {

// A finite measure-preserving system: the uniform measure on {0, ..., points-1}
// acted on by the group generated by `generators`. Permutations preserve the
// uniform measure exactly, so no measure data is stored.
struct FiniteAction {
  std::uint32_t points = 0;
  std::vector<Perm> generators;
  std::vector<Perm> inverses;           // inverses[i] == inverse_perm(generators[i])
  std::vector<std::string> generator_names;
  bool ergodic = false;                 // true iff the action has a single orbit
};

inline std::vector<std::vector<Point>> orbits(const FiniteAction& a) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(a.points, false);
  for (Point start = 0; start < a.points; ++start) {
    if (seen[start]) continue;
    std::vector<Point> orbit{start};
    seen[start] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      Point x = orbit[i];
      for (std::size_t g = 0; g < a.generators.size(); ++g) {
        for (Point y : {a.generators[g][x], a.inverses[g][x]}) {
          if (!seen[y]) {
            seen[y] = true;
            orbit.push_back(y);
          }
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

inline bool is_ergodic(const FiniteAction& a) { return orbits(a).size() == 1; }

inline std::string default_generator_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "g" + std::to_string(i + 1);
}

inline FiniteAction make_action(std::uint32_t points, std::vector<Perm> generators,
                                std::vector<std::string> names = {}) {
  if (points == 0) throw DomainError("action needs at least one point");
  for (const Perm& p : generators) {
    if (p.size() != points) throw DomainError("generator length differs from point count");
    if (!is_permutation(p)) throw DomainError("generator is not a permutation");
  }
  if (names.empty()) {
    for (std::size_t i = 0; i < generators.size(); ++i)
      names.push_back(default_generator_name(i));
  }
  if (names.size() != generators.size())
    throw DomainError("generator name count differs from generator count");
  for (const std::string& n : names)
    if (n.empty()) throw DomainError("generator names must be nonempty");

  FiniteAction a;
  a.points = points;
  a.generators = std::move(generators);
  for (const Perm& p : a.generators) a.inverses.push_back(inverse_perm(p));
  a.generator_names = std::move(names);
  a.ergodic = is_ergodic(a);
  return a;
}

}  // namespace fingen
