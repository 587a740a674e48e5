#pragma once

#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "fingen/action.hpp"
#include "fingen/partition.hpp"
#include "fingen/types.hpp"

namespace fingen {

// Coarsest partition refined by g·seed for every element g of the generated
// group, computed as a fixed point: joining with all generator translates
// (and their inverses) until the class count stops growing reaches exactly
// the join over the whole group, because every element is a product of
// generator letters and translation distributes over joins.
inline Partition orbit_join(const FiniteAction& a, const Partition& seed) {
  Partition current = seed;
  for (;;) {
    Partition next = current;
    for (std::size_t g = 0; g < a.generators.size(); ++g) {
      next = join(next, translate_partition(a.generators[g], current));
      next = join(next, translate_partition(a.inverses[g], current));
    }
    if (next.size() == current.size()) return current;
    current = std::move(next);
  }
}

// True iff membership in `a` is identical along the paired orbits of x and y:
// for every group element p, p·x lands in `a` exactly when p·y does. The
// quantifier over the (possibly enormous) group reduces to a breadth-first
// search over the diagonal orbit of the pair, which is what runs here.
inline bool points_symmetric(const FiniteAction& act, const PointSet& a, Point x, Point y) {
  if (a.size() != act.points) throw DomainError("points_symmetric: set size mismatch");
  if (x >= act.points || y >= act.points) throw DomainError("points_symmetric: point range");
  if (x == y) return true;
  const std::size_t n = act.points;
  PointSet seen(n * n);
  std::deque<std::pair<Point, Point>> queue;
  auto push = [&](Point u, Point v) {
    const std::size_t idx = static_cast<std::size_t>(u) * n + v;
    if (!seen.test(idx)) {
      seen.set(idx);
      queue.emplace_back(u, v);
    }
  };
  push(x, y);
  while (!queue.empty()) {
    auto [u, v] = queue.front();
    queue.pop_front();
    if (a.test(u) != a.test(v)) return false;
    for (std::size_t g = 0; g < act.generators.size(); ++g) {
      push(act.generators[g][u], act.generators[g][v]);
      push(act.inverses[g][u], act.inverses[g][v]);
    }
  }
  return true;
}

struct GeneratingCheck {
  bool generating = false;
  bool by_join = false;   // orbit-join of all translates is all singletons
  bool by_pairs = false;  // every point pair is separated along its diagonal orbit
  // Lexicographically least pair no translate separates, when not generating.
  std::optional<std::pair<Point, Point>> witness;
};

namespace detail {

inline void require_ergodic(const FiniteAction& a, const char* what) {
  if (!a.ergodic)
    throw NonErgodicError(std::string(what) + " requires a single-orbit action");
}

inline std::optional<std::pair<Point, Point>> least_unseparated_of_join(const Partition& j) {
  std::optional<std::pair<Point, Point>> best;
  for (const auto& cls : j.classes) {
    if (cls.size() < 2) continue;
    std::pair<Point, Point> cand{cls[0], cls[1]};
    if (!best || cand < *best) best = cand;
  }
  return best;
}

}  // namespace detail

// Method 1: the join of g·partition over all distinct group elements must be
// the partition into singletons.
inline GeneratingCheck generating_by_join(const FiniteAction& a, const Partition& p) {
  detail::require_ergodic(a, "generating_by_join");
  if (p.points != a.points) throw DomainError("partition does not match action");
  const Partition j = orbit_join(a, p);
  GeneratingCheck out;
  out.by_join = j.size() == a.points;
  out.generating = out.by_join;
  if (!out.by_join) out.witness = detail::least_unseparated_of_join(j);
  return out;
}

// Method 2: for every pair x != y, some reachable pair along the diagonal
// orbit has differing partition labels. Computed as one multi-source search
// from the label-disagreeing pairs; pairs never reached are witnesses.
inline GeneratingCheck generating_by_pairs(const FiniteAction& a, const Partition& p) {
  detail::require_ergodic(a, "generating_by_pairs");
  if (p.points != a.points) throw DomainError("partition does not match action");
  const std::size_t n = a.points;
  auto pair_index = [n](Point u, Point v) {
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(u) * n + v;
  };
  PointSet separated(n * n);
  std::deque<std::pair<Point, Point>> queue;
  for (Point u = 0; u < n; ++u) {
    for (Point v = u + 1; v < n; ++v) {
      if (p.class_of[u] != p.class_of[v]) {
        separated.set(pair_index(u, v));
        queue.emplace_back(u, v);
      }
    }
  }
  while (!queue.empty()) {
    auto [u, v] = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < a.generators.size(); ++g) {
      for (const auto& perm : {a.generators[g], a.inverses[g]}) {
        const std::size_t idx = pair_index(perm[u], perm[v]);
        if (!separated.test(idx)) {
          separated.set(idx);
          queue.emplace_back(std::min(perm[u], perm[v]), std::max(perm[u], perm[v]));
        }
      }
    }
  }
  GeneratingCheck out;
  out.by_pairs = true;
  for (Point u = 0; u < n && out.by_pairs; ++u) {
    for (Point v = u + 1; v < n; ++v) {
      if (!separated.test(pair_index(u, v))) {
        out.by_pairs = false;
        out.witness = {{u, v}};
        break;
      }
    }
  }
  out.generating = out.by_pairs;
  return out;
}

// Runs both methods and insists they agree, including on the least witness.
inline GeneratingCheck is_generating(const FiniteAction& a, const Partition& p) {
  GeneratingCheck by_join = generating_by_join(a, p);
  GeneratingCheck by_pairs = generating_by_pairs(a, p);
  if (by_join.by_join != by_pairs.by_pairs || by_join.witness != by_pairs.witness)
    throw InternalError("generating-partition methods disagree");
  GeneratingCheck out = by_join;
  out.by_pairs = by_pairs.by_pairs;
  return out;
}

// Exhaustive forward search over the diagonal orbit of one pair; used to
// verify non-generating witnesses independently of the two methods above.
inline bool pair_separated(const FiniteAction& act, const Partition& p, Point x, Point y) {
  if (x == y) return false;
  const std::size_t n = act.points;
  PointSet seen(n * n);
  std::deque<std::pair<Point, Point>> queue;
  auto push = [&](Point u, Point v) {
    const std::size_t idx = static_cast<std::size_t>(u) * n + v;
    if (!seen.test(idx)) {
      seen.set(idx);
      queue.emplace_back(u, v);
    }
  };
  push(x, y);
  while (!queue.empty()) {
    auto [u, v] = queue.front();
    queue.pop_front();
    if (p.class_of[u] != p.class_of[v]) return true;
    for (std::size_t g = 0; g < act.generators.size(); ++g) {
      push(act.generators[g][u], act.generators[g][v]);
      push(act.inverses[g][u], act.inverses[g][v]);
    }
  }
  return false;
}

}  // namespace fingen
