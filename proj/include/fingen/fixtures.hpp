#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fingen/action.hpp"
#include "fingen/partition.hpp"
#include "fingen/types.hpp"

namespace fingen {

inline FiniteAction cyclic_action(std::uint32_t points) {
  if (points == 0) throw DomainError("cyclic_action: need at least one point");
  Perm step(points);
  for (Point x = 0; x < points; ++x) step[x] = (x + 1) % points;
  return make_action(points, {step}, {"s"});
}

namespace detail {

// Fisher-Yates with the raw 64-bit stream; no distribution adapters, so the
// sequence is identical on every platform.
inline void shuffle_points(std::vector<Point>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng() % i]);
}

inline Perm random_perm(std::uint32_t n, std::mt19937_64& rng) {
  std::vector<Point> v = identity_perm(n);
  shuffle_points(v, rng);
  return v;
}

}  // namespace detail

// Random action on `points` points with `generators` generators, guaranteed
// to have a single orbit. One generator is drawn as a full cycle in random
// order; with more, independent permutations are drawn until the orbit check
// passes.
inline FiniteAction random_transitive_action(std::uint32_t points, std::uint32_t generators,
                                             std::uint64_t seed) {
  if (points == 0) throw DomainError("random_transitive_action: need at least one point");
  if (generators == 0) throw DomainError("random_transitive_action: need at least one generator");
  std::mt19937_64 rng(seed);
  if (generators == 1) {
    std::vector<Point> order = identity_perm(points);
    detail::shuffle_points(order, rng);
    Perm g(points);
    for (std::uint32_t i = 0; i < points; ++i) g[order[i]] = order[(i + 1) % points];
    return make_action(points, {g});
  }
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Perm> gens;
    gens.reserve(generators);
    for (std::uint32_t k = 0; k < generators; ++k)
      gens.push_back(detail::random_perm(points, rng));
    FiniteAction act = make_action(points, std::move(gens));
    if (act.ergodic) return act;
  }
  throw DomainError("random_transitive_action: no single-orbit draw in 10000 attempts");
}

inline Partition pointwise_partition(std::uint32_t points) {
  std::vector<std::uint32_t> labels(points);
  for (Point x = 0; x < points; ++x) labels[x] = x;
  return partition_from_labels(points, labels);
}

// Random partition with every class nonempty: a shuffled prefix pins one
// point per class, the rest draw classes uniformly.
inline Partition random_partition(std::uint32_t points, std::uint32_t classes,
                                  std::uint64_t seed) {
  if (classes == 0) throw DomainError("random_partition: need at least one class");
  if (classes > points) throw DomainError("random_partition: more classes than points");
  std::mt19937_64 rng(seed);
  std::vector<Point> order = identity_perm(points);
  detail::shuffle_points(order, rng);
  std::vector<std::uint32_t> labels(points);
  for (std::uint32_t i = 0; i < points; ++i)
    labels[order[i]] = i < classes ? i : static_cast<std::uint32_t>(rng() % classes);
  return partition_from_labels(points, labels);
}

// A product-space action described by a base permutation action on "cosets"
// and, for every generator and coset, a permutation of a fixed fiber.
struct InducedActionSpec {
  std::uint32_t coset_count = 1;
  std::uint32_t fiber_size = 1;
  std::vector<Perm> coset_action;           // per generator
  std::vector<std::vector<Perm>> schreier;  // per generator, per coset
  std::vector<std::string> generator_names;
};

namespace detail {

inline void check_induced(const InducedActionSpec& spec) {
  if (spec.coset_count == 0 || spec.fiber_size == 0)
    throw CocycleError("induced action needs at least one coset and one fiber point");
  if (spec.coset_action.empty()) throw CocycleError("induced action needs a generator");
  if (spec.schreier.size() != spec.coset_action.size())
    throw CocycleError("one fiber table per generator required");
  for (std::size_t g = 0; g < spec.coset_action.size(); ++g) {
    if (spec.coset_action[g].size() != spec.coset_count ||
        !is_permutation(spec.coset_action[g]))
      throw CocycleError("base table " + std::to_string(g) + " is not a coset permutation");
    if (spec.schreier[g].size() != spec.coset_count)
      throw CocycleError("fiber table " + std::to_string(g) + " misses cosets");
    for (const Perm& p : spec.schreier[g])
      if (p.size() != spec.fiber_size || !is_permutation(p))
        throw CocycleError("fiber table " + std::to_string(g) + " has a non-permutation entry");
  }
  if (!spec.generator_names.empty() &&
      spec.generator_names.size() != spec.coset_action.size())
    throw CocycleError("one name per generator required");
}

}  // namespace detail

inline Point induced_point(const InducedActionSpec& spec, Point coset, Point fiber) {
  return coset * spec.fiber_size + fiber;
}

// Builds the action on coset_count * fiber_size points where generator g
// sends (c, y) to (coset_action[g][c], schreier[g][c][y]).
inline FiniteAction induced_action(const InducedActionSpec& spec) {
  detail::check_induced(spec);
  const std::uint32_t n = spec.coset_count * spec.fiber_size;
  std::vector<Perm> gens;
  gens.reserve(spec.coset_action.size());
  for (std::size_t g = 0; g < spec.coset_action.size(); ++g) {
    Perm perm(n);
    for (Point c = 0; c < spec.coset_count; ++c)
      for (Point y = 0; y < spec.fiber_size; ++y)
        perm[induced_point(spec, c, y)] =
            induced_point(spec, spec.coset_action[g][c], spec.schreier[g][c][y]);
    if (!is_permutation(perm))
      throw CocycleError("induced tables do not compose to a permutation");
    gens.push_back(std::move(perm));
  }
  return make_action(n, std::move(gens), spec.generator_names);
}

// Decides whether the induced action has a single orbit without building it:
// the base action must have one orbit, and the loop words of a spanning tree
// (one per generator and coset) must move fiber point 0 everywhere. This is
// the standard generating set of the point stabilizer's fiber image.
inline bool fiber_ergodic(const InducedActionSpec& spec) {
  detail::check_induced(spec);
  const std::uint32_t nc = spec.coset_count;
  const std::uint32_t nf = spec.fiber_size;
  const std::size_t ngen = spec.coset_action.size();

  std::vector<Perm> coset_inv(ngen);
  for (std::size_t g = 0; g < ngen; ++g) coset_inv[g] = inverse_perm(spec.coset_action[g]);

  // Spanning tree over cosets; path[c] transports the fiber over coset 0 to
  // the fiber over c.
  std::vector<Perm> path(nc);
  std::vector<char> seen(nc, 0);
  std::vector<Point> queue;
  path[0] = identity_perm(nf);
  seen[0] = 1;
  queue.push_back(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Point c = queue[head];
    for (std::size_t g = 0; g < ngen; ++g) {
      const Point fwd = spec.coset_action[g][c];
      if (!seen[fwd]) {
        seen[fwd] = 1;
        path[fwd] = compose(spec.schreier[g][c], path[c]);
        queue.push_back(fwd);
      }
      const Point back = coset_inv[g][c];
      if (!seen[back]) {
        seen[back] = 1;
        path[back] = compose(inverse_perm(spec.schreier[g][back]), path[c]);
        queue.push_back(back);
      }
    }
  }
  if (queue.size() != nc) return false;

  std::vector<Perm> loops;
  loops.reserve(nc * ngen);
  for (Point c = 0; c < nc; ++c)
    for (std::size_t g = 0; g < ngen; ++g) {
      const Point c2 = spec.coset_action[g][c];
      loops.push_back(compose(inverse_perm(path[c2]), compose(spec.schreier[g][c], path[c])));
    }

  const std::size_t forward = loops.size();
  for (std::size_t i = 0; i < forward; ++i) loops.push_back(inverse_perm(loops[i]));
  std::vector<char> hit(nf, 0);
  std::vector<Point> fq;
  hit[0] = 1;
  fq.push_back(0);
  for (std::size_t head = 0; head < fq.size(); ++head) {
    const Point y = fq[head];
    for (const Perm& l : loops)
      if (!hit[l[y]]) {
        hit[l[y]] = 1;
        fq.push_back(l[y]);
      }
  }
  return fq.size() == nf;
}

// Free-basis count for the loop words above: a spanning tree on n cosets with
// r generators leaves n*(r-1)+1 independent loops.
inline std::int64_t nielsen_schreier_rank(std::int64_t r, std::int64_t n) {
  if (r < 1 || n < 1) throw DomainError("nielsen_schreier_rank: rank and index must be positive");
  return n * (r - 1) + 1;
}

// Smallest-support distribution with entropy `target` (natural log), exact
// rational entries: one heavy atom tuned by bisection and rounded to a
// denominator of at most 10^6, the rest sharing the remainder equally. The
// achieved entropy is re-checked against the target.
inline std::vector<Rational> entropy_target_distribution(double target,
                                                         std::uint32_t max_support = 4096) {
  if (!(target >= 0)) throw DomainError("entropy_target_distribution: target must be >= 0");
  std::uint32_t m = 1;
  while (std::log(static_cast<double>(m)) < target - 1e-12) {
    if (m >= max_support)
      throw UnreachableEntropyError("entropy " + std::to_string(target) + " needs support above " +
                                    std::to_string(max_support));
    ++m;
  }
  if (m == 1) return {Rational(1)};

  const auto entropy_at = [m](double p) {
    const double q = (1.0 - p) / (m - 1);
    double h = 0.0;
    if (p > 0) h -= p * std::log(p);
    if (q > 0) h -= (1.0 - p) * std::log(q);
    return h;
  };
  // entropy_at falls strictly from log(m) at p = 1/m to 0 at p = 1.
  double lo = 1.0 / m, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (entropy_at(mid) >= target) lo = mid;
    else hi = mid;
  }
  double p_star = lo;

  // Best rational approximation with bounded denominator (continued
  // fractions, semiconvergent last step).
  const std::int64_t max_den = 1000000;
  Rational p(0);
  {
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = p_star;
    bool exact = false;
    while (true) {
      const auto a = static_cast<std::int64_t>(std::floor(v));
      if (q1 > 0 && a > (max_den - q0) / q1) break;
      const std::int64_t p2 = p0 + a * p1;
      const std::int64_t q2 = q0 + a * q1;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
      const double rem = v - static_cast<double>(a);
      if (rem < 1e-15 || v > 9e14) { exact = true; break; }
      v = 1.0 / rem;
    }
    if (exact) {
      p = Rational(p1, q1);
    } else {
      const std::int64_t k = (max_den - q0) / q1;
      const Rational semi(p0 + k * p1, q0 + k * q1);
      const Rational conv(p1, q1);
      const double d_semi = std::abs(boost::rational_cast<double>(semi) - p_star);
      const double d_conv = std::abs(boost::rational_cast<double>(conv) - p_star);
      p = d_conv <= d_semi ? conv : semi;
    }
  }
  if (p < Rational(1, m)) p = Rational(1, m);
  if (p >= Rational(1)) p = Rational(max_den - 1, max_den);

  std::vector<Rational> dist;
  dist.reserve(m);
  dist.push_back(p);
  const Rational rest = (Rational(1) - p) / Rational(m - 1);
  for (std::uint32_t i = 1; i < m; ++i) dist.push_back(rest);

  double achieved = 0.0;
  for (const Rational& mu : dist) {
    const double d = boost::rational_cast<double>(mu);
    if (d > 0) achieved -= d * std::log(d);
  }
  if (std::abs(achieved - target) > 1e-4)
    throw UnreachableEntropyError("achieved entropy " + std::to_string(achieved) +
                                  " misses target " + std::to_string(target));
  return dist;
}

}  // namespace fingen
