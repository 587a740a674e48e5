#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fingen/generating.hpp"
#include "fingen/group.hpp"
#include "fingen/types.hpp"

namespace fingen {

// A measure-preserving matching between two subsets, assembled from finitely
// many translation blocks. Block k moves its sources by one group element, and
// the contract below ties the construction to the exhaustion that built it:
//
//   (i)   domain is contained in A, range in B;
//   (ii)  at least one of A \ domain, B \ range is empty;
//   (iii) pairs symmetric for both A and B stay symmetric for domain and range;
//   (iv)  every source maps inside its own orbit;
//   (v)   pairs symmetric for A and B that both lie in the domain are moved by
//         one shared group element (they share a block).
struct TranslationBlock {
  PointSet sources;        // moved by `element`
  GroupElement element;
  std::size_t element_index = 0;  // position in the shortlex enumeration
};

struct PartialBijection {
  PointSet domain;  // union of block sources
  PointSet range;   // union of block images
  std::vector<TranslationBlock> blocks;
  std::vector<std::int32_t> forward;   // point -> image, -1 outside domain
  std::vector<std::int32_t> backward;  // point -> source, -1 outside range

  Point apply(Point x) const {
    if (x >= forward.size() || forward[x] < 0) throw DomainError("apply: point outside domain");
    return static_cast<Point>(forward[x]);
  }
  Point invert(Point y) const {
    if (y >= backward.size() || backward[y] < 0) throw DomainError("invert: point outside range");
    return static_cast<Point>(backward[y]);
  }
};

// One matching step: the enumeration-least group element moving part of A
// into B, with the moved sets.
struct MatchStep {
  std::optional<GroupElement> element;  // absent when no element hits
  std::size_t element_index = 0;
  PointSet sources;  // A ∩ element^{-1}·B
  PointSet images;   // element·sources = (element·A) ∩ B
};

struct ExhaustRecord {
  PointSet a_before;
  PointSet b_before;
  std::optional<GroupElement> element;
  std::size_t element_index = 0;
  PointSet sources;
  PointSet images;
};

struct ExhaustTrace {
  std::vector<ExhaustRecord> steps;
  PointSet a_left;
  PointSet b_left;
};

// Finds the enumeration-least element at index >= scan_from whose translate of
// `a` meets `b`, together with the matched sets. Empty inputs yield no element.
inline MatchStep exhaust_step(GroupEnumerator& en, const PointSet& a, const PointSet& b,
                              std::size_t scan_from = 0) {
  const std::uint32_t n = en.action().points;
  if (a.size() != n || b.size() != n) throw DomainError("exhaust_step: set size mismatch");
  MatchStep step;
  step.sources.resize(n);
  step.images.resize(n);
  const auto idx = en.first_hit(a, b, scan_from);
  if (!idx) return step;
  const GroupElement& e = en.at(*idx);
  for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) {
    const Point y = e.perm[x];
    if (b.test(y)) {
      step.sources.set(x);
      step.images.set(y);
    }
  }
  step.element = e;
  step.element_index = *idx;
  return step;
}

// Repeated matching until one side is used up. Each step takes the least
// element with a hit against the current remainders; the chosen indices are
// strictly increasing, so the scan resumes where it left off. On a
// single-orbit action the loop can only stop with an empty remainder.
inline std::pair<PartialBijection, ExhaustTrace> exhaust(const FiniteAction& act,
                                                         GroupEnumerator& en,
                                                         const PointSet& a,
                                                         const PointSet& b) {
  detail::require_ergodic(act, "exhaust");
  const std::uint32_t n = act.points;
  if (a.size() != n || b.size() != n) throw DomainError("exhaust: set size mismatch");

  PartialBijection pb;
  pb.domain.resize(n);
  pb.range.resize(n);
  pb.forward.assign(n, -1);
  pb.backward.assign(n, -1);
  ExhaustTrace trace;

  PointSet a_rem = a;
  PointSet b_rem = b;
  std::size_t scan_from = 0;
  while (a_rem.any() && b_rem.any()) {
    MatchStep step = exhaust_step(en, a_rem, b_rem, scan_from);
    if (!step.element)
      throw InternalError("exhaust: no translation hit although both remainders are nonempty");
    trace.steps.push_back(
        ExhaustRecord{a_rem, b_rem, step.element, step.element_index, step.sources, step.images});
    for (auto x = step.sources.find_first(); x != PointSet::npos;
         x = step.sources.find_next(x)) {
      const Point y = step.element->perm[x];
      pb.forward[x] = static_cast<std::int32_t>(y);
      pb.backward[y] = static_cast<std::int32_t>(x);
    }
    pb.domain |= step.sources;
    pb.range |= step.images;
    pb.blocks.push_back(TranslationBlock{step.sources, *step.element, step.element_index});
    a_rem -= step.sources;
    b_rem -= step.images;
    scan_from = step.element_index + 1;
  }
  trace.a_left = a_rem;
  trace.b_left = b_rem;
  return {std::move(pb), std::move(trace)};
}

struct RearrangeSummary {
  std::size_t steps = 0;
  std::size_t symmetric_classes = 0;  // classes of pairs symmetric for both inputs
  std::size_t checked_pairs = 0;      // symmetric pairs covered by the class check
};

namespace detail {

inline Partition cut_partition(std::uint32_t points, const PointSet& a, const PointSet& b) {
  std::vector<std::uint32_t> labels(points);
  for (Point x = 0; x < points; ++x)
    labels[x] = (a.test(x) ? 2u : 0u) | (b.test(x) ? 1u : 0u);
  return partition_from_labels(points, labels);
}

}  // namespace detail

// Verifies the contract of a matching produced by exhaust against its inputs.
// Pairs that are symmetric for both A and B are exactly the classmates in the
// orbit-join of the {A,B}-cut partition, so the symmetry checks run on those
// classes instead of enumerating group elements.
inline RearrangeSummary verify_rearrangement(const FiniteAction& act, const PointSet& a,
                                             const PointSet& b, const PartialBijection& pb,
                                             const ExhaustTrace& trace) {
  const std::uint32_t n = act.points;
  RearrangeSummary summary;
  summary.steps = trace.steps.size();

  if (!pb.domain.is_subset_of(a) || !pb.range.is_subset_of(b))
    throw ClauseViolation("property (i): matched sets leak outside the inputs");
  if ((a - pb.domain).any() && (b - pb.range).any())
    throw ClauseViolation("property (ii): both remainders are nonempty");

  // Structure: disjoint blocks covering the domain, consistent maps, strictly
  // increasing element choices.
  PointSet seen_sources(n), seen_images(n);
  for (std::size_t k = 0; k < pb.blocks.size(); ++k) {
    const TranslationBlock& blk = pb.blocks[k];
    if ((blk.sources & seen_sources).any())
      throw ClauseViolation("blocks overlap on sources");
    seen_sources |= blk.sources;
    for (auto x = blk.sources.find_first(); x != PointSet::npos;
         x = blk.sources.find_next(x)) {
      const Point y = blk.element.perm[x];
      if (seen_images.test(y)) throw ClauseViolation("blocks overlap on images");
      seen_images.set(y);
      if (pb.forward[x] != static_cast<std::int32_t>(y) ||
          pb.backward[y] != static_cast<std::int32_t>(x))
        throw ClauseViolation("block maps disagree with the stored bijection");
    }
    if (k > 0 && pb.blocks[k - 1].element_index >= blk.element_index)
      throw ClauseViolation("element choices are not strictly increasing");
  }
  if (seen_sources != pb.domain || seen_images != pb.range)
    throw ClauseViolation("blocks do not cover the matched sets");
  if (pb.domain.count() != pb.range.count())
    throw ClauseViolation("matched sets have different sizes");
  if (trace.steps.size() != pb.blocks.size() || trace.a_left != a - pb.domain ||
      trace.b_left != b - pb.range)
    throw ClauseViolation("trace disagrees with the matched sets");

  // Property (iv): images stay in the source's orbit.
  const auto orbs = orbits(act);
  std::vector<std::uint32_t> orbit_of(n);
  for (std::size_t i = 0; i < orbs.size(); ++i)
    for (Point x : orbs[i]) orbit_of[x] = static_cast<std::uint32_t>(i);
  for (auto x = pb.domain.find_first(); x != PointSet::npos; x = pb.domain.find_next(x)) {
    if (orbit_of[pb.apply(static_cast<Point>(x))] != orbit_of[x])
      throw ClauseViolation("property (iv): image left the source's orbit");
  }

  // Properties (iii) and (v) over all pairs symmetric for both inputs.
  const Partition sym_ab = orbit_join(act, detail::cut_partition(n, a, b));
  const Partition sym_dr = orbit_join(act, detail::cut_partition(n, pb.domain, pb.range));
  summary.symmetric_classes = sym_ab.size();
  std::vector<std::int32_t> block_of(n, -1);
  for (std::size_t k = 0; k < pb.blocks.size(); ++k)
    for (auto x = pb.blocks[k].sources.find_first(); x != PointSet::npos;
         x = pb.blocks[k].sources.find_next(x))
      block_of[x] = static_cast<std::int32_t>(k);
  for (const auto& cls : sym_ab.classes) {
    if (cls.size() < 2) continue;
    summary.checked_pairs += cls.size() * (cls.size() - 1) / 2;
    const Point rep = cls.front();
    std::int32_t rep_block = -2;
    for (Point x : cls) {
      if (sym_dr.class_of[x] != sym_dr.class_of[rep])
        throw ClauseViolation("property (iii): pair " + std::to_string(rep) + "," +
                              std::to_string(x) + " lost its symmetry");
      if (pb.domain.test(x)) {
        if (rep_block == -2) rep_block = block_of[x];
        if (block_of[x] != rep_block)
          throw ClauseViolation("property (v): symmetric sources " + std::to_string(x) +
                                " moved by different elements");
      }
    }
  }
  return summary;
}

}  // namespace fingen
