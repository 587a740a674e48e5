#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "fingen/action.hpp"
#include "fingen/types.hpp"

namespace fingen {

// Letters of witness words. Letter 2*i is generator i, letter 2*i+1 is its
// inverse, and the letter order is the alphabet order used for shortlex:
// a < a' < b < b' < ...
using WordLetter = std::uint32_t;
using Word = std::vector<WordLetter>;

inline std::size_t letter_count(const FiniteAction& a) { return 2 * a.generators.size(); }

inline const Perm& letter_perm(const FiniteAction& a, WordLetter l) {
  return (l & 1u) ? a.inverses[l >> 1] : a.generators[l >> 1];
}

// An element of the finite permutation image of the acting group, together
// with its shortlex-least witness word. A word l1 l2 ... lk evaluates to
// letter_perm(l1) ∘ letter_perm(l2) ∘ ... ∘ letter_perm(lk).
struct GroupElement {
  Perm perm;
  Word word;
};

inline std::string word_string(const FiniteAction& a, const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (WordLetter l : w) {
    out += a.generator_names[l >> 1];
    if (l & 1u) out += '\'';
  }
  return out;
}

// Streams the distinct elements of the generated permutation group in shortlex
// witness order, growing the breadth-first search only as far as callers ask.
// The enumeration order is a pure function of the action, so every consumer
// sees the same indexed sequence. `max_elements` is a safety valve for
// runaway groups; the workloads in this repository stay far below it.
class GroupEnumerator {
public:
  explicit GroupEnumerator(const FiniteAction& action, std::size_t max_elements = 500000)
      : action_(&action), cap_(max_elements) {
    GroupElement identity{identity_perm(action.points), {}};
    index_.emplace(identity.perm, 0u);
    elems_.push_back(std::move(identity));
  }

  // The enumerator refers to the action; a temporary would dangle.
  explicit GroupEnumerator(FiniteAction&&, std::size_t = 500000) = delete;

  const FiniteAction& action() const { return *action_; }

  // Extends the enumeration if needed. False means the group has fewer than
  // i + 1 elements.
  bool has(std::size_t i) {
    while (elems_.size() <= i && grow()) {
    }
    return i < elems_.size();
  }

  const GroupElement& at(std::size_t i) {
    if (!has(i)) throw DomainError("element index beyond group order");
    return elems_[i];
  }

  std::size_t discovered() const { return elems_.size(); }

  bool complete() {
    while (!done() && grow()) {
    }
    return done();
  }

  // Full group size; forces complete enumeration.
  std::size_t order() {
    complete();
    return elems_.size();
  }

  // Least element index >= from whose permutation moves some point of `a`
  // into `b`. Empty sets short-circuit to "none" without growing the search.
  std::optional<std::size_t> first_hit(const PointSet& a, const PointSet& b,
                                       std::size_t from = 0) {
    if (a.none() || b.none()) return std::nullopt;
    for (std::size_t i = from; has(i); ++i) {
      const Perm& p = elems_[i].perm;
      for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) {
        if (b.test(p[x])) return i;
      }
    }
    return std::nullopt;
  }

private:
  struct PermHash {
    std::size_t operator()(const Perm& p) const {
      return boost::hash_range(p.begin(), p.end());
    }
  };

  // All discovered elements fully expanded: nothing new can appear.
  bool done() const { return next_parent_ >= elems_.size(); }

  // Appends the next undiscovered element in shortlex order, if any.
  bool grow() {
    const std::size_t letters = letter_count(*action_);
    while (next_parent_ < elems_.size()) {
      if (next_letter_ >= letters) {
        ++next_parent_;
        next_letter_ = 0;
        continue;
      }
      const std::size_t parent = next_parent_;
      const WordLetter letter = static_cast<WordLetter>(next_letter_++);
      Perm child = compose(elems_[parent].perm, letter_perm(*action_, letter));
      if (index_.contains(child)) continue;
      if (elems_.size() >= cap_)
        throw EnumerationLimitError("group enumeration exceeded " + std::to_string(cap_) +
                                    " elements");
      Word w = elems_[parent].word;
      w.push_back(letter);
      index_.emplace(child, static_cast<std::uint32_t>(elems_.size()));
      elems_.push_back(GroupElement{std::move(child), std::move(w)});
      return true;
    }
    return false;
  }

  const FiniteAction* action_;
  std::size_t cap_;
  std::vector<GroupElement> elems_;
  std::unordered_map<Perm, std::uint32_t, PermHash> index_;
  std::size_t next_parent_ = 0;
  std::size_t next_letter_ = 0;
};

// Distinct group elements in shortlex witness order. Without `limit` the whole
// image group is materialized, so reserve that for small systems; with `limit`
// only the first min(limit, order) elements are produced.
inline std::vector<GroupElement> enumerate_group(const FiniteAction& a,
                                                 std::optional<std::size_t> limit = {}) {
  GroupEnumerator en(a);
  std::vector<GroupElement> out;
  for (std::size_t i = 0; (!limit || i < *limit) && en.has(i); ++i) out.push_back(en.at(i));
  return out;
}

}  // namespace fingen
