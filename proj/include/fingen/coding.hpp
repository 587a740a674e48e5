#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "fingen/partition.hpp"
#include "fingen/types.hpp"

namespace fingen {

// Target code lengths for a descending probability vector: the unique integer
// t with -log(m) - 1 < t <= -log(m), natural log. Computed as floor(-log m)
// in double; a rational below 1 never has an integer -log, so the floor is
// safe, and m = 1 maps to 0 exactly.
inline std::vector<int> krieger_lengths(const std::vector<Rational>& measures) {
  if (measures.empty()) throw DomainError("krieger_lengths: empty measure list");
  Rational total(0);
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (measures[i] <= Rational(0)) throw DomainError("krieger_lengths: measures must be positive");
    if (i > 0 && measures[i] > measures[i - 1])
      throw DomainError("krieger_lengths: measures must be sorted descending");
    total += measures[i];
  }
  if (total != Rational(1)) throw DomainError("krieger_lengths: measures must sum to 1");
  std::vector<int> t;
  t.reserve(measures.size());
  for (const Rational& m : measures) {
    if (m == Rational(1)) {
      t.push_back(0);
      continue;
    }
    t.push_back(static_cast<int>(std::floor(-std::log(boost::rational_cast<double>(m)))));
  }
  return t;
}

// Sum of 3^{-t} over the target lengths. Stays at or below e for lengths
// produced by krieger_lengths, because 3^{-t(m)} < e * m termwise.
inline double kraft_sum(const std::vector<int>& lengths) {
  double s = 0.0;
  for (int t : lengths) s += std::pow(3.0, -t);
  return s;
}

namespace detail {

inline std::int64_t pow3(int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= 3;
  return v;
}

// The index-th word of the given length over {1,2,3} in lexicographic order.
inline SymbolWord word_at(int length, std::int64_t index) {
  SymbolWord w(static_cast<std::size_t>(length), '1');
  for (int pos = length - 1; pos >= 0; --pos) {
    w[pos] = static_cast<char>('1' + index % 3);
    index /= 3;
  }
  return w;
}

}  // namespace detail

// Greedy injective assignment over {1,2,3} for a descending probability
// vector: class i receives the lexicographically least unused word of the
// least length >= t(i) with spare capacity (3^len words per length). Because
// targets are nondecreasing, a per-length bump counter yields exactly the
// lex-least unused word at each step.
inline std::vector<SymbolWord> assign_words(const std::vector<Rational>& measures) {
  const std::vector<int> targets = krieger_lengths(measures);
  if (targets.back() > 38) throw DomainError("assign_words: lengths out of range");
  std::map<int, std::int64_t> used;
  std::vector<SymbolWord> words;
  words.reserve(targets.size());
  for (int t : targets) {
    int len = t;
    while (used[len] >= detail::pow3(len)) ++len;
    words.push_back(detail::word_at(len, used[len]++));
  }
  return words;
}

// A complete code for a partition: per-class target lengths and words.
struct Code {
  std::vector<std::uint32_t> order;   // class ids, decreasing measure, ties by id
  std::vector<int> target_lengths;    // per class id
  std::vector<SymbolWord> words;      // per class id, letters '1'..'3'
};

inline Code assign_code(const Partition& p) {
  if (p.size() == 0) throw DomainError("assign_code: empty partition");
  Code code;
  code.order.resize(p.size());
  std::iota(code.order.begin(), code.order.end(), 0u);
  std::sort(code.order.begin(), code.order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (p.measures[a] != p.measures[b]) return p.measures[a] > p.measures[b];
    return a < b;
  });
  std::vector<Rational> sorted;
  sorted.reserve(p.size());
  for (std::uint32_t c : code.order) sorted.push_back(p.measures[c]);
  const std::vector<int> targets = krieger_lengths(sorted);
  const std::vector<SymbolWord> words = assign_words(sorted);
  code.target_lengths.resize(p.size());
  code.words.resize(p.size());
  for (std::size_t i = 0; i < code.order.size(); ++i) {
    code.target_lengths[code.order[i]] = targets[i];
    code.words[code.order[i]] = words[i];
  }
  return code;
}

// Expected word length under the partition's exact measures, in letters.
inline Rational average_length(const Code& code, const Partition& p) {
  if (code.words.size() != p.size()) throw DomainError("average_length: code/partition mismatch");
  Rational avg(0);
  for (std::size_t c = 0; c < p.size(); ++c)
    avg += p.measures[c] * Rational(static_cast<std::int64_t>(code.words[c].size()));
  return avg;
}

}  // namespace fingen
