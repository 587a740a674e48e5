#pragma once

// Independent reference computations for the test suite. Everything here is
// deliberately naive or high-precision: set-based scans instead of counters,
// 256-bit arithmetic instead of doubles, literal quantification over fully
// enumerated groups instead of fixpoints.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <mpfr.h>

#include <fingen/fingen.hpp>

namespace oracle {

// floor(-ln(p/q)) = floor(ln(q/p)) at 256-bit precision. A rational never
// equals e^k for k >= 1, so the floor is stable under tiny rounding error.
inline long floor_neg_log(std::int64_t p, std::int64_t q) {
  mpfr_t v;
  mpfr_init2(v, 256);
  mpfr_set_si(v, q, MPFR_RNDN);
  mpfr_div_si(v, v, p, MPFR_RNDN);
  mpfr_log(v, v, MPFR_RNDN);
  const long out = mpfr_get_si(v, MPFR_RNDD);
  mpfr_clear(v);
  return out;
}

inline double entropy(const std::vector<fingen::Rational>& measures) {
  mpfr_t sum, term;
  mpfr_init2(sum, 256);
  mpfr_init2(term, 256);
  mpfr_set_zero(sum, 1);
  for (const auto& mu : measures) {
    if (mu.numerator() == 0) continue;
    mpfr_set_si(term, static_cast<long>(mu.numerator()), MPFR_RNDN);
    mpfr_div_si(term, term, static_cast<long>(mu.denominator()), MPFR_RNDN);
    mpfr_t lg;
    mpfr_init2(lg, 256);
    mpfr_log(lg, term, MPFR_RNDN);
    mpfr_mul(term, term, lg, MPFR_RNDN);
    mpfr_sub(sum, sum, term, MPFR_RNDN);
    mpfr_clear(lg);
  }
  const double out = mpfr_get_d(sum, MPFR_RNDN);
  mpfr_clear(sum);
  mpfr_clear(term);
  return out;
}

// Set-based greedy code assignment: for each class in order, scan lengths
// from its target upward and, within a length, step through words in
// lexicographic order until one is unused.
inline std::vector<std::string> assign_words(const std::vector<fingen::Rational>& sorted_desc) {
  std::vector<std::string> out;
  std::map<std::size_t, std::set<std::string>> used;
  const auto pow3 = [](std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= 3;
    return r;
  };
  const auto next_lex = [](std::string w) {
    for (std::size_t i = w.size(); i-- > 0;) {
      if (w[i] < '3') {
        ++w[i];
        return w;
      }
      w[i] = '1';
    }
    return std::string();  // wrapped past the last word of this length
  };
  for (const auto& mu : sorted_desc) {
    auto len = static_cast<std::size_t>(
        floor_neg_log(static_cast<std::int64_t>(mu.numerator()),
                      static_cast<std::int64_t>(mu.denominator())));
    for (;; ++len) {
      if (used[len].size() >= pow3(len)) continue;
      std::string w(len, '1');
      while (!w.empty() && used[len].count(w)) w = next_lex(w);
      if (w.empty() && len > 0) continue;  // every word of this length taken
      out.push_back(w);
      used[len].insert(w);
      break;
    }
  }
  return out;
}

// Plain BFS group closure with words ordered shortlex; dedupe via ordered map.
struct Element {
  fingen::Perm perm;
  std::string word;
};

inline std::vector<Element> enumerate(const fingen::FiniteAction& act,
                                      std::size_t max_elements = 1 << 20) {
  std::vector<Element> out;
  std::map<fingen::Perm, bool> seen;
  std::queue<Element> frontier;
  Element root{fingen::identity_perm(act.points), "e"};
  seen[root.perm] = true;
  out.push_back(root);
  frontier.push(root);
  while (!frontier.empty() && out.size() < max_elements) {
    const Element cur = frontier.front();
    frontier.pop();
    for (std::size_t g = 0; g < act.generators.size(); ++g) {
      for (int inv = 0; inv < 2; ++inv) {
        const fingen::Perm& step = inv ? act.inverses[g] : act.generators[g];
        Element child;
        child.perm = fingen::compose(cur.perm, step);
        child.word = (cur.word == "e" ? "" : cur.word) + act.generator_names[g] +
                     (inv ? "'" : "");
        if (seen.emplace(child.perm, true).second) {
          out.push_back(child);
          frontier.push(child);
          if (out.size() >= max_elements) return out;
        }
      }
    }
  }
  return out;
}

// Literal symmetry: quantify over every distinct group element.
inline bool symmetric(const fingen::FiniteAction& act, const fingen::PointSet& a,
                      fingen::Point x, fingen::Point y) {
  for (const Element& e : enumerate(act))
    if (a.test(e.perm[x]) != a.test(e.perm[y])) return false;
  return true;
}

// Literal translate-join over the whole enumerated group.
inline fingen::Partition join_all_translates(const fingen::FiniteAction& act,
                                             const fingen::Partition& p) {
  fingen::Partition acc = p;
  for (const Element& e : enumerate(act))
    acc = fingen::join(acc, fingen::translate_partition(e.perm, p));
  return acc;
}

inline std::optional<std::pair<fingen::Point, fingen::Point>> generating_witness(
    const fingen::FiniteAction& act, const fingen::Partition& p) {
  const fingen::Partition full = join_all_translates(act, p);
  std::optional<std::pair<fingen::Point, fingen::Point>> best;
  for (const auto& cls : full.classes) {
    if (cls.size() < 2) continue;
    const std::pair<fingen::Point, fingen::Point> cand{cls[0], cls[1]};
    if (!best || cand < *best) best = cand;
  }
  return best;
}

// Random exact probability vector, sorted descending: up to max_classes
// integer weights over their common sum.
inline std::vector<fingen::Rational> random_distribution(std::uint64_t seed,
                                                         std::uint32_t max_classes) {
  std::mt19937_64 rng(seed);
  const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % max_classes);
  std::vector<std::int64_t> weights(k);
  std::int64_t total = 0;
  for (auto& w : weights) {
    w = 1 + static_cast<std::int64_t>(rng() % 200);
    total += w;
  }
  std::sort(weights.begin(), weights.end(), std::greater<>());
  std::vector<fingen::Rational> out;
  out.reserve(k);
  for (std::int64_t w : weights) out.emplace_back(w, total);
  return out;
}

}  // namespace oracle
