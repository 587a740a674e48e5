#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fingen/coding.hpp"
#include "fingen/generating.hpp"
#include "fingen/rearrange.hpp"
#include "fingen/types.hpp"

namespace fingen {

// Per-point code labels: point x carries the word of its class.
inline std::vector<SymbolWord> label_points(const Partition& p, const Code& code) {
  std::vector<SymbolWord> out(p.points);
  for (Point x = 0; x < p.points; ++x) out[x] = code.words[p.class_of[x]];
  return out;
}

struct CutoffChoice {
  std::uint32_t cutoff = 1;
  Rational tail;  // sum over lengths n > cutoff of n * (share of points with |label| = n)
};

// Least cutoff C >= 1 whose weighted tail mass drops below the threshold.
// All arithmetic is exact.
inline CutoffChoice choose_cutoff(const std::vector<SymbolWord>& labels,
                                  const Rational& threshold = Rational(1, 4)) {
  if (labels.empty()) throw DomainError("choose_cutoff: no labels");
  if (threshold <= Rational(0)) throw DomainError("choose_cutoff: threshold must be positive");
  const auto n = static_cast<std::int64_t>(labels.size());
  std::map<std::int64_t, std::int64_t> count_by_length;
  for (const auto& w : labels) ++count_by_length[static_cast<std::int64_t>(w.size())];
  for (std::uint32_t c = 1;; ++c) {
    Rational tail(0);
    for (const auto& [len, count] : count_by_length)
      if (len > c) tail += Rational(len * count, n);
    if (tail < threshold) return CutoffChoice{c, tail};
  }
}

struct TowerLevel {
  PointSet base;                // points whose label still extends past this level
  PartialBijection relocation;  // base -> fresh points; each target hosts one letter
  ExhaustTrace trace;
};

struct TowerSystem {
  std::uint32_t cutoff = 1;
  Rational threshold;
  Rational tail;
  PointSet b1;        // points whose label is longer than the cutoff
  PointSet occupied;  // b1 plus every relocation target
  std::vector<TowerLevel> levels;

  std::size_t depth() const { return levels.size(); }
  Rational overflow_mass(std::uint32_t points) const {
    Rational m(0);
    for (const auto& lv : levels)
      m += Rational(static_cast<std::int64_t>(lv.base.count()),
                    static_cast<std::int64_t>(points));
    return m;
  }
};

// Builds the relocation towers for the letters that do not fit under the
// cutoff. Level n handles letter cutoff+n of every label long enough to have
// one, matching its carriers with still-unoccupied points. The mass bounds
// hold for any cutoff produced by choose_cutoff with the default threshold;
// violations mean overflow letters cannot be placed reversibly, so they are
// reported instead of silently truncated.
inline TowerSystem build_towers(const FiniteAction& act, GroupEnumerator& en,
                                const std::vector<SymbolWord>& labels, std::uint32_t cutoff,
                                const Rational& threshold = Rational(1, 4)) {
  detail::require_ergodic(act, "build_towers");
  const std::uint32_t n = act.points;
  if (labels.size() != n) throw DomainError("build_towers: one label per point required");
  if (cutoff < 1) throw DomainError("build_towers: cutoff must be at least 1");
  for (const auto& w : labels)
    for (char ch : w)
      if (ch < '1' || ch > '3') throw DomainError("build_towers: labels must use letters 1..3");

  TowerSystem ts;
  ts.cutoff = cutoff;
  ts.threshold = threshold;
  {
    Rational tail(0);
    for (const auto& w : labels)
      if (w.size() > cutoff)
        tail += Rational(static_cast<std::int64_t>(w.size()), static_cast<std::int64_t>(n));
    ts.tail = tail;
  }

  ts.b1.resize(n);
  for (Point x = 0; x < n; ++x)
    if (labels[x].size() >= static_cast<std::size_t>(cutoff) + 1) ts.b1.set(x);
  if (Rational(static_cast<std::int64_t>(ts.b1.count()), static_cast<std::int64_t>(n)) >=
      threshold)
    throw TowerLeakError("base layer mass reaches the threshold");

  ts.occupied = ts.b1;
  for (std::uint32_t level = 1;; ++level) {
    PointSet base(n);
    for (Point x = 0; x < n; ++x)
      if (labels[x].size() >= static_cast<std::size_t>(cutoff) + level) base.set(x);
    if (base.none()) break;
    if (Rational(static_cast<std::int64_t>(ts.occupied.count()),
                 static_cast<std::int64_t>(n)) >= Rational(2) * threshold)
      throw TowerLeakError("occupied mass reaches twice the threshold before level " +
                           std::to_string(level));
    const PointSet free = ~ts.occupied;
    if (base.count() > free.count())
      throw TowerLeakError("level " + std::to_string(level) +
                           " needs more room than remains unoccupied");
    auto [pb, trace] = exhaust(act, en, base, free);
    if ((base - pb.domain).any())
      throw TowerLeakError("level " + std::to_string(level) + " left carriers unrelocated");
    ts.occupied |= pb.range;
    ts.levels.push_back(TowerLevel{std::move(base), std::move(pb), std::move(trace)});
  }
  return ts;
}

// Shapes a rewritten string can take. Strings are over {1,2,3,4}; the letter
// 4 never occurs in a code word, so it marks structure:
//   base:         no 4, exactly cutoff letters (a label cut down to the cutoff)
//   plain:        w4 (a short label, terminated)
//   more:         w4s (this point hosts letter s of a longer label, which
//                 continues at the next level)
//   final_split:  w4s4 (hosts the longer label's last letter; w shorter than
//                 the cutoff)
//   final_packed: ws4 with |w| = cutoff (hosts the last letter; appending 4s4
//                 would overshoot cutoff+2)
enum class LabelShape { base, plain, more, final_split, final_packed };

struct RelabelStats {
  std::size_t base = 0;
  std::size_t plain = 0;
  std::size_t more = 0;
  std::size_t final_split = 0;
  std::size_t final_packed = 0;
  std::size_t max_length = 0;
};

struct RelabelResult {
  std::vector<SymbolWord> relabeled;
  Partition beta;
  RelabelStats stats;
};

// Rewrites the labels over {1,2,3,4} so every string has length at most
// cutoff+2. Points with long labels keep their first `cutoff` letters; the
// cut-off letters live on hosting points chosen by the towers; every other
// point keeps its label plus a terminal 4.
inline RelabelResult relabel(const FiniteAction& act, const std::vector<SymbolWord>& labels,
                             const TowerSystem& ts) {
  const std::uint32_t n = act.points;
  if (labels.size() != n) throw DomainError("relabel: one label per point required");
  const std::uint32_t c = ts.cutoff;

  RelabelResult out;
  out.relabeled.resize(n);
  std::vector<bool> done(n, false);

  for (Point x = 0; x < n; ++x) {
    if (!ts.b1.test(x)) continue;
    out.relabeled[x] = labels[x].substr(0, c);
    done[x] = true;
    ++out.stats.base;
  }
  for (std::size_t li = 0; li < ts.levels.size(); ++li) {
    const TowerLevel& lv = ts.levels[li];
    const std::size_t letter_index = c + li;  // 0-based position hosted at this level
    for (auto y = lv.relocation.range.find_first(); y != PointSet::npos;
         y = lv.relocation.range.find_next(y)) {
      const Point host = static_cast<Point>(y);
      const Point src = lv.relocation.invert(host);
      if (done[host]) throw InternalError("relabel: point hosts two letters");
      const char hosted = labels[src][letter_index];
      const bool more = labels[src].size() > letter_index + 1;
      const SymbolWord& own = labels[host];
      if (more) {
        out.relabeled[host] = own + '4' + hosted;
        ++out.stats.more;
      } else if (own.size() == c) {
        out.relabeled[host] = own + hosted + '4';
        ++out.stats.final_packed;
      } else {
        out.relabeled[host] = own + '4' + hosted + '4';
        ++out.stats.final_split;
      }
      done[host] = true;
    }
  }
  for (Point x = 0; x < n; ++x) {
    if (done[x]) continue;
    out.relabeled[x] = labels[x] + '4';
    ++out.stats.plain;
  }
  for (const auto& w : out.relabeled)
    out.stats.max_length = std::max(out.stats.max_length, w.size());
  if (out.stats.max_length > static_cast<std::size_t>(c) + 2)
    throw InternalError("relabel: a string exceeded cutoff+2");

  std::vector<std::uint32_t> ids(n);
  std::unordered_map<SymbolWord, std::uint32_t> by_word;
  for (Point x = 0; x < n; ++x) {
    auto [it, fresh] =
        by_word.try_emplace(out.relabeled[x], static_cast<std::uint32_t>(by_word.size()));
    ids[x] = it->second;
    (void)fresh;
  }
  out.beta = partition_from_labels(n, ids);
  return out;
}

struct DecodeResult {
  std::vector<SymbolWord> labels;
  std::uint32_t cutoff = 0;  // 0 when nothing was cut (no 4-free string, no hint)
  std::size_t levels = 0;
};

namespace detail {

inline LabelShape classify_label(const SymbolWord& s, std::uint32_t c) {
  std::size_t fours = 0;
  for (char ch : s) {
    if (ch == '4') ++fours;
    else if (ch < '1' || ch > '3')
      throw MalformedLabelsError("label uses a letter outside 1..4");
  }
  const std::size_t len = s.size();
  if (fours == 0) {
    if (len != c) throw MalformedLabelsError("4-free label differs from the cutoff length");
    return LabelShape::base;
  }
  if (fours == 1 && s.back() == '4') {
    if (len <= static_cast<std::size_t>(c) + 1) return LabelShape::plain;
    if (len == static_cast<std::size_t>(c) + 2) return LabelShape::final_packed;
    throw MalformedLabelsError("terminated label longer than cutoff+2");
  }
  if (fours == 1 && len >= 2 && s[len - 2] == '4') {
    if (len > static_cast<std::size_t>(c) + 2)
      throw MalformedLabelsError("hosting label longer than cutoff+2");
    return LabelShape::more;
  }
  if (fours == 2 && len >= 3 && s.back() == '4' && s[len - 3] == '4') {
    if (len > static_cast<std::size_t>(c) + 2)
      throw MalformedLabelsError("hosting label longer than cutoff+2");
    return LabelShape::final_split;
  }
  throw MalformedLabelsError("label does not match any rewrite shape");
}

}  // namespace detail

// Inverts relabel without any side table. The 4-free strings are exactly the
// cut-down labels, and their common length is the cutoff; every level's
// relocation is replayed through the same deterministic matching, and the
// hosted letters are stitched back onto their sources in level order.
inline DecodeResult decode(const FiniteAction& act, GroupEnumerator& en,
                           const std::vector<SymbolWord>& relabeled,
                           std::optional<std::uint32_t> cutoff_hint = {}) {
  detail::require_ergodic(act, "decode");
  const std::uint32_t n = act.points;
  if (relabeled.size() != n) throw DomainError("decode: one label per point required");

  PointSet b1(n);
  for (Point x = 0; x < n; ++x) {
    const SymbolWord& w = relabeled[x];
    bool has_marker = false;
    for (char ch : w) {
      if (ch == '4') has_marker = true;
      else if (ch < '1' || ch > '3')
        throw MalformedLabelsError("label uses a letter outside 1..4");
    }
    if (!has_marker) b1.set(x);
  }

  if (b1.none()) {
    // Nothing was cut down, so nothing was hosted: every string must be a
    // terminated label w4. The cutoff is unrecoverable and unneeded; a hint
    // still bounds the lengths.
    DecodeResult out;
    out.cutoff = cutoff_hint.value_or(0);
    out.labels.resize(n);
    for (Point x = 0; x < n; ++x) {
      const SymbolWord& s = relabeled[x];
      if (s.empty() || s.back() != '4' ||
          std::count(s.begin(), s.end(), '4') != 1)
        throw MalformedLabelsError("hosting marks present but no label was cut down");
      if (cutoff_hint && s.size() > static_cast<std::size_t>(*cutoff_hint) + 1)
        throw MalformedLabelsError("terminated label longer than cutoff+1");
      out.labels[x] = s.substr(0, s.size() - 1);
    }
    return out;
  }

  const auto first_base = static_cast<Point>(b1.find_first());
  const auto c = static_cast<std::uint32_t>(relabeled[first_base].size());
  if (c < 1) throw MalformedLabelsError("cut-down labels imply a cutoff below 1");
  if (cutoff_hint && *cutoff_hint != c)
    throw MalformedLabelsError("cutoff hint disagrees with the 4-free labels");

  std::vector<LabelShape> shape(n);
  for (Point x = 0; x < n; ++x) shape[x] = detail::classify_label(relabeled[x], c);

  DecodeResult out;
  out.cutoff = c;
  out.labels.resize(n);
  std::vector<SymbolWord> suffix(n);  // letters recovered past the cutoff, per source
  PointSet occupied = b1;
  PointSet hosts(n);
  PointSet base = b1;
  while (base.any()) {
    if (out.levels >= n) throw InternalError("decode: relocation replay failed to terminate");
    const PointSet free = ~occupied;
    auto [pb, trace] = exhaust(act, en, base, free);
    (void)trace;
    if ((base - pb.domain).any())
      throw MalformedLabelsError("labels demand more hosting room than exists");
    PointSet next(n);
    for (auto y = pb.range.find_first(); y != PointSet::npos; y = pb.range.find_next(y)) {
      const Point host = static_cast<Point>(y);
      const Point src = pb.invert(host);
      const SymbolWord& s = relabeled[host];
      switch (shape[host]) {
        case LabelShape::more:
          suffix[src] += s.back();
          next.set(src);
          break;
        case LabelShape::final_split:
        case LabelShape::final_packed:
          suffix[src] += s[s.size() - 2];
          break;
        default:
          throw MalformedLabelsError("replayed host carries no hosted letter");
      }
      hosts.set(host);
    }
    occupied |= pb.range;
    base = next;
    ++out.levels;
  }

  for (Point x = 0; x < n; ++x) {
    const SymbolWord& s = relabeled[x];
    switch (shape[x]) {
      case LabelShape::base:
        out.labels[x] = s + suffix[x];
        break;
      case LabelShape::plain:
        out.labels[x] = s.substr(0, s.size() - 1);
        break;
      case LabelShape::more:
        if (!hosts.test(x)) throw MalformedLabelsError("stray hosting label");
        out.labels[x] = s.substr(0, s.size() - 2);
        break;
      case LabelShape::final_split:
        if (!hosts.test(x)) throw MalformedLabelsError("stray hosting label");
        out.labels[x] = s.substr(0, s.size() - 3);
        break;
      case LabelShape::final_packed:
        if (!hosts.test(x)) throw MalformedLabelsError("stray hosting label");
        out.labels[x] = s.substr(0, c);
        break;
    }
  }
  return out;
}

struct SynthesisResult {
  GeneratingCheck alpha_check;
  Code code;
  std::vector<SymbolWord> labels;
  CutoffChoice cutoff;
  TowerSystem towers;
  RelabelResult relabeled;
  bool roundtrip_ok = false;
  GeneratingCheck beta_check;
};

// Full pipeline: check the input partition generates, code its classes,
// relocate the letters that overflow the cutoff, rewrite every label to
// length <= cutoff+2, and confirm by decoding that nothing was lost and the
// rewritten partition still generates.
inline SynthesisResult synthesize(const FiniteAction& act, const Partition& alpha,
                                  const Rational& threshold = Rational(1, 4),
                                  bool verify_relocations = false) {
  detail::require_ergodic(act, "synthesize");
  SynthesisResult r;
  r.alpha_check = is_generating(act, alpha);
  if (!r.alpha_check.generating) {
    std::string msg = "the input partition does not generate";
    if (r.alpha_check.witness)
      msg += ": points " + std::to_string(r.alpha_check.witness->first) + " and " +
             std::to_string(r.alpha_check.witness->second) + " are never separated";
    throw NotGeneratingError(msg);
  }
  r.code = assign_code(alpha);
  r.labels = label_points(alpha, r.code);
  r.cutoff = choose_cutoff(r.labels, threshold);

  GroupEnumerator en(act);
  r.towers = build_towers(act, en, r.labels, r.cutoff.cutoff, threshold);
  if (verify_relocations) {
    PointSet occupied = r.towers.b1;
    for (const auto& lv : r.towers.levels) {
      const PointSet free = ~occupied;
      verify_rearrangement(act, lv.base, free, lv.relocation, lv.trace);
      occupied |= lv.relocation.range;
    }
  }
  r.relabeled = relabel(act, r.labels, r.towers);

  const DecodeResult back = decode(act, en, r.relabeled.relabeled, r.cutoff.cutoff);
  r.roundtrip_ok = back.labels == r.labels;
  if (!r.roundtrip_ok) throw InternalError("synthesize: decode did not invert the rewrite");

  r.beta_check = is_generating(act, r.relabeled.beta);
  if (!r.beta_check.generating)
    throw InternalError("synthesize: the rewritten partition does not generate");
  return r;
}

}  // namespace fingen
