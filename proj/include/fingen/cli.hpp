#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "fingen/fixtures.hpp"
#include "fingen/io.hpp"
#include "fingen/synthesis.hpp"

namespace fingen {

enum class Command { synthesize, verify, entropy, roundtrip, demo };

struct RunConfig {
  Command command = Command::demo;
  std::string input_path;
  std::string output_path;  // consumed by the executable, not by run()
  Rational tail_threshold{1, 4};
  bool trace = false;
  bool self_check = false;
  std::uint64_t seed = 1;
  std::uint32_t demo_points = 120;
  std::uint32_t demo_generators = 0;  // 0 draws the rotation action
  std::uint32_t demo_classes = 0;     // 0 separates every point
};

struct RunOutcome {
  int status = 0;
  std::string report;      // empty when status != 0
  std::string error_json;  // empty when status == 0
};

namespace detail {

inline void report_system(Report& rep, const FiniteAction& act) {
  rep.section("system");
  rep.kv("points", act.points);
  rep.kv("generators", act.generators.size());
  std::string names;
  for (std::size_t i = 0; i < act.generator_names.size(); ++i) {
    if (i) names += ',';
    names += act.generator_names[i];
  }
  rep.kv("generator_names", names);
  rep.kv("ergodic", act.ergodic);
}

inline void report_partition(Report& rep, const std::string& name, const Partition& p) {
  rep.section(name);
  rep.kv("classes", p.size());
  rep.kv("entropy", shannon_entropy(p));
  std::vector<std::uint64_t> sizes;
  sizes.reserve(p.size());
  for (const auto& cls : p.classes) sizes.push_back(cls.size());
  rep.kv_list("class_sizes", sizes);
}

inline void report_code(Report& rep, const Code& code, const Partition& p) {
  rep.section("code");
  rep.kv("kraft_sum", kraft_sum(code.target_lengths));
  rep.kv("average_length", average_length(code, p));
  rep.kv_list("target_lengths", code.target_lengths);
  for (std::size_t c = 0; c < code.words.size(); ++c)
    rep.kv_word("class_" + std::to_string(c), code.words[c]);
}

inline void report_generating(Report& rep, const GeneratingCheck& check) {
  rep.section("generating");
  rep.kv("generating", check.generating);
  rep.kv("by_join", check.by_join);
  rep.kv("by_pairs", check.by_pairs);
  if (check.witness)
    rep.kv("unseparated_pair",
           std::to_string(check.witness->first) + "," + std::to_string(check.witness->second));
}

inline void report_synthesis(Report& rep, const SynthesisResult& r, const Rational& threshold) {
  rep.section("synthesis");
  rep.kv("threshold", threshold);
  rep.kv("cutoff", r.cutoff.cutoff);
  rep.kv("tail_mass", r.cutoff.tail);
  rep.kv("base_points", r.towers.b1.count());
  rep.kv("levels", r.towers.depth());
  std::vector<std::uint64_t> level_sizes;
  for (const auto& lv : r.towers.levels) level_sizes.push_back(lv.base.count());
  rep.kv_list("level_sizes", level_sizes);
  rep.kv("occupied_points", r.towers.occupied.count());
  rep.kv("overflow_mass", r.towers.overflow_mass(r.towers.b1.size()));
  rep.kv("max_label_length", r.relabeled.stats.max_length);
  rep.kv("plain_labels", r.relabeled.stats.plain);
  rep.kv("hosting_continued", r.relabeled.stats.more);
  rep.kv("hosting_final", r.relabeled.stats.final_split);
  rep.kv("hosting_final_packed", r.relabeled.stats.final_packed);
  rep.kv("base_labels", r.relabeled.stats.base);
}

inline void report_beta(Report& rep, const SynthesisResult& r) {
  rep.section("beta");
  rep.kv("classes", r.relabeled.beta.size());
  rep.kv("entropy", shannon_entropy(r.relabeled.beta));
  rep.kv("generating", r.beta_check.generating);
  rep.kv("by_join", r.beta_check.by_join);
  rep.kv("by_pairs", r.beta_check.by_pairs);
}

inline void report_labels(Report& rep, const std::vector<SymbolWord>& words) {
  rep.section("relabel");
  for (std::size_t x = 0; x < words.size(); ++x)
    rep.kv_word("point_" + std::to_string(x), words[x]);
}

inline void report_trace(Report& rep, const FiniteAction& act, const TowerSystem& ts) {
  rep.section("trace");
  for (std::size_t li = 0; li < ts.levels.size(); ++li) {
    const auto& lv = ts.levels[li];
    rep.kv("level_" + std::to_string(li + 1) + "_steps", lv.trace.steps.size());
    std::string elems;
    for (std::size_t s = 0; s < lv.trace.steps.size(); ++s) {
      if (s) elems += ',';
      elems += word_string(act, lv.trace.steps[s].element->word);
      elems += ':';
      elems += std::to_string(lv.trace.steps[s].sources.count());
    }
    rep.kv("level_" + std::to_string(li + 1) + "_elements", elems);
  }
}

inline void report_self_check(Report& rep, const FiniteAction& act, const SynthesisResult& r) {
  rep.section("self_check");
  PointSet occupied = r.towers.b1;
  for (std::size_t li = 0; li < r.towers.levels.size(); ++li) {
    const auto& lv = r.towers.levels[li];
    const PointSet free = ~occupied;
    const RearrangeSummary s = verify_rearrangement(act, lv.base, free, lv.relocation, lv.trace);
    rep.kv("level_" + std::to_string(li + 1) + "_symmetric_classes", s.symmetric_classes);
    rep.kv("level_" + std::to_string(li + 1) + "_checked_pairs", s.checked_pairs);
    occupied |= lv.relocation.range;
  }
  rep.kv("relocations", "verified");
  rep.kv("roundtrip", r.roundtrip_ok);
  rep.kv("generating_methods_agree",
         r.alpha_check.by_join == r.alpha_check.by_pairs &&
             r.beta_check.by_join == r.beta_check.by_pairs);
}

inline Partition partition_or_pointwise(const SystemFile& sf) {
  return sf.partition ? *sf.partition : pointwise_partition(sf.action.points);
}

// Number of strings over {1,2,3,4} of length at most cutoff+2, saturating
// instead of overflowing; every rewritten label lives in that set.
inline std::uint64_t class_bound(std::uint32_t cutoff) {
  std::uint64_t total = 1, pow = 1;
  for (std::uint32_t k = 1; k <= cutoff + 2; ++k) {
    if (pow > (std::numeric_limits<std::uint64_t>::max() - total) / 4)
      return std::numeric_limits<std::uint64_t>::max();
    pow *= 4;
    total += pow;
  }
  return total;
}

inline int status_for(const Error& e) {
  const std::string code = e.code();
  if (code == "ParseError") return 2;
  if (code == "NonErgodic") return 3;
  if (code == "NotGenerating") return 4;
  return 5;
}

}  // namespace detail

inline RunOutcome run(const RunConfig& cfg) {
  RunOutcome out;
  Report rep;
  try {
    if (cfg.tail_threshold <= Rational(0) || cfg.tail_threshold >= Rational(1))
      throw ParseError("tail threshold must lie strictly between 0 and 1");
    switch (cfg.command) {
      case Command::verify: {
        const SystemFile sf = load_system(cfg.input_path);
        const Partition alpha = detail::partition_or_pointwise(sf);
        detail::report_system(rep, sf.action);
        detail::report_partition(rep, "alpha", alpha);
        detail::report_generating(rep, is_generating(sf.action, alpha));
        break;
      }
      case Command::entropy: {
        const SystemFile sf = load_system(cfg.input_path);
        const Partition alpha = detail::partition_or_pointwise(sf);
        detail::report_system(rep, sf.action);
        detail::report_partition(rep, "alpha", alpha);
        detail::report_code(rep, assign_code(alpha), alpha);
        break;
      }
      case Command::roundtrip: {
        const SystemFile sf = load_system(cfg.input_path);
        const Partition alpha = detail::partition_or_pointwise(sf);
        const SynthesisResult r =
            synthesize(sf.action, alpha, cfg.tail_threshold, cfg.self_check);
        detail::report_system(rep, sf.action);
        detail::report_synthesis(rep, r, cfg.tail_threshold);
        rep.section("roundtrip");
        rep.kv("labels_match", r.roundtrip_ok);
        break;
      }
      case Command::synthesize:
      case Command::demo: {
        SystemFile sf;
        Partition alpha;
        if (cfg.command == Command::demo) {
          sf.action = cfg.demo_generators == 0
                          ? cyclic_action(cfg.demo_points)
                          : random_transitive_action(cfg.demo_points, cfg.demo_generators,
                                                     cfg.seed);
          alpha = cfg.demo_classes == 0
                      ? pointwise_partition(cfg.demo_points)
                      : random_partition(cfg.demo_points, cfg.demo_classes, cfg.seed);
          rep.section("demo");
          rep.kv("points", cfg.demo_points);
          rep.kv("random_generators", cfg.demo_generators);
          rep.kv("partition_classes",
                 cfg.demo_classes == 0 ? std::string("pointwise")
                                       : std::to_string(cfg.demo_classes));
          rep.kv("seed", cfg.seed);
        } else {
          sf = load_system(cfg.input_path);
          alpha = detail::partition_or_pointwise(sf);
        }
        const SynthesisResult r =
            synthesize(sf.action, alpha, cfg.tail_threshold, cfg.self_check);
        detail::report_system(rep, sf.action);
        detail::report_partition(rep, "alpha", alpha);
        detail::report_code(rep, r.code, alpha);
        detail::report_synthesis(rep, r, cfg.tail_threshold);
        detail::report_labels(rep, r.relabeled.relabeled);
        detail::report_beta(rep, r);
        rep.section("summary");
        rep.kv("alpha_classes", alpha.size());
        rep.kv("beta_classes", r.relabeled.beta.size());
        rep.kv("beta_class_bound", detail::class_bound(r.cutoff.cutoff));
        rep.section("roundtrip");
        rep.kv("labels_match", r.roundtrip_ok);
        if (cfg.trace) detail::report_trace(rep, sf.action, r.towers);
        if (cfg.self_check) detail::report_self_check(rep, sf.action, r);
        break;
      }
    }
    out.status = 0;
    out.report = rep.str();
  } catch (const Error& e) {
    out.status = detail::status_for(e);
    nlohmann::json j;
    j["error"] = e.code();
    j["message"] = e.what();
    out.error_json = j.dump();
  } catch (const std::exception& e) {
    out.status = 5;
    nlohmann::json j;
    j["error"] = "Internal";
    j["message"] = e.what();
    out.error_json = j.dump();
  }
  return out;
}

}  // namespace fingen
