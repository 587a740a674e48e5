// Walks one small system through the whole pipeline and prints every stage:
// code a partition, pick the cutoff, rearrange the long labels into spare
// room, rewrite, and decode back.

#include <cstdio>
#include <string>

#include <fingen/fingen.hpp>

using namespace fingen;

int main() {
  const FiniteAction act = cyclic_action(27);

  // A skewed partition: one bulk class plus rare classes whose code words are
  // longer than the cutoff, so the rewrite has to relocate them.
  std::vector<std::uint32_t> classes(27, 0);
  classes[0] = 1;
  classes[9] = 2;
  classes[5] = classes[13] = 3;
  classes[20] = classes[26] = 4;
  const Partition alpha = partition_from_labels(27, classes);

  std::printf("system: %u points, 1 generator ('%s'), transitive\n", act.points,
              act.generator_names[0].c_str());
  std::printf("input partition: %zu classes, entropy %.6f\n\n", alpha.size(),
              shannon_entropy(alpha));

  const SynthesisResult r = synthesize(act, alpha, Rational(1, 4), true);

  std::printf("code words per class (rare classes get longer words):\n");
  for (std::size_t i = 0; i < r.code.words.size(); ++i)
    std::printf("  class %zu  measure %s  word \"%s\"\n", i,
                format_rational(alpha.measures[i]).c_str(), r.code.words[i].c_str());

  std::printf("\ncutoff length C = %u, tail mass %s (must stay under 1/4)\n",
              r.cutoff.cutoff, format_rational(r.cutoff.tail).c_str());
  std::printf("points with long labels: %zu of %u\n", r.towers.b1.count(), act.points);
  std::printf("tower levels: %zu\n", r.towers.levels.size());
  for (std::size_t lvl = 0; lvl < r.towers.levels.size(); ++lvl) {
    const auto& tl = r.towers.levels[lvl];
    std::printf("  level %zu: %zu carriers relocated through %zu matched block(s)\n",
                lvl + 1, tl.base.count(), tl.relocation.blocks.size());
  }

  std::printf("\npoint-by-point rewrite (old label -> new label):\n");
  for (Point x = 0; x < act.points; ++x)
    std::printf("  point %2u: %-6s -> %s\n", x, r.labels[x].c_str(),
                r.relabeled.relabeled[x].c_str());

  std::printf("\nnew partition: %zu classes (old one had %zu)\n", r.relabeled.beta.size(),
              alpha.size());
  std::printf("new partition generates: %s\n",
              r.beta_check.generating ? "yes (both methods)" : "no");

  GroupEnumerator en(act);
  const DecodeResult back = decode(act, en, r.relabeled.relabeled);
  std::printf("decoder recovered the cutoff: %u, and the labels match: %s\n", back.cutoff,
              back.labels == r.labels ? "yes" : "no");
  return 0;
}
