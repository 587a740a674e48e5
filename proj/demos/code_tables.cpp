// Prints code tables for a few distributions: the per-class target lengths,
// the greedy word assignment over the alphabet {1,2,3}, the kraft sum, and
// the mean word length against the entropy.

#include <cstdio>
#include <vector>

#include <fingen/fingen.hpp>

using namespace fingen;

namespace {

void show(const char* name, const std::vector<Rational>& dist) {
  const std::vector<int> lengths = krieger_lengths(dist);
  const std::vector<SymbolWord> words = assign_words(dist);
  std::printf("%s\n", name);
  double entropy = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p = boost::rational_cast<double>(dist[i]);
    if (p > 0) entropy -= p * std::log(p);
    mean += p * static_cast<double>(words[i].size());
    std::printf("  measure %-8s target %d  word \"%s\"\n",
                format_rational(dist[i]).c_str(), lengths[i], words[i].c_str());
  }
  std::printf("  kraft sum %.6f (stays <= e), mean length %.6f, entropy %.6f\n\n",
              kraft_sum(lengths), mean, entropy);
}

}  // namespace

int main() {
  show("dyadic", {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)});
  show("uniform over 5", std::vector<Rational>(5, Rational(1, 5)));
  show("one heavy atom", {Rational(9, 10), Rational(1, 20), Rational(1, 20)});
  show("matched to entropy ln 2", entropy_target_distribution(std::log(2.0)));
  return 0;
}
