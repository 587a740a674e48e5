#include <catch2/catch_amalgamated.hpp>

#include <set>

#include <fingen/fingen.hpp>

#include "oracles.hpp"

using namespace fingen;
using Catch::Approx;

TEST_CASE("target lengths on frozen distributions") {
  CHECK(krieger_lengths({Rational(1)}) == std::vector<int>{0});
  CHECK(krieger_lengths({Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)}) ==
        std::vector<int>{0, 1, 2, 2});
  CHECK(krieger_lengths({Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}) ==
        std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("target lengths reject malformed measure lists") {
  CHECK_THROWS_AS(krieger_lengths({}), DomainError);
  CHECK_THROWS_AS(krieger_lengths({Rational(1, 4), Rational(1, 2), Rational(1, 4)}),
                  DomainError);  // not descending
  CHECK_THROWS_AS(krieger_lengths({Rational(1, 2), Rational(1, 4)}), DomainError);  // sum != 1
  CHECK_THROWS_AS(krieger_lengths({Rational(3, 2), Rational(-1, 2)}), DomainError);
}

TEST_CASE("target lengths match the 256-bit reference") {
  // Boundary-ish rationals and random ones.
  std::vector<Rational> probe = {Rational(1, 2), Rational(1, 3),    Rational(1353, 10000),
                                 Rational(1, 7), Rational(367, 1000), Rational(1, 1000000)};
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    std::mt19937_64 rng(seed);
    const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 1000000);
    const std::int64_t p = 1 + static_cast<std::int64_t>(rng() % (q - 1));
    probe.emplace_back(p, q);
  }
  for (const Rational& m : probe) {
    const Rational rest = Rational(1) - m;
    std::vector<Rational> dist;
    if (rest == Rational(0)) dist = {m};
    else if (m >= rest) dist = {m, rest};
    else dist = {rest, m};
    const std::vector<int> t = krieger_lengths(dist);
    for (std::size_t i = 0; i < dist.size(); ++i)
      CHECK(t[i] == oracle::floor_neg_log(dist[i].numerator(), dist[i].denominator()));
  }
}

TEST_CASE("word assignment on frozen distributions") {
  const auto dyadic = assign_words({Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)});
  CHECK(dyadic == std::vector<SymbolWord>{"", "1", "11", "12"});

  const auto uniform = assign_words(
      {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  CHECK(uniform == std::vector<SymbolWord>{"1", "2", "3", "11"});
}

TEST_CASE("kraft sums of frozen length lists") {
  CHECK(kraft_sum({0, 1, 2, 2}) == Approx(14.0 / 9.0).epsilon(1e-12));
  CHECK(kraft_sum({1, 1, 1, 1}) == Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(kraft_sum({0}) == 1.0);
}

TEST_CASE("word assignment is injective and matches the set-based reference") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto dist = oracle::random_distribution(seed, 60);
    const auto words = assign_words(dist);
    const std::set<SymbolWord> unique(words.begin(), words.end());
    CHECK(unique.size() == words.size());
    CHECK(words == oracle::assign_words(dist));
    const std::vector<int> t = krieger_lengths(dist);
    for (std::size_t i = 0; i < words.size(); ++i)
      CHECK(words[i].size() >= static_cast<std::size_t>(t[i]));
    CHECK(kraft_sum(t) <= 2.718281828459045 + 1e-12);
  }
}

TEST_CASE("word assignment refuses lengths beyond the letter budget") {
  const std::int64_t q = 100000000000000000;  // -ln(1/q) = 39.1... > 38
  CHECK_THROWS_AS(assign_words({Rational(q - 1, q), Rational(1, q)}), DomainError);
  CHECK(krieger_lengths({Rational(q - 1, q), Rational(1, q)}) == std::vector<int>{0, 39});
}

TEST_CASE("assign_code distributes words back to class ids") {
  // Classes appear in point order; equal measures tie-break by class id.
  const Partition uniform = partition_from_labels(4, {0, 1, 2, 3});
  const Code code = assign_code(uniform);
  CHECK(code.order == std::vector<std::uint32_t>{0, 1, 2, 3});
  CHECK(code.words == std::vector<SymbolWord>{"1", "2", "3", "11"});
  CHECK(code.target_lengths == std::vector<int>{1, 1, 1, 1});
  CHECK(average_length(code, uniform) == Rational(5, 4));

  // Mixed measures: the big class gets the short word regardless of its id.
  const Partition mixed = partition_from_labels(8, {0, 1, 1, 1, 1, 2, 2, 3});
  const Code mixed_code = assign_code(mixed);
  CHECK(mixed_code.order == std::vector<std::uint32_t>{1, 2, 0, 3});
  CHECK(mixed_code.words == std::vector<SymbolWord>{"11", "", "1", "12"});
  CHECK(average_length(mixed_code, mixed) == Rational(3, 4));

  CHECK_THROWS_AS(assign_code(Partition{}), DomainError);
}

TEST_CASE("average length checks code size") {
  const Partition p = partition_from_labels(2, {0, 1});
  Code code;
  code.words = {"1"};
  CHECK_THROWS_AS(average_length(code, p), DomainError);
}

TEST_CASE("frozen average for the dyadic code") {
  const Partition p = partition_from_labels(8, {0, 0, 0, 0, 1, 1, 2, 3});
  const Code code = assign_code(p);
  CHECK(average_length(code, p) == Rational(3, 4));
}
