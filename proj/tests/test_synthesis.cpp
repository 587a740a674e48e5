#include <catch2/catch_amalgamated.hpp>

#include <fingen/fingen.hpp>

using namespace fingen;

namespace {

// 16-point rotation with one three-letter label: the two overflow letters land
// on hosting points 1 (keeps going) and 15 (last letter, packed form).
std::vector<SymbolWord> long_zero_labels(SymbolWord tail_owner = "2") {
  std::vector<SymbolWord> labels(16, "2");
  labels[0] = "111";
  labels[15] = tail_owner;
  return labels;
}

}  // namespace

TEST_CASE("cutoff choice minimizes exactly") {
  std::vector<SymbolWord> labels(10, "1111");
  labels[0] = "11111";
  const CutoffChoice ten = choose_cutoff(labels);
  CHECK(ten.cutoff == 5);
  CHECK(ten.tail == Rational(0));

  std::vector<SymbolWord> wide(40, "1111");
  wide[0] = "11111";
  const CutoffChoice forty = choose_cutoff(wide);
  CHECK(forty.cutoff == 4);
  CHECK(forty.tail == Rational(1, 8));

  CHECK(choose_cutoff({"1", "2", ""}).cutoff == 1);
  CHECK(choose_cutoff(labels, Rational(3, 5)).cutoff == 4);

  CHECK_THROWS_AS(choose_cutoff({}), DomainError);
  CHECK_THROWS_AS(choose_cutoff({"1"}, Rational(0)), DomainError);
}

TEST_CASE("towers relocate one letter per level") {
  const FiniteAction c16 = cyclic_action(16);
  GroupEnumerator en(c16);
  const auto labels = long_zero_labels();
  const TowerSystem ts = build_towers(c16, en, labels, 1);
  CHECK(ts.cutoff == 1);
  CHECK(ts.tail == Rational(3, 16));
  CHECK(ts.b1 == make_set(16, {0}));
  REQUIRE(ts.depth() == 2);
  CHECK(ts.levels[0].base == make_set(16, {0}));
  CHECK(ts.levels[0].relocation.apply(0) == 1);
  CHECK(ts.levels[1].base == make_set(16, {0}));
  CHECK(ts.levels[1].relocation.apply(0) == 15);
  CHECK(ts.occupied == make_set(16, {0, 1, 15}));
  CHECK(ts.overflow_mass(16) == Rational(1, 8));
}

TEST_CASE("tower construction validates its inputs") {
  const FiniteAction c4 = cyclic_action(4);
  GroupEnumerator en(c4);
  CHECK_THROWS_AS(build_towers(c4, en, {"1", "1", "1"}, 1), DomainError);
  CHECK_THROWS_AS(build_towers(c4, en, {"1", "1", "1", "4"}, 1), DomainError);
  CHECK_THROWS_AS(build_towers(c4, en, {"1", "1", "1", "1"}, 0), DomainError);
  const FiniteAction split = make_action(4, {Perm{1, 0, 3, 2}});
  GroupEnumerator sen(split);
  CHECK_THROWS_AS(build_towers(split, sen, {"1", "1", "1", "1"}, 1), NonErgodicError);
}

TEST_CASE("too much base mass is a tower leak") {
  const FiniteAction c4 = cyclic_action(4);
  GroupEnumerator en(c4);
  CHECK_THROWS_MATCHES(build_towers(c4, en, {"11", "11", "1", "1"}, 1), TowerLeakError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("base layer")));
}

TEST_CASE("occupied mass beyond twice the threshold is a tower leak") {
  const FiniteAction c8 = cyclic_action(8);
  GroupEnumerator en(c8);
  std::vector<SymbolWord> labels(8, "1");
  labels[0] = "11111";
  CHECK_THROWS_MATCHES(build_towers(c8, en, labels, 1), TowerLeakError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("twice the threshold")));
}

TEST_CASE("running out of unoccupied points is a tower leak") {
  const FiniteAction c6 = cyclic_action(6);
  GroupEnumerator en(c6);
  std::vector<SymbolWord> labels(6, "1");
  labels[0] = "1111111";
  CHECK_THROWS_MATCHES(build_towers(c6, en, labels, 1, Rational(3, 5)), TowerLeakError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("more room")));
}

TEST_CASE("relabeling produces the frozen strings and shapes") {
  const FiniteAction c16 = cyclic_action(16);
  GroupEnumerator en(c16);
  const auto labels = long_zero_labels();
  const TowerSystem ts = build_towers(c16, en, labels, 1);
  const RelabelResult res = relabel(c16, labels, ts);

  CHECK(res.relabeled[0] == "1");
  CHECK(res.relabeled[1] == "241");
  CHECK(res.relabeled[15] == "214");
  CHECK(res.relabeled[2] == "24");
  CHECK(res.stats.base == 1);
  CHECK(res.stats.more == 1);
  CHECK(res.stats.final_packed == 1);
  CHECK(res.stats.final_split == 0);
  CHECK(res.stats.plain == 13);
  CHECK(res.stats.max_length == 3);
  REQUIRE(res.beta.size() == 4);
  CHECK(res.beta.classes[0] == std::vector<Point>{0});
  CHECK(res.beta.classes[1] == std::vector<Point>{1});
  CHECK(res.beta.classes[3] == std::vector<Point>{15});

  const DecodeResult back = decode(c16, en, res.relabeled);
  CHECK(back.labels == labels);
  CHECK(back.cutoff == 1);
  CHECK(back.levels == 2);
  CHECK(decode(c16, en, res.relabeled, 1).labels == labels);
  CHECK(is_generating(c16, res.beta).generating);
}

TEST_CASE("a last letter hosted by an empty label splits with two markers") {
  const FiniteAction c16 = cyclic_action(16);
  GroupEnumerator en(c16);
  const auto labels = long_zero_labels("");
  const TowerSystem ts = build_towers(c16, en, labels, 1);
  const RelabelResult res = relabel(c16, labels, ts);
  CHECK(res.relabeled[15] == "414");
  CHECK(res.stats.final_split == 1);
  CHECK(res.stats.final_packed == 0);
  CHECK(decode(c16, en, res.relabeled).labels == labels);
}

TEST_CASE("short labels skip the towers entirely") {
  const FiniteAction c4 = cyclic_action(4);
  GroupEnumerator en(c4);
  const std::vector<SymbolWord> labels = {"1", "2", "3", "1"};
  const TowerSystem ts = build_towers(c4, en, labels, 1);
  CHECK(ts.depth() == 0);
  CHECK(ts.b1.none());
  const RelabelResult res = relabel(c4, labels, ts);
  CHECK(res.relabeled == std::vector<SymbolWord>{"14", "24", "34", "14"});
  CHECK(res.stats.plain == 4);

  const DecodeResult no_hint = decode(c4, en, res.relabeled);
  CHECK(no_hint.labels == labels);
  CHECK(no_hint.cutoff == 0);  // nothing was cut, so no cutoff is recoverable
  CHECK(decode(c4, en, res.relabeled, 1).labels == labels);
}

TEST_CASE("decoder rejects malformed label families") {
  const FiniteAction c4 = cyclic_action(4);
  GroupEnumerator en(c4);
  const auto check_throws = [&](std::vector<SymbolWord> labels, const std::string& needle,
                                std::optional<std::uint32_t> hint = {}) {
    CHECK_THROWS_MATCHES(decode(c4, en, labels, hint), MalformedLabelsError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring(needle)));
  };
  check_throws({"15", "24", "24", "24"}, "letter outside 1..4");
  check_throws({"1", "241", "241", "214"}, "stray hosting label");
  check_throws({"1", "11", "24", "24"}, "differs from the cutoff length");
  check_throws({"", "24", "24", "24"}, "cutoff below 1");
  check_throws({"24", "244", "24", "24"}, "no label was cut down");
  check_throws({"1", "2224", "24", "24"}, "terminated label longer than cutoff+2");
  check_throws({"1", "22241", "24", "24"}, "hosting label longer than cutoff+2");
  check_throws({"1", "44", "24", "24"}, "does not match any rewrite shape");
  check_throws({"1", "24", "241", "24"}, "carries no hosted letter");
  check_throws({"224", "224", "224", "224"}, "longer than cutoff+1", 1);

  // A valid family with the wrong hint.
  const auto labels = long_zero_labels();
  const FiniteAction c16 = cyclic_action(16);
  GroupEnumerator en16(c16);
  const RelabelResult res = relabel(c16, labels, build_towers(c16, en16, labels, 1));
  CHECK_THROWS_MATCHES(decode(c16, en16, res.relabeled, 2), MalformedLabelsError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("hint disagrees")));

  // More hosted letters than there are points to host them.
  const FiniteAction c2 = cyclic_action(2);
  GroupEnumerator en2(c2);
  CHECK_THROWS_MATCHES(decode(c2, en2, {"11", "241"}), MalformedLabelsError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("more hosting room")));
}

TEST_CASE("the full pipeline runs on a single point") {
  const SynthesisResult r = synthesize(cyclic_action(1), pointwise_partition(1));
  CHECK(r.roundtrip_ok);
  CHECK(r.cutoff.cutoff == 1);
  CHECK(r.labels == std::vector<SymbolWord>{""});
  CHECK(r.relabeled.relabeled == std::vector<SymbolWord>{"4"});
  CHECK(r.relabeled.beta.size() == 1);
  CHECK(r.beta_check.generating);
}

TEST_CASE("the full pipeline rejects bad inputs") {
  CHECK_THROWS_AS(synthesize(make_action(4, {Perm{1, 0, 3, 2}}), pointwise_partition(4)),
                  NonErgodicError);
  const FiniteAction c4 = cyclic_action(4);
  CHECK_THROWS_MATCHES(synthesize(c4, partition_from_labels(4, {0, 1, 0, 1})),
                       NotGeneratingError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("0 and 2")));
}

TEST_CASE("synthesized labels always decode back and stay short") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const std::uint32_t n = 8 + static_cast<std::uint32_t>((seed * 11) % 60);
    const FiniteAction act = random_transitive_action(n, 1 + seed % 3, seed);
    const Partition alpha =
        random_partition(n, 2 + static_cast<std::uint32_t>(seed % (n - 1)), seed * 7);
    SynthesisResult r;
    try {
      r = synthesize(act, alpha, Rational(1, 4), true);
    } catch (const NotGeneratingError&) {
      continue;  // some random partitions legitimately fail to generate
    }
    CHECK(r.roundtrip_ok);
    CHECK(r.beta_check.generating);
    CHECK(r.relabeled.stats.max_length <= r.cutoff.cutoff + 2);
    CHECK(r.cutoff.tail < Rational(1, 4));
    CHECK(Rational(static_cast<std::int64_t>(r.towers.b1.count()), n) < Rational(1, 4));
    PointSet occ = r.towers.b1;
    for (const auto& lv : r.towers.levels) {
      CHECK(Rational(static_cast<std::int64_t>(occ.count()), n) < Rational(1, 2));
      CHECK((lv.base - lv.relocation.domain).none());
      occ |= lv.relocation.range;
    }
    CHECK(occ == r.towers.occupied);

    // The decoder needs no hint: the cutoff is recovered from the labels.
    GroupEnumerator en(act);
    if (r.towers.b1.any())
      CHECK(decode(act, en, r.relabeled.relabeled).labels == r.labels);
  }
}
