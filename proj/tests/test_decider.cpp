#include <catch_amalgamated.hpp>

#include "cra/corpus.hpp"
#include "cra/decider.hpp"
#include "cra/oracle.hpp"
#include "cra/rystsov.hpp"

using namespace cra;

TEST_CASE("verdicts on the presets") {
  for (const auto& name : preset_names()) {
    const auto p = preset(name);
    INFO(name);
    CHECK(decide(p.dfa).completely_reachable == p.expected.completely_reachable);
  }
  const auto v = decide(preset("e4inv").dfa);
  CHECK(v.reason == VerdictReason::InvariantSubgroup);
  CHECK(v.invariant_divisor == 2);
  CHECK(v.detail == "the subgroup 2Z_4 is a-invariant");
  CHECK(decide(preset("flipflop").dfa).reason == VerdictReason::FlipFlop);
  CHECK(decide(preset("e12prime").dfa).reason == VerdictReason::NoInvariantSubgroup);
}

TEST_CASE("degenerate shapes") {
  const auto one = decide(BinaryDfa({0}, {0}));
  CHECK(one.completely_reachable);
  CHECK_FALSE(one.invariant_divisor.has_value());
  const auto cycles = decide(BinaryDfa({1, 1, 2, 3}, {1, 0, 3, 2}));
  CHECK_FALSE(cycles.completely_reachable);
  CHECK(cycles.reason == VerdictReason::ShapeObstruction);
  CHECK_FALSE(decide(BinaryDfa({1, 2, 0}, {2, 0, 1})).completely_reachable);
}

TEST_CASE("prime sizes are always completely reachable") {
  for (std::size_t n : {3, 5, 7, 11, 13, 101}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      REQUIRE(decide_standardized(random_standardized(n, seed)).completely_reachable);
  }
}

TEST_CASE("invariance test") {
  const auto s = standardize(preset("e4inv").dfa);
  CHECK(subgroup_a_invariant(s, 2));
  // Z_n itself is always invariant; {0} never is, since 0.a = dupl(a) is nonzero.
  CHECK(subgroup_a_invariant(s, 1));
  CHECK_FALSE(subgroup_a_invariant(s, 4));
  CHECK_THROWS_AS(subgroup_a_invariant(s, 3), std::invalid_argument);
  CHECK_THROWS_AS(subgroup_a_invariant(s, 0), std::invalid_argument);
}

TEST_CASE("smallest divisor is reported") {
  for_each_standardized(6, [](const StandardizedDfa& s) {
    const auto v = decide_standardized(s, {.restrict_to_gcd = false});
    if (v.completely_reachable) return;
    for (std::size_t d : nontrivial_divisors(6)) {
      if (d >= *v.invariant_divisor) break;
      REQUIRE_FALSE(subgroup_a_invariant(s, d));
    }
  });
}

TEST_CASE("both divisor modes agree and match the oracle") {
  for (std::size_t n = 3; n <= 7; ++n) {
    for_each_standardized(n, [&](const StandardizedDfa& s) {
      const auto fast = decide_standardized(s, {.restrict_to_gcd = true});
      const auto slow = decide_standardized(s, {.restrict_to_gcd = false});
      REQUIRE(fast.completely_reachable == slow.completely_reachable);
      REQUIRE(fast.invariant_divisor == slow.invariant_divisor);
      REQUIRE(fast.completely_reachable == enumerate_reachable(s.dfa()).complete);
    });
  }
}

TEST_CASE("disconnected Rystsov graph implies an invariant subgroup below 12 states") {
  for (std::size_t n = 3; n <= 8; ++n) {
    for_each_standardized(n, [&](const StandardizedDfa& s) {
      if (difference_set(s).strongly_connected) return;
      REQUIRE_FALSE(decide_standardized(s).completely_reachable);
    });
  }
}
