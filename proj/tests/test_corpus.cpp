#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "cra/chain.hpp"
#include "cra/corpus.hpp"
#include "cra/decider.hpp"
#include "cra/rystsov.hpp"

using namespace cra;

TEST_CASE("presets carry consistent facts") {
  for (const auto& name : preset_names()) {
    INFO(name);
    const auto p = preset(name);
    CHECK(p.name == name);
    CHECK(decide(p.dfa).completely_reachable == p.expected.completely_reachable);
    if (!p.expected.d1) continue;
    const auto s = standardize(p.dfa);
    CHECK(difference_set(s).d1 == StateSet(s.size(), *p.expected.d1));
    const auto chain = compute_chain(s);
    std::vector<std::size_t> gens;
    for (const auto& l : chain.levels) gens.push_back(l.hk_gen);
    CHECK(gens == p.expected.chain_generators);
  }
  CHECK_THROWS_AS(preset("nope"), std::invalid_argument);
}

TEST_CASE("random standardized automata are valid and reproducible") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = random_standardized(3 + seed, seed);
    REQUIRE(s.size() == 3 + seed);
    REQUIRE(random_standardized(3 + seed, seed).dfa() == s.dfa());
  }
  CHECK_THROWS_AS(random_standardized(2, 1), std::invalid_argument);
  CHECK(sample_seed(1, 9, 0) != sample_seed(1, 9, 1));
  CHECK(sample_seed(1, 9, 0) != sample_seed(1, 10, 0));
}

TEST_CASE("random standardized automata are uniform at n = 4") {
  // 18 automata, 10^5 draws; every count within 5 sigma of the mean.
  constexpr int kDraws = 100'000;
  std::map<std::vector<State>, int> counts;
  for (int i = 0; i < kDraws; ++i) {
    const auto s = random_standardized(4, sample_seed(2024, 4, i));
    ++counts[std::vector<State>(s.a_row().begin(), s.a_row().end())];
  }
  REQUIRE(counts.size() == 18);
  const double p = 1.0 / 18;
  const double mean = kDraws * p;
  const double sigma = std::sqrt(kDraws * p * (1 - p));
  for (const auto& [row, c] : counts) REQUIRE(std::abs(c - mean) < 5 * sigma);
}
