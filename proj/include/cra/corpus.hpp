#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cra/dfa.hpp"
#include "cra/standardizer.hpp"

namespace cra {

struct PresetFacts {
  bool completely_reachable = false;
  std::optional<std::vector<State>> d1;  // difference set, when standardized
  std::vector<std::size_t> chain_generators;  // H_1, H_2, ... generators
  std::string provenance;
};

struct Preset {
  std::string name;
  BinaryDfa dfa;
  PresetFacts expected;
};

namespace detail {

inline std::vector<State> plus_one_row(std::size_t n) {
  std::vector<State> b(n);
  for (std::size_t q = 0; q < n; ++q) b[q] = static_cast<State>((q + 1) % n);
  return b;
}

inline std::vector<State> e48_a_row() {
  std::vector<State> a(48);
  for (State q = 0; q < 48; ++q) a[q] = q;
  a[0] = 18;
  a[24] = 18;
  a[13] = 14;
  a[14] = 13;
  a[18] = 24;
  a[30] = 32;
  a[32] = 30;
  return a;
}

// Unbiased draw from [0, bound) on a 64-bit engine; independent of the
// standard library's distribution implementations.
inline std::uint64_t draw_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = gen();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace detail

inline std::vector<std::string> preset_names() { return {"flipflop", "e12prime", "e48", "e4inv"}; }

inline Preset preset(std::string_view name) {
  if (name == "flipflop")
    return {"flipflop", BinaryDfa({0, 0}, {1, 1}),
            {true, std::nullopt, {}, "two-state flip-flop: a sends both states to 0, b sends both to 1"}};
  if (name == "e12prime")
    return {"e12prime", BinaryDfa({10, 1, 2, 8, 4, 5, 10, 9, 3, 7, 6, 11}, detail::plus_one_row(12)),
            {true, std::vector<State>{4, 6, 10}, {2, 1}, "12-state standardized automaton with disconnected Rystsov graph"}};
  if (name == "e48")
    return {"e48", BinaryDfa(detail::e48_a_row(), detail::plus_one_row(48)),
            {true, std::vector<State>{18, 24, 42}, {6, 2, 1}, "48-state standardized automaton needing three chain levels"}};
  if (name == "e4inv")
    return {"e4inv", BinaryDfa({2, 1, 2, 3}, detail::plus_one_row(4)),
            {false, std::vector<State>{2}, {2, 2}, "{0, 2} is a-invariant"}};
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

// Uniform over the (n-1) * (n-1)! standardized automata on n states.
inline StandardizedDfa random_standardized(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random standardized automata need n >= 3");
  std::mt19937_64 gen(seed);
  const auto r = static_cast<State>(1 + detail::draw_below(gen, n - 1));
  std::vector<State> perm(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) perm[i] = static_cast<State>(i + 1);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[detail::draw_below(gen, i)]);
  std::vector<State> a(n);
  for (std::size_t q = 1; q < n; ++q) a[q] = perm[q - 1];
  a[0] = a[r];
  return StandardizedDfa::from_a_row(std::move(a));
}

// Seed of the i-th sampled automaton of size n in a sweep seeded with base.
inline std::uint64_t sample_seed(std::uint64_t base, std::size_t n, std::size_t i) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (1 + (std::uint64_t{n} << 32) + i);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace cra
