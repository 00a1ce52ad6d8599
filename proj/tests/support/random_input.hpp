#pragma once

#include <random>
#include <vector>

#include "cra/dfa.hpp"

namespace testsupport {

inline cra::BinaryDfa random_dfa(std::size_t n, std::mt19937_64& gen) {
  std::uniform_int_distribution<cra::State> pick(0, static_cast<cra::State>(n - 1));
  std::vector<cra::State> a(n), b(n);
  for (auto& x : a) x = pick(gen);
  for (auto& x : b) x = pick(gen);
  return cra::BinaryDfa(std::move(a), std::move(b));
}

inline cra::Word random_word(std::size_t max_len, std::mt19937_64& gen) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::bernoulli_distribution coin(0.5);
  cra::Word w;
  for (std::size_t i = len(gen); i > 0; --i) w.push_back(coin(gen) ? cra::Letter::A : cra::Letter::B);
  return w;
}

// Random permutation of 0..n-1.
inline std::vector<cra::State> random_perm(std::size_t n, std::mt19937_64& gen) {
  std::vector<cra::State> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<cra::State>(i);
  std::shuffle(p.begin(), p.end(), gen);
  return p;
}

// The same automaton with state q renamed to perm[q] and, optionally, the letters swapped.
inline cra::BinaryDfa relabel(const cra::BinaryDfa& dfa, const std::vector<cra::State>& perm, bool swap) {
  const std::size_t n = dfa.size();
  std::vector<cra::State> a(n), b(n);
  for (cra::State q = 0; q < n; ++q) {
    a[perm[q]] = perm[dfa.next(q, cra::Letter::A)];
    b[perm[q]] = perm[dfa.next(q, cra::Letter::B)];
  }
  return swap ? cra::BinaryDfa(std::move(b), std::move(a)) : cra::BinaryDfa(std::move(a), std::move(b));
}

}  // namespace testsupport
