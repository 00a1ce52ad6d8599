#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cra/state_set.hpp"

namespace cra {

// Subgroups of (Z_n, +) are <d> for divisors d of n; they are handled through
// that generator only. <n> = {0}, <1> = Z_n.

// gcd of the elements of s together with n.
inline std::size_t subgroup_generator(const StateSet& s, std::size_t n) {
  std::size_t g = n;
  s.for_each([&](State q) { g = std::gcd(g, static_cast<std::size_t>(q)); });
  return g;
}

inline bool in_subgroup(State q, std::size_t gen) { return q % gen == 0; }

inline bool subset_of_subgroup(const StateSet& s, std::size_t gen) {
  bool ok = true;
  s.for_each([&](State q) { ok = ok && in_subgroup(q, gen); });
  return ok;
}

// Union of cosets of <gen> iff closed under +gen.
inline bool is_union_of_cosets(const StateSet& s, std::size_t gen) {
  const std::size_t n = s.universe();
  bool ok = true;
  s.for_each([&](State q) { ok = ok && s.contains(static_cast<State>((q + gen) % n)); });
  return ok;
}

// Divisors d of n with 1 < d < n, ascending, by trial division up to sqrt(n).
inline std::vector<std::size_t> nontrivial_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cra
