#pragma once

#include <numeric>
#include <optional>
#include <string>

#include "cra/cyclic_group.hpp"
#include "cra/dfa.hpp"
#include "cra/standardizer.hpp"

namespace cra {

enum class VerdictReason { FlipFlop, NoInvariantSubgroup, InvariantSubgroup, ShapeObstruction };

inline const char* to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::FlipFlop: return "FlipFlop";
    case VerdictReason::NoInvariantSubgroup: return "NoInvariantSubgroup";
    case VerdictReason::InvariantSubgroup: return "InvariantSubgroup";
    case VerdictReason::ShapeObstruction: return "ShapeObstruction";
  }
  return "?";
}

struct Verdict {
  bool completely_reachable = false;
  VerdictReason reason = VerdictReason::ShapeObstruction;
  // Smallest d with <d> a proper a-invariant subgroup; set iff reason == InvariantSubgroup.
  std::optional<std::size_t> invariant_divisor;
  std::string detail;
};

struct DecideOptions {
  // Only test divisors of gcd(n, 0.a); every a-invariant subgroup contains 0.a.
  bool restrict_to_gcd = true;
};

// <d> is a-invariant: (t d).a is a multiple of d for t = 0 .. n/d - 1.
inline bool subgroup_a_invariant(const StandardizedDfa& sdfa, std::size_t d) {
  const std::size_t n = sdfa.size();
  if (d < 1 || n % d != 0) throw std::invalid_argument(std::to_string(d) + " does not divide " + std::to_string(n));
  const auto a = sdfa.a_row();
  for (std::size_t x = 0; x < n; x += d)
    if (a[x] % d != 0) return false;
  return true;
}

inline Verdict decide_standardized(const StandardizedDfa& sdfa, const DecideOptions& opts = {}) {
  const std::size_t n = sdfa.size();
  const std::size_t bound = opts.restrict_to_gcd ? std::gcd(n, static_cast<std::size_t>(sdfa.a(0))) : n;
  for (std::size_t d : nontrivial_divisors(n)) {
    if (bound % d != 0) continue;
    if (subgroup_a_invariant(sdfa, d))
      return {false, VerdictReason::InvariantSubgroup, d,
              "the subgroup " + std::to_string(d) + "Z_" + std::to_string(n) + " is a-invariant"};
  }
  return {true, VerdictReason::NoInvariantSubgroup, std::nullopt, "no proper subgroup of Z_n is a-invariant"};
}

inline Verdict decide(const BinaryDfa& dfa, const DecideOptions& opts = {}) {
  const auto cls = classify(dfa);
  switch (cls.verdict) {
    case ShapeVerdict::FlipFlop:
      return {true, VerdictReason::FlipFlop, std::nullopt, cls.detail};
    case ShapeVerdict::TooSmallTrivial:
      return {true, VerdictReason::NoInvariantSubgroup, std::nullopt, cls.detail};
    case ShapeVerdict::NotCompletelyReachableShape:
      return {false, VerdictReason::ShapeObstruction, std::nullopt, cls.detail};
    case ShapeVerdict::Standardizable:
      break;
  }
  return decide_standardized(standardize(dfa), opts);
}

}  // namespace cra
