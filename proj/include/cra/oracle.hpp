#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cra/cyclic_group.hpp"
#include "cra/dfa.hpp"
#include "cra/errors.hpp"
#include "cra/standardizer.hpp"

namespace cra {

// Brute-force ground truth: the power automaton, explicit transition monoids,
// and exhaustive generation of small standardized automata.

inline constexpr std::size_t kOracleHardMaxStates = 30;

struct ReachabilityReport {
  static constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

  BinaryDfa dfa;
  std::size_t n = 0;
  std::size_t reachable_count = 0;
  bool complete = false;
  std::vector<StateSet> unreachable_sample;  // up to 10, ascending by bitmask
  // Indexed by subset bitmask (bit q <=> state q): predecessor subset and the letter applied to it.
  std::vector<std::uint32_t> parent;
  std::vector<Letter> via;

  static std::uint32_t mask_of(const StateSet& s) {
    std::uint32_t m = 0;
    s.for_each([&](State q) { m |= std::uint32_t{1} << q; });
    return m;
  }
  StateSet set_of(std::uint32_t m) const {
    StateSet s(n);
    for (State q = 0; q < n; ++q)
      if ((m >> q) & 1U) s.insert(q);
    return s;
  }
  bool reachable(const StateSet& s) const {
    return s.universe() == n && !s.empty() && parent[mask_of(s)] != kUnvisited;
  }
};

// Forward BFS over subset images starting from Q.
inline ReachabilityReport enumerate_reachable(const BinaryDfa& dfa, std::size_t limit_n = 22) {
  const std::size_t n = dfa.size();
  if (limit_n > kOracleHardMaxStates)
    throw std::invalid_argument("oracle state limit may not exceed " + std::to_string(kOracleHardMaxStates));
  if (n > limit_n)
    throw ResourceLimit("oracle limited to " + std::to_string(limit_n) + " states, automaton has " + std::to_string(n));

  // Image of a subset is the OR of per-byte lookups.
  const std::size_t chunks = (n + 7) / 8;
  std::vector<std::uint32_t> lut[2];
  for (Letter c : kLetters) {
    auto& table = lut[static_cast<int>(c)];
    table.assign(chunks * 256, 0);
    const auto row = dfa.row(c);
    for (std::size_t ch = 0; ch < chunks; ++ch)
      for (std::uint32_t byte = 1; byte < 256; ++byte) {
        std::uint32_t img = 0;
        for (std::size_t bit = 0; bit < 8; ++bit) {
          const std::size_t q = ch * 8 + bit;
          if (q < n && ((byte >> bit) & 1U)) img |= std::uint32_t{1} << row[q];
        }
        table[ch * 256 + byte] = img;
      }
  }
  auto image = [&](std::uint32_t m, const std::vector<std::uint32_t>& table) {
    std::uint32_t img = 0;
    for (std::size_t ch = 0; ch < chunks; ++ch, m >>= 8) img |= table[ch * 256 + (m & 0xffU)];
    return img;
  };

  ReachabilityReport rep{dfa, n, 0, false, {}, {}, {}};
  const std::size_t total = std::size_t{1} << n;
  const auto full = static_cast<std::uint32_t>(total - 1);
  rep.parent.assign(total, ReachabilityReport::kUnvisited);
  rep.via.assign(total, Letter::A);
  rep.parent[full] = full;

  std::vector<std::uint32_t> queue{full};
  queue.reserve(total);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t m = queue[head];
    for (Letter c : kLetters) {
      const std::uint32_t img = image(m, lut[static_cast<int>(c)]);
      if (rep.parent[img] == ReachabilityReport::kUnvisited) {
        rep.parent[img] = m;
        rep.via[img] = c;
        queue.push_back(img);
      }
    }
  }
  rep.reachable_count = queue.size();
  rep.complete = rep.reachable_count == total - 1;
  for (std::uint32_t m = 1; m <= full && rep.unreachable_sample.size() < 10; ++m)
    if (rep.parent[m] == ReachabilityReport::kUnvisited) rep.unreachable_sample.push_back(rep.set_of(m));
  return rep;
}

// Shortest word w with Q.w = target, replayed before return.
inline Word witness_word(const ReachabilityReport& report, const StateSet& target) {
  if (target.universe() != report.n) throw std::invalid_argument("target universe does not match automaton");
  if (target.empty()) throw std::invalid_argument("target must be nonempty");
  if (!report.reachable(target))
    throw NotCompletelyReachable("subset " + target.to_string() + " is not reachable");
  const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << report.n) - 1);
  std::vector<Letter> rev;
  for (std::uint32_t m = ReachabilityReport::mask_of(target); m != full; m = report.parent[m])
    rev.push_back(report.via[m]);
  Word w(std::vector<Letter>(rev.rbegin(), rev.rend()));
  if (apply_word(report.dfa, StateSet::full(report.n), w) != target)
    throw InternalError("oracle witness failed replay");
  return w;
}

struct MonoidSummaries {
  std::size_t elements = 0;  // transformations enumerated (after the defect filter)
  std::vector<WordSummary> summaries;  // distinct, in discovery order
};

// Transition monoid by BFS over explicit transformations. With max_defect set,
// only elements of defect <= max_defect are generated; every prefix of such a
// word has no larger defect, so this is the exact low-defect part of the monoid.
inline MonoidSummaries enumerate_monoid_summaries(const BinaryDfa& dfa, std::size_t limit_n = 10,
                                                  std::size_t monoid_cap = 10'000'000,
                                                  std::size_t max_defect = std::numeric_limits<std::size_t>::max()) {
  const std::size_t n = dfa.size();
  if (limit_n > 16) throw std::invalid_argument("monoid enumeration supports at most 16 states");
  if (n > limit_n)
    throw ResourceLimit("monoid enumeration limited to " + std::to_string(limit_n) + " states, automaton has " +
                        std::to_string(n));

  // 4 bits per state.
  auto encode = [&](const std::vector<State>& t) {
    std::uint64_t key = 0;
    for (std::size_t q = 0; q < n; ++q) key |= std::uint64_t{t[q]} << (4 * q);
    return key;
  };
  auto decode = [&](std::uint64_t key) {
    std::vector<State> t(n);
    for (std::size_t q = 0; q < n; ++q) t[q] = static_cast<State>((key >> (4 * q)) & 0xfU);
    return t;
  };
  auto defect_of = [&](const std::vector<State>& t) {
    std::uint32_t seen = 0;
    for (State x : t) seen |= std::uint32_t{1} << x;
    return n - static_cast<std::size_t>(std::popcount(seen));
  };

  std::vector<State> id(n);
  for (std::size_t q = 0; q < n; ++q) id[q] = static_cast<State>(q);
  std::unordered_set<std::uint64_t> seen{encode(id)};
  std::deque<std::uint64_t> queue{encode(id)};
  std::unordered_set<WordSummary, WordSummaryHash> distinct;
  MonoidSummaries out;

  while (!queue.empty()) {
    const auto t = decode(queue.front());
    queue.pop_front();
    ++out.elements;
    auto s = summarize_transformation(t);
    if (distinct.insert(s).second) out.summaries.push_back(std::move(s));
    for (Letter c : kLetters) {
      const auto row = dfa.row(c);
      std::vector<State> u(n);
      for (std::size_t q = 0; q < n; ++q) u[q] = row[t[q]];
      if (defect_of(u) > max_defect) continue;
      if (seen.insert(encode(u)).second) {
        if (seen.size() > monoid_cap)
          throw ResourceLimit("transition monoid exceeds the cap of " + std::to_string(monoid_cap) + " elements");
        queue.push_back(encode(u));
      }
    }
  }
  return out;
}

// Duplicate states of monoid elements w with 0 in excl(w), excl(w) inside <prev_gen>, |excl(w)| <= k.
inline StateSet level_set_from_summaries(const MonoidSummaries& m, std::size_t n, std::size_t k,
                                         std::size_t prev_gen) {
  StateSet out(n);
  for (const auto& s : m.summaries)
    if (s.excl.contains(0) && s.defect() <= k && subset_of_subgroup(s.excl, prev_gen)) out |= s.dupl;
  return out;
}

// Streams every standardized automaton on n states exactly once: r ascending,
// then a's restriction to {1..n-1} in lexicographic order; 0.a = r.a.
class StandardizedEnumerator {
 public:
  static constexpr std::size_t kMinStates = 2;
  static constexpr std::size_t kMaxStates = 10;

  explicit StandardizedEnumerator(std::size_t n) : n_(n) {
    if (n < kMinStates || n > kMaxStates)
      throw std::invalid_argument("exhaustive enumeration supports " + std::to_string(kMinStates) + " <= n <= " +
                                  std::to_string(kMaxStates));
    perm_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) perm_[i] = static_cast<State>(i + 1);
  }

  // (n-1) * (n-1)!
  static std::size_t total(std::size_t n) {
    std::size_t f = 1;
    for (std::size_t i = 2; i < n; ++i) f *= i;
    return (n - 1) * f;
  }

  std::optional<StandardizedDfa> next() {
    if (r_ >= n_) return std::nullopt;
    std::vector<State> a(n_);
    for (std::size_t q = 1; q < n_; ++q) a[q] = perm_[q - 1];
    a[0] = a[r_];
    if (!std::next_permutation(perm_.begin(), perm_.end())) ++r_;
    return StandardizedDfa::from_a_row(std::move(a));
  }

 private:
  std::size_t n_;
  State r_ = 1;
  std::vector<State> perm_;
};

template <typename F>
void for_each_standardized(std::size_t n, F&& f) {
  StandardizedEnumerator gen(n);
  while (auto s = gen.next()) f(*s);
}

}  // namespace cra
