#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cra/dfa.hpp"
#include "cra/errors.hpp"

namespace cra {

enum class ShapeVerdict { FlipFlop, Standardizable, NotCompletelyReachableShape, TooSmallTrivial };

inline const char* to_string(ShapeVerdict v) {
  switch (v) {
    case ShapeVerdict::FlipFlop: return "FlipFlop";
    case ShapeVerdict::Standardizable: return "Standardizable";
    case ShapeVerdict::NotCompletelyReachableShape: return "NotCompletelyReachable-Shape";
    case ShapeVerdict::TooSmallTrivial: return "TooSmallTrivial";
  }
  return "?";
}

struct Classification {
  ShapeVerdict verdict;
  std::string detail;
  // Meaningful only for Standardizable: the letter acting as an n-cycle.
  Letter cyclic_letter = Letter::B;
};

namespace detail {

struct RowShape {
  std::size_t defect = 0;
  bool cyclic = false;  // a single cycle through all n states
};

inline RowShape row_shape(std::span<const State> row) {
  const std::size_t n = row.size();
  std::vector<bool> hit(n, false);
  std::size_t image = 0;
  for (State t : row)
    if (!hit[t]) {
      hit[t] = true;
      ++image;
    }
  RowShape s;
  s.defect = n - image;
  if (s.defect == 0) {
    std::size_t len = 0;
    State q = 0;
    do {
      q = row[q];
      ++len;
    } while (q != 0 && len <= n);
    s.cyclic = (len == n);
  }
  return s;
}

// Both letters generate exactly {id, const 0, const 1} on two states.
inline bool is_flip_flop(const BinaryDfa& dfa) {
  if (dfa.size() != 2) return false;
  using T = std::pair<State, State>;
  std::set<T> monoid{{0, 1}};
  std::vector<T> frontier{{0, 1}};
  while (!frontier.empty()) {
    T t = frontier.back();
    frontier.pop_back();
    for (Letter c : kLetters) {
      T u{dfa.next(t.first, c), dfa.next(t.second, c)};
      if (monoid.insert(u).second) frontier.push_back(u);
    }
  }
  return monoid == std::set<T>{{0, 1}, {0, 0}, {1, 1}};
}

}  // namespace detail

inline Classification classify(const BinaryDfa& dfa) {
  const std::size_t n = dfa.size();
  if (n == 1) return {ShapeVerdict::TooSmallTrivial, "single state; the only nonempty subset is reached by the empty word"};
  if (detail::is_flip_flop(dfa)) return {ShapeVerdict::FlipFlop, "two-state flip-flop"};

  const auto sa = detail::row_shape(dfa.row(Letter::A));
  const auto sb = detail::row_shape(dfa.row(Letter::B));
  if (sb.cyclic && sa.defect == 1) return {ShapeVerdict::Standardizable, "b is an n-cycle, a has defect 1", Letter::B};
  if (sa.cyclic && sb.defect == 1) return {ShapeVerdict::Standardizable, "a is an n-cycle, b has defect 1", Letter::A};

  Classification c{ShapeVerdict::NotCompletelyReachableShape, ""};
  if (sa.defect != 1 && sb.defect != 1)
    c.detail = "no letter has defect 1, so no subset of size n-1 is reachable";
  else if (sa.defect >= 1 && sb.defect >= 1)
    c.detail = "both letters have positive defect, at most two subsets of size n-1 are reachable";
  else
    c.detail = "the permutation letter is not a single n-cycle";
  return c;
}

// Binary DFA on Z_n with b = +1, excl(a) = {0} and 0.a = dupl(a).
// Carries the relabeling back to the automaton it was derived from.
class StandardizedDfa {
 public:
  // Builds directly from the a-row (b is taken to be +1) with identity relabeling.
  static StandardizedDfa from_a_row(std::vector<State> a_row) {
    const std::size_t n = a_row.size();
    std::vector<State> ident(n);
    for (std::size_t i = 0; i < n; ++i) ident[i] = static_cast<State>(i);
    return StandardizedDfa(std::move(a_row), ident, ident, false, 0);
  }

  const BinaryDfa& dfa() const noexcept { return dfa_; }
  std::size_t size() const noexcept { return dfa_.size(); }
  std::span<const State> a_row() const noexcept { return dfa_.row(Letter::A); }
  State a(State q) const noexcept { return dfa_.next(q, Letter::A); }

  // The nonzero state with r.a = dupl(a).
  State r() const noexcept { return r_; }
  State dupl_a() const noexcept { return dupl_a_; }

  // original state -> standardized name, and the inverse.
  std::span<const State> to_new() const noexcept { return to_new_; }
  std::span<const State> to_old() const noexcept { return to_old_; }
  bool letters_swapped() const noexcept { return swapped_; }
  // Standardized a corresponds to the original word (cycle letter)^shift (defect letter).
  State shift() const noexcept { return shift_; }

  Word to_original_word(const Word& w) const {
    const Letter defect_letter = swapped_ ? Letter::B : Letter::A;
    const Letter cycle_letter = swapped_ ? Letter::A : Letter::B;
    Word out;
    for (Letter c : w) {
      if (c == Letter::B) {
        out.push_back(cycle_letter);
      } else {
        for (State i = 0; i < shift_; ++i) out.push_back(cycle_letter);
        out.push_back(defect_letter);
      }
    }
    return out;
  }
  StateSet to_original_states(const StateSet& s) const {
    StateSet out(size());
    s.for_each([&](State q) { out.insert(to_old_[q]); });
    return out;
  }
  StateSet from_original_states(const StateSet& s) const {
    StateSet out(size());
    s.for_each([&](State q) { out.insert(to_new_[q]); });
    return out;
  }

 private:
  friend StandardizedDfa standardize(const BinaryDfa&);

  static std::vector<State> plus_one(std::size_t n) {
    std::vector<State> b(n);
    for (std::size_t q = 0; q < n; ++q) b[q] = static_cast<State>((q + 1) % n);
    return b;
  }

  StandardizedDfa(std::vector<State> a_row, std::vector<State> to_new, std::vector<State> to_old,
                  bool swapped, State shift)
      : dfa_(std::move(a_row), plus_one(to_new.size())),
        to_new_(std::move(to_new)),
        to_old_(std::move(to_old)),
        swapped_(swapped),
        shift_(shift) {
    const std::size_t n = dfa_.size();
    if (n < 2) throw InvalidAutomaton("a standardized automaton needs at least two states");
    const auto row = dfa_.row(Letter::A);
    if (!dfa_.preimages(0, Letter::A).empty()) throw InvalidAutomaton("state 0 must not be in the image of a");
    std::size_t doubles = 0;
    for (State q = 1; q < n; ++q) {
      const auto pre = dfa_.preimages(q, Letter::A);
      if (pre.empty()) throw InvalidAutomaton("letter a must have defect exactly 1");
      if (pre.size() == 2) {
        ++doubles;
        dupl_a_ = q;
      }
    }
    if (doubles != 1) throw InvalidAutomaton("letter a must have defect exactly 1");
    if (row[0] != dupl_a_) throw InvalidAutomaton("0.a must equal dupl(a)");
    const auto pre = dfa_.preimages(dupl_a_, Letter::A);
    r_ = pre[0] == 0 ? pre[1] : pre[0];
  }

  BinaryDfa dfa_;
  std::vector<State> to_new_;
  std::vector<State> to_old_;
  bool swapped_ = false;
  State shift_ = 0;
  State r_ = 0;
  State dupl_a_ = 0;
};

// Relabels along the cycle letter starting at the excluded state of the defect
// letter, then replaces a by b^k a with k the smaller a-preimage of dupl(a).
// Linear in n.
inline StandardizedDfa standardize(const BinaryDfa& dfa) {
  const auto cls = classify(dfa);
  if (cls.verdict != ShapeVerdict::Standardizable)
    throw NotStandardizable("automaton is not standardizable: " + cls.detail);
  const std::size_t n = dfa.size();
  const Letter cyc = cls.cyclic_letter;
  const Letter def = cyc == Letter::B ? Letter::A : Letter::B;

  State excluded = 0;
  for (State q = 0; q < n; ++q)
    if (dfa.preimages(q, def).empty()) {
      excluded = q;
      break;
    }

  std::vector<State> to_old(n), to_new(n);
  State q = excluded;
  for (State i = 0; i < n; ++i) {
    to_old[i] = q;
    to_new[q] = i;
    q = dfa.next(q, cyc);
  }

  std::vector<State> relabeled(n);
  for (State i = 0; i < n; ++i) relabeled[i] = to_new[dfa.next(to_old[i], def)];

  // Preimages of the duplicate state under the relabeled defect letter.
  std::vector<std::uint8_t> hits(n, 0);
  State dup = 0;
  for (State t : relabeled)
    if (++hits[t] == 2) dup = t;
  State k = static_cast<State>(n);
  for (State i = 0; i < n && k == n; ++i)
    if (relabeled[i] == dup) k = i;

  std::vector<State> a_row(n);
  for (State i = 0; i < n; ++i) a_row[i] = relabeled[(i + k) % n];
  return StandardizedDfa(std::move(a_row), std::move(to_new), std::move(to_old), cyc == Letter::A, k);
}

}  // namespace cra
