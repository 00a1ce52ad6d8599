#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cra/errors.hpp"
#include "cra/state_set.hpp"

namespace cra {

enum class Letter : std::uint8_t { A = 0, B = 1 };

inline constexpr std::array<Letter, 2> kLetters{Letter::A, Letter::B};

constexpr char letter_char(Letter c) noexcept { return c == Letter::A ? 'a' : 'b'; }

// A finite sequence of letters; the empty sequence is the empty word.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  // Parses a plain letter string such as "abbba".
  static Word from_string(std::string_view s) {
    Word w;
    for (char ch : s) {
      if (ch == 'a')
        w.push_back(Letter::A);
      else if (ch == 'b')
        w.push_back(Letter::B);
      else
        throw std::invalid_argument(std::string("invalid letter '") + ch + "' in word");
    }
    return w;
  }

  static Word power(Letter c, std::size_t k) { return Word(std::vector<Letter>(k, c)); }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  std::span<const Letter> letters() const noexcept { return letters_; }

  void push_back(Letter c) { letters_.push_back(c); }
  Word& operator+=(const Word& o) {
    letters_.insert(letters_.end(), o.letters_.begin(), o.letters_.end());
    return *this;
  }
  friend Word operator+(Word a, const Word& b) { return a += b; }
  friend bool operator==(const Word&, const Word&) = default;

  // "abbba"; the empty word prints as "" here, use to_compact() for display.
  std::string to_string() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter c : letters_) s.push_back(letter_char(c));
    return s;
  }

  // Run-length form, e.g. "ab^3a"; "eps" for the empty word.
  std::string to_compact() const {
    if (letters_.empty()) return "eps";
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size();) {
      std::size_t j = i;
      while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
      os << letter_char(letters_[i]);
      if (j - i > 1) os << '^' << (j - i);
      i = j;
    }
    return os.str();
  }

 private:
  std::vector<Letter> letters_;
};

// Complete deterministic automaton over {a, b} with states 0..n-1.
// Preimage lists of both letters are built once at construction and shared
// between copies.
class BinaryDfa {
 public:
  BinaryDfa(std::vector<State> delta_a, std::vector<State> delta_b)
      : a_(std::move(delta_a)), b_(std::move(delta_b)) {
    if (a_.empty()) throw InvalidAutomaton("automaton must have at least one state");
    if (a_.size() != b_.size()) throw InvalidAutomaton("transition rows differ in length");
    const std::size_t n = a_.size();
    for (auto* row : {&a_, &b_})
      for (State t : *row)
        if (t >= n) throw InvalidAutomaton("transition target " + std::to_string(t) + " out of range");
    pre_ = std::make_shared<const Preimages>(a_, b_);
  }

  std::size_t size() const noexcept { return a_.size(); }

  State next(State q, Letter c) const noexcept { return row(c)[q]; }
  std::span<const State> row(Letter c) const noexcept {
    return c == Letter::A ? std::span<const State>(a_) : std::span<const State>(b_);
  }
  std::span<const State> preimages(State q, Letter c) const noexcept {
    return pre_->of(q, c);
  }

  friend bool operator==(const BinaryDfa& x, const BinaryDfa& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  // CSR layout: targets of letter c for state q are list[c][offset[c][q] .. offset[c][q+1]).
  struct Preimages {
    Preimages(const std::vector<State>& a, const std::vector<State>& b) {
      build(0, a);
      build(1, b);
    }
    void build(int c, const std::vector<State>& row) {
      const std::size_t n = row.size();
      auto& off = offset[c];
      auto& lst = list[c];
      off.assign(n + 1, 0);
      for (State t : row) ++off[t + 1];
      for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
      lst.resize(n);
      std::vector<std::uint32_t> fill(off.begin(), off.end() - 1);
      for (std::size_t q = 0; q < n; ++q) lst[fill[row[q]]++] = static_cast<State>(q);
    }
    std::span<const State> of(State q, Letter c) const noexcept {
      const int i = static_cast<int>(c);
      return std::span<const State>(list[i]).subspan(offset[i][q], offset[i][q + 1] - offset[i][q]);
    }
    std::array<std::vector<std::uint32_t>, 2> offset;
    std::array<std::vector<State>, 2> list;
  };

  std::vector<State> a_;
  std::vector<State> b_;
  std::shared_ptr<const Preimages> pre_;
};

// Excluded and duplicate sets of a word.
struct WordSummary {
  StateSet excl;
  StateSet dupl;

  std::size_t defect() const noexcept { return excl.count(); }
  friend bool operator==(const WordSummary&, const WordSummary&) = default;

  static WordSummary empty_word(std::size_t n) { return {StateSet(n), StateSet(n)}; }
};

struct WordSummaryHash {
  std::size_t operator()(const WordSummary& s) const noexcept {
    return s.excl.hash() * 31 + s.dupl.hash();
  }
};

inline StateSet apply_letter(const BinaryDfa& dfa, const StateSet& start, Letter c) {
  StateSet out(dfa.size());
  const auto row = dfa.row(c);
  start.for_each([&](State q) { out.insert(row[q]); });
  return out;
}

inline StateSet apply_word(const BinaryDfa& dfa, StateSet start, const Word& w) {
  for (Letter c : w) start = apply_letter(dfa, start, c);
  return start;
}

// Transformation q -> q.w as an explicit table.
inline std::vector<State> word_transformation(const BinaryDfa& dfa, const Word& w) {
  std::vector<State> t(dfa.size());
  for (std::size_t q = 0; q < t.size(); ++q) t[q] = static_cast<State>(q);
  for (Letter c : w) {
    const auto row = dfa.row(c);
    for (auto& x : t) x = row[x];
  }
  return t;
}

// Summary of an explicit transformation: states never hit and states hit twice or more.
inline WordSummary summarize_transformation(std::span<const State> t) {
  const std::size_t n = t.size();
  std::vector<std::uint8_t> hits(n, 0);
  for (State x : t)
    if (hits[x] < 2) ++hits[x];
  WordSummary s = WordSummary::empty_word(n);
  for (std::size_t q = 0; q < n; ++q) {
    if (hits[q] == 0) s.excl.insert(static_cast<State>(q));
    if (hits[q] == 2) s.dupl.insert(static_cast<State>(q));
  }
  return s;
}

// Direct route: compose the word, then read off excl/dupl.
inline WordSummary summarize_word(const BinaryDfa& dfa, const Word& w) {
  return summarize_transformation(word_transformation(dfa, w));
}

// Summary of uc from the summary of u alone:
//   excl(uc) = {q : every c-preimage of q lies in excl(u)}
//   dupl(uc) = {q : some c-preimage of q lies in dupl(u), or q has >= 2 c-preimages outside excl(u)}
//
// Block form: inputs and outputs are raw bit vectors of StateSet::block_count(n)
// blocks each; outputs are overwritten.
inline void step_summary_blocks(const BinaryDfa& dfa, const StateSet::Block* excl,
                                const StateSet::Block* dupl, StateSet::Block* out_excl,
                                StateSet::Block* out_dupl, Letter c) {
  constexpr std::size_t B = StateSet::kBlockBits;
  const std::size_t n = dfa.size();
  const std::size_t blocks = StateSet::block_count(n);
  std::fill(out_excl, out_excl + blocks, 0);
  std::fill(out_dupl, out_dupl + blocks, 0);
  auto test = [](const StateSet::Block* v, State p) { return (v[p / B] >> (p % B)) & 1U; };
  for (State q = 0; q < n; ++q) {
    std::size_t live = 0;
    bool via_dupl = false;
    for (State p : dfa.preimages(q, c)) {
      if (!test(excl, p)) ++live;
      if (test(dupl, p)) via_dupl = true;
    }
    const StateSet::Block bit = StateSet::Block{1} << (q % B);
    if (live == 0) out_excl[q / B] |= bit;
    if (via_dupl || live >= 2) out_dupl[q / B] |= bit;
  }
}

inline WordSummary step_summary(const BinaryDfa& dfa, const WordSummary& s, Letter c) {
  WordSummary out = WordSummary::empty_word(dfa.size());
  step_summary_blocks(dfa, s.excl.blocks().data(), s.dupl.blocks().data(),
                      out.excl.blocks().data(), out.dupl.blocks().data(), c);
  return out;
}

inline WordSummary fold_summary(const BinaryDfa& dfa, const Word& w) {
  WordSummary s = WordSummary::empty_word(dfa.size());
  for (Letter c : w) s = step_summary(dfa, s, c);
  return s;
}

// --- BDF text format -------------------------------------------------------
//
//   n <N>
//   a: t0 t1 ... t(N-1)
//   b: t0 t1 ... t(N-1)
//
// '#' starts a comment, blank lines are ignored, tokens are separated by spaces.

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.size() > 18 ||
      !std::all_of(tok.begin(), tok.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw ParseError(line, "expected a non-negative decimal integer, got '" + tok + "'");
  return std::stoull(tok);
}

}  // namespace detail

inline BinaryDfa parse_dfa(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool have_n = false;
  std::vector<State> rows[2];
  bool have_row[2] = {false, false};

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;

    if (!have_n) {
      if (tokens[0] != "n" || tokens.size() != 2)
        throw ParseError(line_no, "expected header 'n <N>'");
      const auto v = detail::parse_uint(tokens[1], line_no);
      if (v < 1) throw ParseError(line_no, "state count must be at least 1");
      if (v > 0xffffffffULL) throw ParseError(line_no, "state count too large");
      n = static_cast<std::size_t>(v);
      have_n = true;
      continue;
    }

    int which;
    if (tokens[0] == "a:")
      which = 0;
    else if (tokens[0] == "b:")
      which = 1;
    else
      throw ParseError(line_no, "unexpected token '" + tokens[0] + "'");
    if (which == 0 && have_row[0]) throw ParseError(line_no, "duplicate row 'a:'");
    if (which == 1 && have_row[1]) throw ParseError(line_no, "duplicate row 'b:'");
    if (which == 1 && !have_row[0]) throw ParseError(line_no, "row 'b:' must follow row 'a:'");
    if (tokens.size() - 1 != n)
      throw ParseError(line_no, "row has " + std::to_string(tokens.size() - 1) +
                                    " entries, expected " + std::to_string(n));
    auto& row = rows[which];
    row.reserve(n);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto v = detail::parse_uint(tokens[i], line_no);
      if (v >= n)
        throw ParseError(line_no, "entry " + tokens[i] + " out of range [0, " + std::to_string(n) + ")");
      row.push_back(static_cast<State>(v));
    }
    have_row[which] = true;
  }
  if (!have_n) throw ParseError(0, "missing header 'n <N>'");
  if (!have_row[0]) throw ParseError(0, "missing row 'a:'");
  if (!have_row[1]) throw ParseError(0, "missing row 'b:'");
  return BinaryDfa(std::move(rows[0]), std::move(rows[1]));
}

inline BinaryDfa parse_dfa(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dfa(in);
}

inline std::string serialize_dfa(const BinaryDfa& dfa) {
  std::ostringstream os;
  os << "n " << dfa.size() << '\n';
  for (Letter c : kLetters) {
    os << letter_char(c) << ':';
    for (State t : dfa.row(c)) os << ' ' << t;
    os << '\n';
  }
  return os.str();
}

}  // namespace cra
