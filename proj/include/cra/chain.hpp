#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cra/cyclic_group.hpp"
#include "cra/dfa.hpp"
#include "cra/errors.hpp"
#include "cra/standardizer.hpp"

namespace cra {

enum class LevelSearch {
  // Worklist over excluded sets, accumulating the union of duplicate sets
  // reachable with each one.
  ExclUnion,
  // Plain BFS over (excl, dupl) pairs.
  Pairs,
};

struct ChainOptions {
  std::size_t pair_cap = 50'000'000;  // visited search keys per level
  std::size_t max_k = 64;
  LevelSearch method = LevelSearch::ExclUnion;
};

// D_k: duplicate states of words w with 0 in excl(w), excl(w) inside H_{k-1}
// and |excl(w)| <= k.  H_k = <hk_gen>.
struct ChainLevel {
  std::size_t k = 0;
  StateSet dk;
  std::size_t hk_gen = 0;
  std::map<State, Word> witnesses;
  std::size_t visited_pairs = 0;
};

enum class ChainOutcome { ReachedFullGroup, Stabilized };

inline const char* to_string(ChainOutcome o) {
  return o == ChainOutcome::ReachedFullGroup ? "ReachedFullGroup" : "Stabilized";
}

struct ChainResult {
  std::vector<ChainLevel> levels;
  ChainOutcome outcome = ChainOutcome::Stabilized;
  // ReachedFullGroup: first level with H = Z_n.  Stabilized: first l with H_l = H_{l+1}.
  std::size_t ell = 0;

  bool completely_reachable() const noexcept { return outcome == ChainOutcome::ReachedFullGroup; }
  // Generator of H_k; H_0 = {0} = <n>.
  std::size_t generator(std::size_t k, std::size_t n) const { return k == 0 ? n : levels.at(k - 1).hk_gen; }
};

namespace detail {

// Breadth-first search over reachable word summaries of defect <= max_defect.
// Summaries live in a flat arena of 2*W blocks each (excl, then dupl), in BFS
// order, with parent pointers for word recovery.
class SummarySearch {
 public:
  using Block = StateSet::Block;

  SummarySearch(const BinaryDfa& dfa, std::size_t max_defect, std::size_t cap)
      : dfa_(dfa),
        width_(StateSet::block_count(dfa.size())),
        seen_(1024, KeyHash{this}, KeyEq{this}) {
    arena_.assign(2 * width_, 0);  // empty word
    parent_.push_back(0);
    letter_.push_back(Letter::A);
    seen_.insert(0);

    std::vector<Block> scratch(2 * width_);
    for (std::uint32_t i = 0; i < parent_.size(); ++i) {
      for (Letter c : kLetters) {
        // Candidate is appended to the arena first; dropped if already present.
        const std::size_t base = arena_.size();
        arena_.resize(base + 2 * width_);
        const Block* src = &arena_[static_cast<std::size_t>(i) * 2 * width_];
        step_summary_blocks(dfa_, src, src + width_, scratch.data(), scratch.data() + width_, c);
        std::copy(scratch.begin(), scratch.end(), arena_.begin() + static_cast<std::ptrdiff_t>(base));
        std::size_t defect = 0;
        for (std::size_t j = 0; j < width_; ++j) defect += static_cast<std::size_t>(std::popcount(scratch[j]));
        const auto idx = static_cast<std::uint32_t>(parent_.size());
        if (defect > max_defect || !seen_.insert(idx).second) {
          arena_.resize(base);
          continue;
        }
        parent_.push_back(i);
        letter_.push_back(c);
        if (parent_.size() > cap)
          throw ResourceLimit("summary search exceeded the cap of " + std::to_string(cap) + " visited pairs");
      }
    }
  }

  std::size_t size() const noexcept { return parent_.size(); }

  WordSummary summary(std::size_t i) const {
    WordSummary s = WordSummary::empty_word(dfa_.size());
    const Block* src = &arena_[i * 2 * width_];
    std::copy(src, src + width_, s.excl.blocks().begin());
    std::copy(src + width_, src + 2 * width_, s.dupl.blocks().begin());
    return s;
  }

  StateSet excl(std::size_t i) const { return summary(i).excl; }
  StateSet dupl_union(std::size_t i) const { return summary(i).dupl; }

  Word word(std::size_t i) const {
    std::vector<Letter> rev;
    for (; i != 0; i = parent_[i]) rev.push_back(letter_[i]);
    return Word(std::vector<Letter>(rev.rbegin(), rev.rend()));
  }

 private:
  struct KeyHash {
    const SummarySearch* self;
    std::size_t operator()(std::uint32_t idx) const noexcept {
      const Block* k = &self->arena_[static_cast<std::size_t>(idx) * 2 * self->width_];
      std::size_t h = 0xcbf29ce484222325ULL;
      for (std::size_t j = 0; j < 2 * self->width_; ++j) h = (h ^ k[j]) * 0x100000001b3ULL ^ (h >> 31);
      return h;
    }
  };
  struct KeyEq {
    const SummarySearch* self;
    bool operator()(std::uint32_t x, std::uint32_t y) const noexcept {
      const std::size_t w = 2 * self->width_;
      return std::equal(&self->arena_[x * w], &self->arena_[x * w] + w, &self->arena_[y * w]);
    }
  };

  const BinaryDfa& dfa_;
  std::size_t width_;
  std::vector<Block> arena_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> letter_;
  std::unordered_set<std::uint32_t, KeyHash, KeyEq> seen_;
};

// Worklist over excluded sets. Since dupl(uc) = dupl(u).c u G_c(excl(u)),
// where G_c(E) = {q : at least two c-preimages of q lie outside E}, the union
// of all duplicate sets reachable together with a given excluded set obeys a
// distributive dataflow equation; its least fixpoint is computed here.
class ExclUnionSearch {
 public:
  using Block = StateSet::Block;
  static constexpr std::uint32_t kNone = 0xffffffffU;

  // Per (node, state): the node and state it was propagated from, or
  // from_state == kNone when the state was created fresh by G_c.
  struct Origin {
    std::uint32_t from_node = kNone;
    std::uint32_t from_state = kNone;
    Letter letter = Letter::A;
  };

  ExclUnionSearch(const BinaryDfa& dfa, std::size_t max_defect, std::size_t cap)
      : dfa_(dfa),
        n_(dfa.size()),
        width_(StateSet::block_count(dfa.size())),
        index_(1024, KeyHash{this}, KeyEq{this}) {
    add_node(std::vector<Block>(width_, 0), kNone, Letter::A);

    std::vector<Block> excl_next(width_), dupl_next(width_), fresh(width_), zero(width_, 0), scratch(width_);
    std::vector<Block> cur(width_);  // snapshot of U(i); node i may feed itself
    std::vector<std::uint32_t> queue{0};
    std::vector<std::uint8_t> queued{1};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t i = queue[head];
      queued[i] = 0;
      for (Letter c : kLetters) {
        std::copy(dupl_ptr(i), dupl_ptr(i) + width_, cur.begin());
        step_summary_blocks(dfa_, excl_ptr(i), cur.data(), excl_next.data(), dupl_next.data(), c);
        std::size_t defect = 0;
        for (Block b : excl_next) defect += static_cast<std::size_t>(std::popcount(b));
        if (defect > max_defect) continue;
        step_summary_blocks(dfa_, excl_ptr(i), zero.data(), scratch.data(), fresh.data(), c);

        std::uint32_t j = find(excl_next);
        const bool created = j == kNone;
        if (created) {
          j = add_node(excl_next, i, c);
          queued.push_back(0);
          if (excl_count() > cap)
            throw ResourceLimit("summary search exceeded the cap of " + std::to_string(cap) + " visited keys");
        }
        bool grew = false;
        for (std::size_t blk = 0; blk < width_; ++blk) {
          Block added = dupl_next[blk] & ~dupl_ptr(j)[blk];
          if (added == 0) continue;
          grew = true;
          dupl_ptr(j)[blk] |= added;
          while (added != 0) {
            const auto p = static_cast<State>(blk * StateSet::kBlockBits + static_cast<std::size_t>(std::countr_zero(added)));
            added &= added - 1;
            Origin& o = origin_[static_cast<std::size_t>(j) * n_ + p];
            o.from_node = i;
            o.letter = c;
            if (!((fresh[p / StateSet::kBlockBits] >> (p % StateSet::kBlockBits)) & 1U)) {
              for (State x : dfa_.preimages(p, c))
                if ((cur[x / StateSet::kBlockBits] >> (x % StateSet::kBlockBits)) & 1U) {
                  o.from_state = x;
                  break;
                }
            }
          }
        }
        if ((created || grew) && !queued[j]) {
          queued[j] = 1;
          queue.push_back(j);
        }
      }
    }
  }

  std::size_t size() const noexcept { return excl_count(); }

  StateSet excl(std::size_t i) const { return to_set(excl_ptr(i)); }
  StateSet dupl_union(std::size_t i) const { return to_set(dupl_ptr(i)); }

  // Some word reaching excluded set i.
  Word excl_word(std::size_t i) const {
    std::vector<Letter> rev;
    for (; tree_parent_[i] != kNone; i = tree_parent_[i]) rev.push_back(tree_letter_[i]);
    return Word(std::vector<Letter>(rev.rbegin(), rev.rend()));
  }

  // Some word w with excl(w) = excl(i) and p in dupl(w); p must be in dupl_union(i).
  Word dupl_word(std::size_t i, State p) const {
    std::vector<Letter> rev;
    for (;;) {
      const Origin& o = origin_[i * n_ + p];
      rev.push_back(o.letter);
      if (o.from_state == kNone) {
        Word w = excl_word(o.from_node);
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) w.push_back(*it);
        return w;
      }
      i = o.from_node;
      p = o.from_state;
    }
  }

 private:
  struct KeyHash {
    const ExclUnionSearch* self;
    std::size_t operator()(std::uint32_t idx) const noexcept { return self->hash_key(self->key_ptr(idx)); }
  };
  struct KeyEq {
    const ExclUnionSearch* self;
    bool operator()(std::uint32_t x, std::uint32_t y) const noexcept {
      return std::equal(self->key_ptr(x), self->key_ptr(x) + self->width_, self->key_ptr(y));
    }
  };

  std::size_t hash_key(const Block* k) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::size_t j = 0; j < width_; ++j) h = (h ^ k[j]) * 0x100000001b3ULL ^ (h >> 31);
    return h;
  }
  // Index kProbe refers to the probe buffer, letting lookups reuse KeyHash/KeyEq.
  static constexpr std::uint32_t kProbe = 0xfffffffeU;
  const Block* key_ptr(std::uint32_t idx) const noexcept {
    return idx == kProbe ? probe_.data() : &excl_[static_cast<std::size_t>(idx) * width_];
  }
  const Block* excl_ptr(std::size_t i) const noexcept { return &excl_[i * width_]; }
  Block* dupl_ptr(std::size_t i) noexcept { return &dupl_[i * width_]; }
  const Block* dupl_ptr(std::size_t i) const noexcept { return &dupl_[i * width_]; }
  std::size_t excl_count() const noexcept { return tree_parent_.size(); }

  std::uint32_t find(const std::vector<Block>& key) {
    probe_ = key;
    auto it = index_.find(kProbe);
    return it == index_.end() ? kNone : *it;
  }

  std::uint32_t add_node(const std::vector<Block>& key, std::uint32_t parent, Letter c) {
    const auto idx = static_cast<std::uint32_t>(excl_count());
    excl_.insert(excl_.end(), key.begin(), key.end());
    dupl_.resize(dupl_.size() + width_, 0);
    origin_.resize(origin_.size() + n_);
    tree_parent_.push_back(parent);
    tree_letter_.push_back(c);
    index_.insert(idx);
    return idx;
  }

  StateSet to_set(const Block* src) const {
    StateSet s(n_);
    std::copy(src, src + width_, s.blocks().begin());
    return s;
  }

  const BinaryDfa& dfa_;
  std::size_t n_;
  std::size_t width_;
  std::vector<Block> excl_;
  std::vector<Block> dupl_;
  std::vector<Origin> origin_;
  std::vector<std::uint32_t> tree_parent_;
  std::vector<Letter> tree_letter_;
  std::vector<Block> probe_;
  std::unordered_set<std::uint32_t, KeyHash, KeyEq> index_;
};

template <typename Search, typename WordFor>
void collect_level(const Search& search, std::size_t prev_gen, ChainLevel& level, WordFor&& word_for) {
  for (std::size_t i = 0; i < search.size(); ++i) {
    const StateSet excl = search.excl(i);
    if (!excl.contains(0) || !subset_of_subgroup(excl, prev_gen)) continue;
    const StateSet fresh = search.dupl_union(i) - level.dk;
    fresh.for_each([&](State p) {
      level.dk.insert(p);
      level.witnesses.emplace(p, word_for(i, p));
    });
  }
}

}  // namespace detail

// Exact D_k by exhausting all word summaries of defect <= k; sound because
// the next summary depends only on the current one and defect never drops.
inline ChainLevel compute_level(const StandardizedDfa& sdfa, std::size_t k, std::size_t prev_gen,
                                const ChainOptions& opts = {}) {
  if (k < 1) throw std::invalid_argument("chain level must be at least 1");
  const std::size_t n = sdfa.size();
  if (prev_gen < 1 || n % prev_gen != 0) throw std::invalid_argument("previous generator must divide n");

  ChainLevel level;
  level.k = k;
  level.dk = StateSet(n);
  if (opts.method == LevelSearch::Pairs) {
    detail::SummarySearch search(sdfa.dfa(), k, opts.pair_cap);
    level.visited_pairs = search.size();
    detail::collect_level(search, prev_gen, level, [&](std::size_t i, State) { return search.word(i); });
  } else {
    detail::ExclUnionSearch search(sdfa.dfa(), k, opts.pair_cap);
    level.visited_pairs = search.size();
    detail::collect_level(search, prev_gen, level, [&](std::size_t i, State p) { return search.dupl_word(i, p); });
  }
  level.hk_gen = subgroup_generator(level.dk, n);
  return level;
}

inline ChainResult compute_chain(const StandardizedDfa& sdfa, const ChainOptions& opts = {}) {
  if (opts.max_k < 1) throw std::invalid_argument("max_k must be at least 1");
  const std::size_t n = sdfa.size();
  ChainResult result;
  std::size_t prev_gen = n;
  for (std::size_t k = 1; k <= opts.max_k; ++k) {
    result.levels.push_back(compute_level(sdfa, k, prev_gen, opts));
    const std::size_t g = result.levels.back().hk_gen;
    if (g == 1) {
      result.outcome = ChainOutcome::ReachedFullGroup;
      result.ell = k;
      return result;
    }
    if (k > 1 && g == prev_gen) {
      result.outcome = ChainOutcome::Stabilized;
      result.ell = k - 1;
      return result;
    }
    prev_gen = g;
  }
  throw ResourceLimit("subgroup chain did not settle within " + std::to_string(opts.max_k) + " levels");
}

// Word w with Z_n . w = target, assembled one preimage step at a time: each
// step finds T with |T| = |S| + 1 and S = T . w' b^q, where w' witnesses a
// difference p - q in D_k across a straddled H_k-coset.
inline Word synthesize_witness_constructive(const StandardizedDfa& sdfa, const ChainResult& chain,
                                            const StateSet& target) {
  if (!chain.completely_reachable())
    throw NotCompletelyReachable("subgroup chain stabilized below Z_n");
  const std::size_t n = sdfa.size();
  if (target.universe() != n) throw std::invalid_argument("target universe does not match automaton");
  if (target.empty()) throw std::invalid_argument("target must be nonempty");

  const StateSet full = StateSet::full(n);
  const std::size_t ell = chain.ell;
  std::vector<Word> pieces;
  StateSet s = target;
  while (s != full) {
    std::size_t k = 1;
    while (k < ell && is_union_of_cosets(s, chain.generator(k, n))) ++k;
    const std::size_t gk = chain.generator(k, n);
    const ChainLevel& level = chain.levels[k - 1];

    std::optional<std::pair<State, State>> pick;
    for (std::size_t t = 0; t < gk && !pick; ++t) {
      bool has_in = false, has_out = false;
      for (std::size_t x = t; x < n; x += gk) (s.contains(static_cast<State>(x)) ? has_in : has_out) = true;
      if (!(has_in && has_out)) continue;
      for (std::size_t q = t; q < n && !pick; q += gk) {
        if (s.contains(static_cast<State>(q))) continue;
        State best = static_cast<State>(n);
        level.dk.for_each([&](State d) {
          const auto p = static_cast<State>((q + d) % n);
          if (s.contains(p)) best = std::min(best, p);
        });
        if (best < n) pick.emplace(static_cast<State>(q), best);
      }
    }
    if (!pick) throw InternalError("no edge leaves the straddled coset");
    const auto [q, p] = *pick;
    const State diff = static_cast<State>((p + n - q) % n);
    Word v = level.witnesses.at(diff) + Word::power(Letter::B, q);

    const auto t = word_transformation(sdfa.dfa(), v);
    std::vector<State> first_pre(n, static_cast<State>(n));
    std::vector<State> pre_p;
    for (State x = 0; x < n; ++x) {
      if (first_pre[t[x]] == n) first_pre[t[x]] = x;
      if (t[x] == p && pre_p.size() < 2) pre_p.push_back(x);
    }
    if (pre_p.size() != 2) throw InternalError("chosen state is not a duplicate of the step word");
    StateSet next(n);
    next.insert(pre_p[0]);
    next.insert(pre_p[1]);
    s.for_each([&](State x) {
      if (x == p) return;
      if (first_pre[x] == n) throw InternalError("target meets the excluded set of the step word");
      next.insert(first_pre[x]);
    });
    if (next.count() != s.count() + 1) throw InternalError("preimage step did not grow by one state");
    pieces.push_back(std::move(v));
    s = std::move(next);
  }

  Word w;
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) w += *it;
  if (apply_word(sdfa.dfa(), full, w) != target) throw InternalError("constructive witness failed replay");
  return w;
}

}  // namespace cra
