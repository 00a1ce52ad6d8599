#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace cra {

using State = std::uint32_t;

// Fixed-universe set of states {0, ..., n-1} stored as a bit vector.
class StateSet {
 public:
  using Block = std::uint64_t;
  static constexpr std::size_t kBlockBits = 64;

  StateSet() = default;
  explicit StateSet(std::size_t universe)
      : universe_(universe), blocks_(block_count(universe), 0) {}
  StateSet(std::size_t universe, std::initializer_list<State> states)
      : StateSet(universe) {
    for (State q : states) insert(q);
  }
  StateSet(std::size_t universe, std::span<const State> states)
      : StateSet(universe) {
    for (State q : states) insert(q);
  }

  static StateSet full(std::size_t universe) {
    StateSet s(universe);
    for (auto& b : s.blocks_) b = ~Block{0};
    s.trim();
    return s;
  }

  static constexpr std::size_t block_count(std::size_t universe) {
    return (universe + kBlockBits - 1) / kBlockBits;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(State q) const noexcept {
    return q < universe_ && ((blocks_[q / kBlockBits] >> (q % kBlockBits)) & 1U);
  }
  void insert(State q) { blocks_[q / kBlockBits] |= Block{1} << (q % kBlockBits); }
  void erase(State q) { blocks_[q / kBlockBits] &= ~(Block{1} << (q % kBlockBits)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Block b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }
  bool empty() const noexcept {
    for (Block b : blocks_)
      if (b != 0) return false;
    return true;
  }

  bool is_subset_of(const StateSet& other) const noexcept {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~other.blocks_[i]) return false;
    return true;
  }
  bool intersects(const StateSet& other) const noexcept {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & other.blocks_[i]) return true;
    return false;
  }

  StateSet complement() const {
    StateSet s = *this;
    for (auto& b : s.blocks_) b = ~b;
    s.trim();
    return s;
  }

  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }
  StateSet& operator&=(const StateSet& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }
  StateSet& operator-=(const StateSet& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~o.blocks_[i];
    return *this;
  }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  friend bool operator==(const StateSet&, const StateSet&) = default;

  // {q + k mod n : q in this}
  StateSet translated(std::size_t k) const {
    StateSet s(universe_);
    if (universe_ == 0) return s;
    k %= universe_;
    for_each([&](State q) {
      s.insert(static_cast<State>((q + k) % universe_));
    });
    return s;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      Block b = blocks_[i];
      while (b != 0) {
        const int bit = std::countr_zero(b);
        f(static_cast<State>(i * kBlockBits + static_cast<std::size_t>(bit)));
        b &= b - 1;
      }
    }
  }

  std::vector<State> elements() const {
    std::vector<State> out;
    out.reserve(count());
    for_each([&](State q) { out.push_back(q); });
    return out;
  }

  // Smallest element, or universe() if empty.
  State first() const noexcept {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] != 0)
        return static_cast<State>(i * kBlockBits +
                                  static_cast<std::size_t>(std::countr_zero(blocks_[i])));
    return static_cast<State>(universe_);
  }

  std::span<const Block> blocks() const noexcept { return blocks_; }
  std::span<Block> blocks() noexcept { return blocks_; }

  std::size_t hash() const noexcept {
    std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
    for (Block b : blocks_) h = (h ^ b) * 0x100000001b3ULL + (h >> 29);
    return h;
  }

  // "{1, 4, 7}"
  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    bool first_item = true;
    for_each([&](State q) {
      if (!first_item) os << ", ";
      os << q;
      first_item = false;
    });
    os << '}';
    return os.str();
  }

 private:
  void trim() {
    const std::size_t rem = universe_ % kBlockBits;
    if (rem != 0 && !blocks_.empty()) blocks_.back() &= (Block{1} << rem) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<Block> blocks_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const noexcept { return s.hash(); }
};

}  // namespace cra
