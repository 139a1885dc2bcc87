#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

namespace imml {

using World = std::uint32_t;

// Fixed-universe bitset over worlds 0..n-1. Universes up to 64 worlds stay
// inline, which keeps the enumeration hot loops allocation free.
class WorldSet {
  // One word inline; the heap vector is used only past 64 worlds.
  class Words {
   public:
    Words() = default;
    Words(std::size_t k, std::uint64_t v) : k_(k), inline_(v) {
      if (k > 1) heap_.assign(k, v);
    }
    std::size_t size() const { return k_; }
    bool empty() const { return k_ == 0; }
    std::uint64_t* begin() { return k_ > 1 ? heap_.data() : &inline_; }
    std::uint64_t* end() { return begin() + k_; }
    const std::uint64_t* begin() const { return k_ > 1 ? heap_.data() : &inline_; }
    const std::uint64_t* end() const { return begin() + k_; }
    std::uint64_t& operator[](std::size_t i) { return begin()[i]; }
    std::uint64_t operator[](std::size_t i) const { return begin()[i]; }
    std::uint64_t& back() { return begin()[k_ - 1]; }

   private:
    std::size_t k_ = 0;
    std::uint64_t inline_ = 0;
    std::vector<std::uint64_t> heap_;
  };

 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static WorldSet full(std::size_t n) {
    WorldSet s(n);
    for (auto& x : s.w_) x = ~std::uint64_t{0};
    s.trim();
    return s;
  }
  static WorldSet singleton(std::size_t n, World w) {
    WorldSet s(n);
    s.set(w);
    return s;
  }
  static WorldSet from_mask(std::size_t n, std::uint64_t mask) {
    WorldSet s(n);
    if (!s.w_.empty()) s.w_[0] = mask;
    s.trim();
    return s;
  }

  std::size_t universe() const { return n_; }
  bool test(World w) const { return (w_[w >> 6] >> (w & 63)) & 1u; }
  void set(World w) { w_[w >> 6] |= std::uint64_t{1} << (w & 63); }
  void reset(World w) { w_[w >> 6] &= ~(std::uint64_t{1} << (w & 63)); }
  void assign(World w, bool v) { v ? set(w) : reset(w); }
  void clear() {
    for (auto& x : w_) x = 0;
  }
  std::uint64_t low_word() const { return w_.empty() ? 0 : w_[0]; }

  bool empty() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }
  bool any() const { return !empty(); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  bool subset_of(const WorldSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const WorldSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  WorldSet& operator|=(const WorldSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  WorldSet& operator&=(const WorldSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  WorldSet& operator-=(const WorldSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  WorldSet complement() const {
    WorldSet s(*this);
    for (auto& x : s.w_) x = ~x;
    s.trim();
    return s;
  }
  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }

  friend bool operator==(const WorldSet& a, const WorldSet& b) {
    return a.n_ == b.n_ && std::equal(a.w_.begin(), a.w_.end(), b.w_.begin());
  }
  // Total order: by universe, then the set holding the lowest differing
  // element sorts first.
  friend std::strong_ordering operator<=>(const WorldSet& a, const WorldSet& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
      if (a.w_[i] == b.w_[i]) continue;
      std::uint64_t diff = a.w_[i] ^ b.w_[i];
      std::uint64_t low = diff & (~diff + 1);
      return (a.w_[i] & low) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
    for (auto x : w_) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = World;
    using difference_type = std::ptrdiff_t;
    using pointer = const World*;
    using reference = World;

    iterator() = default;
    iterator(const WorldSet* s, std::size_t word) : s_(s), word_(word) { advance_word(); }
    World operator*() const { return static_cast<World>(word_ * 64 + std::countr_zero(cur_)); }
    iterator& operator++() {
      cur_ &= cur_ - 1;
      if (!cur_) {
        ++word_;
        advance_word();
      }
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++*this;
      return t;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.word_ == b.word_ && a.cur_ == b.cur_;
    }

   private:
    void advance_word() {
      while (word_ < s_->w_.size() && !(cur_ = s_->w_[word_])) ++word_;
      if (word_ >= s_->w_.size()) {
        word_ = s_->w_.size();
        cur_ = 0;
      }
    }
    const WorldSet* s_ = nullptr;
    std::size_t word_ = 0;
    std::uint64_t cur_ = 0;
  };
  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, w_.size()); }

  std::vector<World> members() const { return {begin(), end()}; }

 private:
  void trim() {
    if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  Words w_;
};

struct WorldSetHash {
  std::size_t operator()(const WorldSet& s) const { return s.hash(); }
};

// A binary relation stored as successor rows: rel[w] = { v | w R v }.
using Relation = std::vector<WorldSet>;

Relation identity_relation(std::size_t n);
Relation empty_relation(std::size_t n);
Relation transpose(const Relation& r);
Relation reflexive_transitive_closure(Relation r);
bool is_reflexive(const Relation& r);
bool is_transitive(const Relation& r);
bool is_antisymmetric(const Relation& r);
bool is_upset(const WorldSet& s, const Relation& up);
// Largest upset contained in s, i.e. { w | up[w] ⊆ s }.
WorldSet interior(const WorldSet& s, const Relation& up);
WorldSet up_closure(const WorldSet& s, const Relation& up);
// Worlds with no strictly greater world.
WorldSet maximal_worlds(const Relation& up);

}  // namespace imml
