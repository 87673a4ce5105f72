#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace locdom {

// Fixed-universe vertex set backed by 64-bit words. All verification work in
// this library reduces to masked popcounts over these, so the counting
// helpers below are allocation-free.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  int universe_size() const { return n_; }

  void add(int v) { w_[v >> 6] |= std::uint64_t(1) << (v & 63); }
  void remove(int v) { w_[v >> 6] &= ~(std::uint64_t(1) << (v & 63)); }
  bool contains(int v) const { return (w_[v >> 6] >> (v & 63)) & 1; }

  int count() const {
    int c = 0;
    for (std::uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (std::uint64_t w : w_)
      if (w) return false;
    return true;
  }

  void clear() {
    for (auto& w : w_) w = 0;
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  VertexSet& operator^=(const VertexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  VertexSet& subtract(const VertexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator^(VertexSet a, const VertexSet& b) { return a ^= b; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const VertexSet& a, const VertexSet& b) { return !(a == b); }

  bool is_subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  template <class Fn>
  void for_each(Fn fn) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        int b = std::countr_zero(w);
        fn(static_cast<int>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  // |a ∩ b|
  static int intersection_count(const VertexSet& a, const VertexSet& b) {
    int c = 0;
    for (std::size_t i = 0; i < a.w_.size(); ++i) c += std::popcount(a.w_[i] & b.w_[i]);
    return c;
  }

  // |(a △ b) ∩ mask|
  static int sym_diff_intersection_count(const VertexSet& a, const VertexSet& b,
                                         const VertexSet& mask) {
    int c = 0;
    for (std::size_t i = 0; i < a.w_.size(); ++i)
      c += std::popcount((a.w_[i] ^ b.w_[i]) & mask.w_[i]);
    return c;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace locdom
