#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace iiot {

/// Fixed-universe bitset over 0-based state/input indices. Iteration is
/// always in ascending index order.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe);
  IndexSet(std::size_t universe, std::initializer_list<std::size_t> members);

  static IndexSet full(std::size_t universe);
  static IndexSet from(std::size_t universe, const std::vector<std::size_t>& members);

  std::size_t universe() const noexcept { return universe_; }
  bool contains(std::size_t i) const noexcept {
    return i < universe_ && (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void insert(std::size_t i);
  void erase(std::size_t i);

  std::size_t size() const noexcept;
  bool empty() const noexcept;

  IndexSet& operator&=(const IndexSet& other);
  IndexSet& operator|=(const IndexSet& other);
  IndexSet& operator-=(const IndexSet& other);
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }
  friend bool operator==(const IndexSet&, const IndexSet&) = default;

  bool intersects(const IndexSet& other) const noexcept;
  bool subset_of(const IndexSet& other) const noexcept;

  std::vector<std::size_t> to_vector() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

 private:
  void check_universe(const IndexSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace iiot
