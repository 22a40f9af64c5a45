#include "iiot/index_set.hpp"

#include <bit>
#include <string>

#include "iiot/errors.hpp"

namespace iiot {

IndexSet::IndexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

IndexSet::IndexSet(std::size_t universe, std::initializer_list<std::size_t> members) : IndexSet(universe) {
  for (std::size_t m : members) insert(m);
}

IndexSet IndexSet::full(std::size_t universe) {
  IndexSet s(universe);
  for (std::size_t i = 0; i < universe; ++i) s.insert(i);
  return s;
}

IndexSet IndexSet::from(std::size_t universe, const std::vector<std::size_t>& members) {
  IndexSet s(universe);
  for (std::size_t m : members) s.insert(m);
  return s;
}

void IndexSet::insert(std::size_t i) {
  if (i >= universe_)
    throw Error(Errc::IndexOutOfRange, "index " + std::to_string(i) + " outside universe " + std::to_string(universe_));
  words_[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void IndexSet::erase(std::size_t i) {
  if (i < universe_) words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

std::size_t IndexSet::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool IndexSet::empty() const noexcept {
  for (auto w : words_)
    if (w) return false;
  return true;
}

void IndexSet::check_universe(const IndexSet& other) const {
  if (other.universe_ != universe_) throw Error(Errc::DimensionMismatch, "index sets over different universes");
}

IndexSet& IndexSet::operator&=(const IndexSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

IndexSet& IndexSet::operator|=(const IndexSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

IndexSet& IndexSet::operator-=(const IndexSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

bool IndexSet::intersects(const IndexSet& other) const noexcept {
  if (other.universe_ != universe_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & other.words_[w]) return true;
  return false;
}

bool IndexSet::subset_of(const IndexSet& other) const noexcept {
  if (other.universe_ != universe_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w]) return false;
  return true;
}

std::vector<std::size_t> IndexSet::to_vector() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

}  // namespace iiot
