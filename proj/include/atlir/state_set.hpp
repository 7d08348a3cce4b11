#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

namespace atlir {

using StateId = std::uint32_t;
using AgentId = std::uint32_t;
using ActionId = std::uint32_t;
using PropId = std::uint32_t;

/// Finite set of states backed by a growable bitset. Iteration is in
/// increasing state order; trailing zero words never affect comparisons.
class StateSet {
 public:
  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = StateId;
    using difference_type = std::ptrdiff_t;
    using pointer = const StateId*;
    using reference = StateId;

    const_iterator() = default;
    const_iterator(const std::vector<std::uint64_t>* words, std::size_t pos)
        : words_(words), pos_(pos) {
      seek();
    }

    StateId operator*() const { return static_cast<StateId>(pos_); }
    const_iterator& operator++() {
      ++pos_;
      seek();
      return *this;
    }
    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const const_iterator& other) const { return pos_ == other.pos_; }

   private:
    void seek();

    const std::vector<std::uint64_t>* words_ = nullptr;
    std::size_t pos_ = 0;
  };

  StateSet() = default;
  StateSet(std::initializer_list<StateId> states);

  /// {0, ..., n-1}
  static StateSet all(std::size_t n);

  template <typename It>
  static StateSet from_range(It first, It last) {
    StateSet s;
    for (; first != last; ++first) s.insert(static_cast<StateId>(*first));
    return s;
  }

  bool contains(StateId q) const {
    const std::size_t w = q / 64;
    return w < words_.size() && ((words_[w] >> (q % 64)) & 1U) != 0;
  }
  void insert(StateId q);
  void erase(StateId q);
  void clear() { words_.clear(); }

  std::size_t size() const;
  bool empty() const;

  const_iterator begin() const { return {&words_, 0}; }
  const_iterator end() const { return {&words_, words_.size() * 64}; }

  std::vector<StateId> to_vector() const;

  StateSet& operator|=(const StateSet& other);
  StateSet& operator&=(const StateSet& other);
  StateSet& operator-=(const StateSet& other);

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  bool subset_of(const StateSet& other) const;
  bool intersects(const StateSet& other) const;

  friend bool operator==(const StateSet& a, const StateSet& b);
  friend std::strong_ordering operator<=>(const StateSet& a, const StateSet& b);

 private:
  void trim();

  std::vector<std::uint64_t> words_;
};

std::string to_string(const StateSet& s);

}  // namespace atlir
