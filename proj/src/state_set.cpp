#include "atlir/state_set.hpp"

#include <algorithm>
#include <sstream>

namespace atlir {

void StateSet::const_iterator::seek() {
  const std::size_t limit = words_->size() * 64;
  while (pos_ < limit) {
    const std::size_t w = pos_ / 64;
    const std::uint64_t rest = (*words_)[w] >> (pos_ % 64);
    if (rest != 0) {
      pos_ += static_cast<std::size_t>(std::countr_zero(rest));
      return;
    }
    pos_ = (w + 1) * 64;
  }
  pos_ = limit;
}

StateSet::StateSet(std::initializer_list<StateId> states) {
  for (StateId q : states) insert(q);
}

StateSet StateSet::all(std::size_t n) {
  StateSet s;
  s.words_.assign((n + 63) / 64, ~std::uint64_t{0});
  if (n % 64 != 0) s.words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
  return s;
}

void StateSet::insert(StateId q) {
  const std::size_t w = q / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (q % 64);
}

void StateSet::erase(StateId q) {
  const std::size_t w = q / 64;
  if (w < words_.size()) {
    words_[w] &= ~(std::uint64_t{1} << (q % 64));
    trim();
  }
}

std::size_t StateSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool StateSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<StateId> StateSet::to_vector() const { return {begin(), end()}; }

StateSet& StateSet::operator|=(const StateSet& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

StateSet& StateSet::operator&=(const StateSet& other) {
  if (words_.size() > other.words_.size()) words_.resize(other.words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  trim();
  return *this;
}

StateSet& StateSet::operator-=(const StateSet& other) {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
  trim();
  return *this;
}

bool StateSet::subset_of(const StateSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
    if ((words_[i] & ~o) != 0) return false;
  }
  return true;
}

bool StateSet::intersects(const StateSet& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

void StateSet::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

bool operator==(const StateSet& a, const StateSet& b) {
  const std::size_t n = std::max(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t x = i < a.words_.size() ? a.words_[i] : 0;
    const std::uint64_t y = i < b.words_.size() ? b.words_[i] : 0;
    if (x != y) return false;
  }
  return true;
}

// Lexicographic on the sorted element sequence.
std::strong_ordering operator<=>(const StateSet& a, const StateSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (*ia != *ib) return *ia <=> *ib;
  }
  if (ia == a.end() && ib == b.end()) return std::strong_ordering::equal;
  return ia == a.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string to_string(const StateSet& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (StateId q : s) {
    if (!first) out << ',';
    out << q;
    first = false;
  }
  out << '}';
  return out.str();
}

}  // namespace atlir
