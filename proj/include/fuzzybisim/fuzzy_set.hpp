#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fuzzybisim/degree.hpp"

namespace fuzzybisim {

/// Finite fuzzy set stored by its support: a sorted vector of (element,
/// degree) pairs with every degree strictly positive.
template <typename Key> class FuzzySet {
public:
  using Entry = std::pair<Key, Degree>;

  FuzzySet() = default;

  /// Zero-degree entries are dropped; repeated keys are rejected.
  explicit FuzzySet(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::erase_if(entries_, [](const Entry &e) { return e.second.is_zero(); });
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry &a, const Entry &b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries_.size(); ++i)
      if (entries_[i - 1].first == entries_[i].first)
        throw std::invalid_argument("fuzzy set lists an element twice");
  }

  FuzzySet(std::initializer_list<Entry> entries)
      : FuzzySet(std::vector<Entry>(entries)) {}

  const std::vector<Entry> &entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Degree operator()(const Key &k) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), k,
        [](const Entry &e, const Key &key) { return e.first < key; });
    return (it != entries_.end() && it->first == k) ? it->second : Degree::zero();
  }

  /// µ(U): the maximum degree over members of U (0 if none are in the support).
  template <typename Pred> Degree max_over(Pred &&in_u) const {
    Degree best;
    for (const auto &[k, d] : entries_)
      if (in_u(k))
        best = std::max(best, d);
    return best;
  }

  std::vector<Key> support() const {
    std::vector<Key> out;
    out.reserve(entries_.size());
    for (const auto &e : entries_)
      out.push_back(e.first);
    return out;
  }

  /// Pointwise order: *this ≤ other.
  bool leq(const FuzzySet &other) const {
    for (const auto &[k, d] : entries_)
      if (d > other(k))
        return false;
    return true;
  }

  friend bool operator==(const FuzzySet &, const FuzzySet &) = default;
  friend auto operator<=>(const FuzzySet &a, const FuzzySet &b) {
    return a.entries_ <=> b.entries_;
  }

private:
  std::vector<Entry> entries_;
};

} // namespace fuzzybisim
