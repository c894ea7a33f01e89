#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fuzzybisim/degree.hpp"

namespace fuzzybisim {

/// Dense crisp relation between {0..rows-1} and {0..cols-1}.
class CrispRelation {
public:
  CrispRelation() = default;
  CrispRelation(std::size_t rows, std::size_t cols, bool value = false)
      : rows_(rows), cols_(cols), bits_(rows * cols, value ? 1 : 0) {}

  static CrispRelation identity(std::size_t n) {
    CrispRelation r(n, n);
    for (std::size_t i = 0; i < n; ++i)
      r.insert(i, i);
    return r;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool contains(std::size_t x, std::size_t y) const { return bits_[x * cols_ + y] != 0; }
  void insert(std::size_t x, std::size_t y) { bits_[x * cols_ + y] = 1; }
  void erase(std::size_t x, std::size_t y) { bits_[x * cols_ + y] = 0; }

  std::size_t size() const {
    std::size_t n = 0;
    for (char b : bits_)
      n += b != 0;
    return n;
  }
  bool empty() const { return size() == 0; }

  /// Pairs in lexicographic order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t x = 0; x < rows_; ++x)
      for (std::size_t y = 0; y < cols_; ++y)
        if (contains(x, y))
          out.emplace_back(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
    return out;
  }

  CrispRelation converse() const {
    CrispRelation r(cols_, rows_);
    for (std::size_t x = 0; x < rows_; ++x)
      for (std::size_t y = 0; y < cols_; ++y)
        if (contains(x, y))
          r.insert(y, x);
    return r;
  }

  bool subset_of(const CrispRelation &other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !other.bits_[i])
        return false;
    return true;
  }

  friend bool operator==(const CrispRelation &, const CrispRelation &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<char> bits_;
};

/// Dense fuzzy relation between {0..rows-1} and {0..cols-1}.
class FuzzyRelation {
public:
  FuzzyRelation() = default;
  FuzzyRelation(std::size_t rows, std::size_t cols, Degree fill = Degree::zero())
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Degree operator()(std::size_t x, std::size_t y) const { return values_[x * cols_ + y]; }
  Degree &at(std::size_t x, std::size_t y) { return values_[x * cols_ + y]; }
  void set(std::size_t x, std::size_t y, Degree d) { values_[x * cols_ + y] = d; }

  FuzzyRelation converse() const {
    FuzzyRelation r(cols_, rows_);
    for (std::size_t x = 0; x < rows_; ++x)
      for (std::size_t y = 0; y < cols_; ++y)
        r.set(y, x, (*this)(x, y));
    return r;
  }

  /// Pairs whose degree is at least `threshold`.
  CrispRelation cut(Degree threshold) const {
    CrispRelation r(rows_, cols_);
    for (std::size_t x = 0; x < rows_; ++x)
      for (std::size_t y = 0; y < cols_; ++y)
        if ((*this)(x, y) >= threshold)
          r.insert(x, y);
    return r;
  }

  static FuzzyRelation from_crisp(const CrispRelation &c) {
    FuzzyRelation r(c.rows(), c.cols());
    for (std::size_t x = 0; x < c.rows(); ++x)
      for (std::size_t y = 0; y < c.cols(); ++y)
        if (c.contains(x, y))
          r.set(x, y, Degree::one());
    return r;
  }

  friend bool operator==(const FuzzyRelation &, const FuzzyRelation &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Degree> values_;
};

/// Which fuzzy-equivalence laws (Gödel) hold, with one witness per failure.
struct LawReport {
  bool reflexive = true;
  bool symmetric = true;
  bool transitive = true;
  std::optional<std::uint32_t> reflexive_witness;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> symmetric_witness;
  /// (x, y, z) with min(r(x,y), r(y,z)) > r(x,z).
  std::optional<std::vector<std::uint32_t>> transitive_witness;

  bool all() const { return reflexive && symmetric && transitive; }
};

inline LawReport relation_laws(const FuzzyRelation &r) {
  if (r.rows() != r.cols())
    throw std::invalid_argument("relation_laws needs a relation on one universe");
  const std::size_t n = r.rows();
  LawReport rep;
  for (std::size_t x = 0; x < n && rep.reflexive; ++x)
    if (!r(x, x).is_one()) {
      rep.reflexive = false;
      rep.reflexive_witness = static_cast<std::uint32_t>(x);
    }
  for (std::size_t x = 0; x < n && rep.symmetric; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (r(x, y) != r(y, x)) {
        rep.symmetric = false;
        rep.symmetric_witness = {static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)};
        break;
      }
  for (std::size_t x = 0; x < n && rep.transitive; ++x)
    for (std::size_t y = 0; y < n && rep.transitive; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (tnorm(r(x, y), r(y, z)) > r(x, z)) {
          rep.transitive = false;
          rep.transitive_witness = std::vector<std::uint32_t>{
              static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y),
              static_cast<std::uint32_t>(z)};
          break;
        }
  return rep;
}

inline bool is_equivalence(const CrispRelation &r) {
  return relation_laws(FuzzyRelation::from_crisp(r)).all();
}

} // namespace fuzzybisim
