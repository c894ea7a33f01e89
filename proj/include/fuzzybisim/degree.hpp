#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzybisim {

class DegreeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A truth value in [0,1], stored as an exact decimal fixed-point number with
/// 18 fractional digits. Gödel operations only compare and select values, so
/// no rounding ever happens once a degree has been parsed.
class Degree {
public:
  static constexpr std::uint64_t kScale = 1'000'000'000'000'000'000ULL;
  static constexpr int kMaxFractionDigits = 18;

  constexpr Degree() = default;

  static constexpr Degree zero() { return Degree{}; }
  static constexpr Degree one() { return from_units(kScale); }

  static constexpr Degree from_units(std::uint64_t units) {
    if (units > kScale)
      throw DegreeError("degree out of range [0,1]");
    Degree d;
    d.units_ = units;
    return d;
  }

  /// Parses "0", "1", "0.25", "1.000", ".5". Exponents and signs are rejected.
  static Degree parse(std::string_view text) {
    auto fail = [&](const char *why) {
      throw DegreeError("invalid degree \"" + std::string(text) + "\": " + why);
    };
    if (text.empty())
      fail("empty");
    std::size_t dot = text.find('.');
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      fail("no digits");
    for (char c : int_part)
      if (c < '0' || c > '9')
        fail(c == '-' ? "out of range [0,1]" : "not a decimal number");
    for (char c : frac_part)
      if (c < '0' || c > '9')
        fail("not a decimal number");
    while (frac_part.size() > kMaxFractionDigits && frac_part.back() == '0')
      frac_part.remove_suffix(1);
    if (frac_part.size() > kMaxFractionDigits)
      fail("more than 18 fractional digits");

    std::uint64_t whole = 0;
    for (char c : int_part) {
      whole = whole * 10 + static_cast<std::uint64_t>(c - '0');
      if (whole > 1)
        fail("out of range [0,1]");
    }
    std::uint64_t frac = 0;
    std::uint64_t scale = kScale;
    for (char c : frac_part) {
      scale /= 10;
      frac += static_cast<std::uint64_t>(c - '0') * scale;
    }
    if (whole == 1 && frac != 0)
      fail("out of range [0,1]");
    return from_units(whole * kScale + frac);
  }

  std::uint64_t units() const { return units_; }
  bool is_zero() const { return units_ == 0; }
  bool is_one() const { return units_ == kScale; }

  /// Shortest exact decimal rendering: "0", "1", "0.4".
  std::string to_string() const {
    if (units_ == 0)
      return "0";
    if (units_ == kScale)
      return "1";
    std::string digits = std::to_string(units_);
    digits.insert(0, kMaxFractionDigits - digits.size(), '0');
    while (digits.back() == '0')
      digits.pop_back();
    return "0." + digits;
  }

  friend constexpr auto operator<=>(const Degree &, const Degree &) = default;

private:
  std::uint64_t units_ = 0;
};

inline Degree operator""_deg(const char *text, std::size_t len) {
  return Degree::parse(std::string_view(text, len));
}

// Gödel t-norm and its residuum.

inline Degree tnorm(Degree x, Degree y) { return std::min(x, y); }

inline Degree residuum(Degree x, Degree y) {
  return x <= y ? Degree::one() : y;
}

inline Degree biresiduum(Degree x, Degree y) {
  return std::min(residuum(x, y), residuum(y, x));
}

/// Totally ordered pool of the distinct degrees used by an instance, always
/// containing 0 and 1. Engines work on ranks into the pool.
class DegreePool {
public:
  DegreePool() : values_{Degree::zero(), Degree::one()} {}

  template <typename Range> explicit DegreePool(const Range &degrees) : DegreePool() {
    for (Degree d : degrees)
      values_.push_back(d);
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<Degree> &values() const { return values_; }
  Degree value(std::uint32_t rank) const { return values_.at(rank); }

  std::uint32_t rank(Degree d) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), d);
    if (it == values_.end() || *it != d)
      throw DegreeError("degree " + d.to_string() + " is not in the pool");
    return static_cast<std::uint32_t>(it - values_.begin());
  }

  bool contains(Degree d) const {
    return std::binary_search(values_.begin(), values_.end(), d);
  }

private:
  std::vector<Degree> values_;
};

} // namespace fuzzybisim
