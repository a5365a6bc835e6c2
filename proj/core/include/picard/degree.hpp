#pragma once

#include <compare>
#include <optional>
#include <string>

namespace picard {

/// Total degree of a polynomial. The zero polynomial has degree minus
/// infinity, which compares below every integer and has no integer value.
class Degree {
 public:
  static constexpr Degree minus_infinity() { return Degree(); }
  static constexpr Degree of(int value) { return Degree(value); }

  constexpr bool is_minus_infinity() const { return !value_.has_value(); }

  /// Throws std::bad_optional_access on minus infinity.
  constexpr int value() const { return value_.value(); }

  friend constexpr bool operator==(const Degree&, const Degree&) = default;
  friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (a.is_minus_infinity() || b.is_minus_infinity()) {
      return b.is_minus_infinity() <=> a.is_minus_infinity();
    }
    return *a.value_ <=> *b.value_;
  }
  friend constexpr bool operator==(const Degree& a, int b) { return a.value_ == b; }
  friend constexpr std::strong_ordering operator<=>(const Degree& a, int b) {
    return a <=> Degree(b);
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : "-inf"; }

 private:
  constexpr Degree() = default;
  constexpr explicit Degree(int value) : value_(value) {}

  std::optional<int> value_;
};

}  // namespace picard
