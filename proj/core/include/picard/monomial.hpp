#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

namespace picard {

inline constexpr int kMaxVars = 4;

/// Exponent vector with one slot per variable. Unused trailing slots are zero,
/// so a monomial in three variables compares like its four-variable padding.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exponents{};

  int total_degree() const {
    int sum = 0;
    for (auto e : exponents) sum += e;
    return sum;
  }

  std::uint16_t operator[](int i) const { return exponents[static_cast<std::size_t>(i)]; }
  std::uint16_t& operator[](int i) { return exponents[static_cast<std::size_t>(i)]; }

  Monomial operator*(const Monomial& other) const {
    Monomial out;
    for (int i = 0; i < kMaxVars; ++i) out[i] = static_cast<std::uint16_t>((*this)[i] + other[i]);
    return out;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded reverse lexicographic comparison: higher total degree is greater;
/// among equal degrees, the monomial with the smaller exponent in the last
/// differing variable is greater.
std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b);

/// Strict "comes first" relation for canonical term order (descending grevlex).
struct GrevlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grevlex_compare(a, b) == std::strong_ordering::greater;
  }
};

/// All monomials in `nvars` variables of total degree exactly `degree`, in
/// canonical order. Empty for negative degree.
std::vector<Monomial> monomials_of_degree(int nvars, int degree);

/// All monomials of total degree at most `degree`, in canonical order.
std::vector<Monomial> monomials_up_to(int nvars, int degree);

}  // namespace picard
