#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "picard/degree.hpp"
#include "picard/field.hpp"
#include "picard/monomial.hpp"

namespace picard {

struct Term {
  Monomial monomial;
  Rational coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial in 1..4 variables over an exact field.
///
/// Terms are stored in descending graded reverse lexicographic order and no
/// stored coefficient is zero, so structural equality is mathematical
/// equality. Values are immutable in practice: every operation returns a new
/// polynomial.
class Polynomial {
 public:
  Polynomial(Field field, int nvars);

  static Polynomial constant(const Field& field, int nvars, const Rational& value);
  static Polynomial variable(const Field& field, int nvars, int index);
  static Polynomial monomial(const Field& field, int nvars, const Monomial& m,
                             const Rational& coefficient = 1);
  /// Combines like terms, normalizes coefficients into the field and drops zeros.
  static Polynomial from_terms(const Field& field, int nvars, std::vector<Term> terms);

  const Field& field() const noexcept { return field_; }
  int nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  Degree degree() const;
  /// The zero polynomial counts as homogeneous.
  bool is_homogeneous() const;
  Rational coefficient(const Monomial& m) const;
  /// Sum of the terms of total degree exactly k.
  Polynomial homogeneous_component(int k) const;
  /// Same coefficients read in another field (reduction mod p from the
  /// rationals). Throws DivisionByCharacteristic on a vanishing denominator.
  Polynomial in_field(const Field& target) const;
  Polynomial pow(unsigned exponent) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  /// Exact equality. Throws IncompatibleOperands on field or arity mismatch.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_compatible(const Polynomial& other) const;
  Polynomial add_scaled(const Polynomial& other, bool negate) const;

  Field field_;
  int nvars_;
  std::vector<Term> terms_;
};

/// Formal partial derivative with respect to variable `var`.
Polynomial differentiate(const Polynomial& p, int var);

/// Adds a homogenizing variable after the existing ones; the result is
/// homogeneous of `target_degree`. Throws DegreeTooSmall when
/// target_degree < deg p.
Polynomial homogenize(const Polynomial& p, int target_degree);

/// Sets the last variable to 1 and drops it.
Polynomial dehomogenize(const Polynomial& p);

/// sum_i x_i dF/dx_i - deg(F) F, the zero polynomial for every form F.
/// Throws NotHomogeneous otherwise.
Polynomial euler_residual(const Polynomial& form);

/// Exact evaluation. Throws IndexOutOfRange when point.size() != nvars.
Rational evaluate(const Polynomial& p, std::span<const Rational> point);

/// Substitutes x_i -> images[i]. All images share one field and arity.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images);

/// Default variable names: x, y, z, w.
std::span<const std::string> default_variable_names(int nvars);

/// Canonical text form, e.g. "x^2*y-3/4*z+1". Residues over a prime field
/// print as their representative in [0, p).
std::string to_string(const Polynomial& p);
std::string to_string(const Polynomial& p, std::span<const std::string> names);

/// Parses sums/products/powers/parentheses of integer or rational constants and
/// variables. Throws ParseError.
Polynomial parse_polynomial(std::string_view text, const Field& field, int nvars);
Polynomial parse_polynomial(std::string_view text, const Field& field,
                            std::span<const std::string> names);

}  // namespace picard
