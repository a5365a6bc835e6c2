#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "picard/modular.hpp"

namespace picard {

enum class FieldKind { rationals, prime };

/// Descriptor of the exact base field. Elements of every field are carried as
/// `Rational`; over a prime field they are kept as canonical residues in
/// [0, p).
class Field {
 public:
  static Field rationals() { return Field(FieldKind::rationals, 0); }
  /// Throws ContractViolation unless p is a prime below 2^62.
  static Field prime(std::uint64_t p);
  /// Accepts "rationals" or "prime:<p>".
  static Field parse(std::string_view text);

  FieldKind kind() const noexcept { return kind_; }
  std::uint64_t characteristic() const noexcept { return characteristic_; }
  bool is_prime() const noexcept { return kind_ == FieldKind::prime; }

  /// Canonical representative. Throws DivisionByCharacteristic when the
  /// denominator vanishes in the field.
  Rational normalize(const Rational& value) const;
  Rational inverse(const Rational& value) const;
  /// True when the integer n maps to zero in the field.
  bool vanishes(long n) const;

  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(FieldKind kind, std::uint64_t characteristic)
      : kind_(kind), characteristic_(characteristic) {}

  FieldKind kind_;
  std::uint64_t characteristic_;
};

}  // namespace picard
