#include "picard/field.hpp"

#include <charconv>

#include "picard/errors.hpp"

namespace picard {

Field Field::prime(std::uint64_t p) {
  if (p >= modular::kMaxPrime || !modular::is_prime(p)) {
    throw Error(ErrorCode::ContractViolation,
                "characteristic " + std::to_string(p) + " is not a supported prime");
  }
  return Field(FieldKind::prime, p);
}

Field Field::parse(std::string_view text) {
  if (text == "rationals" || text == "QQ") return rationals();
  constexpr std::string_view kPrefix = "prime:";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    std::string_view digits = text.substr(kPrefix.size());
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw Error(ErrorCode::ParseError, "bad field descriptor '" + std::string(text) + "'");
    }
    return prime(p);
  }
  throw Error(ErrorCode::ParseError, "bad field descriptor '" + std::string(text) + "'");
}

Rational Field::normalize(const Rational& value) const {
  if (kind_ == FieldKind::rationals) {
    Rational out = value;
    out.canonicalize();
    return out;
  }
  auto residue = modular::reduce(value, characteristic_);
  if (!residue) {
    throw Error(ErrorCode::DivisionByCharacteristic,
                "denominator of " + value.get_str() + " vanishes in " + to_string());
  }
  return Rational(Integer(static_cast<unsigned long>(*residue)));
}

Rational Field::inverse(const Rational& value) const {
  if (kind_ == FieldKind::rationals) {
    if (value == 0) throw Error(ErrorCode::ContractViolation, "inverse of zero");
    return 1 / value;
  }
  auto residue = modular::reduce(value, characteristic_);
  if (!residue || *residue == 0) throw Error(ErrorCode::ContractViolation, "inverse of zero");
  return Rational(Integer(static_cast<unsigned long>(modular::inverse(*residue, characteristic_))));
}

bool Field::vanishes(long n) const {
  if (kind_ == FieldKind::rationals) return n == 0;
  long p = static_cast<long>(characteristic_);
  return n % p == 0;
}

std::string Field::to_string() const {
  return kind_ == FieldKind::rationals ? "rationals" : "prime:" + std::to_string(characteristic_);
}

}  // namespace picard
