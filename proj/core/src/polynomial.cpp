#include "picard/polynomial.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "picard/errors.hpp"

namespace picard {

namespace {

void check_nvars(int nvars) {
  if (nvars < 1 || nvars > kMaxVars) {
    throw Error(ErrorCode::IndexOutOfRange, "polynomials support 1.." +
                                                std::to_string(kMaxVars) + " variables");
  }
}

std::vector<Term> collect(const Field& field, std::map<Monomial, Rational, GrevlexDescending>& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    Rational v = field.normalize(c);
    if (v != 0) out.push_back(Term{m, std::move(v)});
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(Field field, int nvars) : field_(field), nvars_(nvars) { check_nvars(nvars); }

Polynomial Polynomial::constant(const Field& field, int nvars, const Rational& value) {
  return monomial(field, nvars, Monomial{}, value);
}

Polynomial Polynomial::variable(const Field& field, int nvars, int index) {
  if (index < 0 || index >= nvars) {
    throw Error(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(index));
  }
  Monomial m;
  m[index] = 1;
  return monomial(field, nvars, m);
}

Polynomial Polynomial::monomial(const Field& field, int nvars, const Monomial& m,
                                const Rational& coefficient) {
  Polynomial p(field, nvars);
  for (int i = nvars; i < kMaxVars; ++i) {
    if (m[i] != 0) throw Error(ErrorCode::IndexOutOfRange, "monomial uses an absent variable");
  }
  Rational c = field.normalize(coefficient);
  if (c != 0) p.terms_.push_back(Term{m, std::move(c)});
  return p;
}

Polynomial Polynomial::from_terms(const Field& field, int nvars, std::vector<Term> terms) {
  Polynomial p(field, nvars);
  std::map<Monomial, Rational, GrevlexDescending> acc;
  for (auto& t : terms) {
    for (int i = nvars; i < kMaxVars; ++i) {
      if (t.monomial[i] != 0) throw Error(ErrorCode::IndexOutOfRange, "term uses an absent variable");
    }
    acc[t.monomial] += t.coefficient;
  }
  p.terms_ = collect(field, acc);
  return p;
}

Degree Polynomial::degree() const {
  if (terms_.empty()) return Degree::minus_infinity();
  // descending grevlex puts a term of maximal total degree first
  return Degree::of(terms_.front().monomial.total_degree());
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.front().monomial.total_degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const Term& t) { return t.monomial.total_degree() == d; });
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
    return GrevlexDescending{}(t.monomial, key);
  });
  if (it != terms_.end() && it->monomial == m) return it->coefficient;
  return 0;
}

Polynomial Polynomial::homogeneous_component(int k) const {
  Polynomial out(field_, nvars_);
  for (const auto& t : terms_) {
    if (t.monomial.total_degree() == k) out.terms_.push_back(t);
  }
  return out;
}

Polynomial Polynomial::in_field(const Field& target) const {
  std::vector<Term> copy = terms_;
  return from_terms(target, nvars_, std::move(copy));
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(field_, nvars_, 1);
  Polynomial base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (!(field_ == other.field_) || nvars_ != other.nvars_) {
    throw Error(ErrorCode::IncompatibleOperands,
                "operands over " + field_.to_string() + "/" + std::to_string(nvars_) + " and " +
                    other.field_.to_string() + "/" + std::to_string(other.nvars_));
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out(field_, nvars_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back(Term{t.monomial, field_.normalize(-t.coefficient)});
  return out;
}

Polynomial Polynomial::add_scaled(const Polynomial& other, bool negate) const {
  check_compatible(other);
  Polynomial out(field_, nvars_);
  out.terms_.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  GrevlexDescending first;
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && first(a->monomial, b->monomial))) {
      out.terms_.push_back(*a++);
    } else if (a == terms_.end() || first(b->monomial, a->monomial)) {
      out.terms_.push_back(Term{b->monomial, negate ? field_.normalize(-b->coefficient) : b->coefficient});
      ++b;
    } else {
      Rational c = negate ? Rational(a->coefficient - b->coefficient) : Rational(a->coefficient + b->coefficient);
      c = field_.normalize(c);
      if (c != 0) out.terms_.push_back(Term{a->monomial, std::move(c)});
      ++a;
      ++b;
    }
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) { return *this = add_scaled(other, false); }

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this = add_scaled(other, true); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  std::map<Monomial, Rational, GrevlexDescending> acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) acc[s.monomial * t.monomial] += s.coefficient * t.coefficient;
  }
  Polynomial out(a.field_, a.nvars_);
  out.terms_ = collect(a.field_, acc);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  Rational s = field_.normalize(scalar);
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient = field_.normalize(t.coefficient * s);
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  return a.terms_ == b.terms_;
}

Polynomial differentiate(const Polynomial& p, int var) {
  if (var < 0 || var >= p.nvars()) {
    throw Error(ErrorCode::IndexOutOfRange, "derivative index " + std::to_string(var));
  }
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    const auto e = t.monomial[var];
    if (e == 0) continue;
    Term d = t;
    d.monomial[var] = static_cast<std::uint16_t>(e - 1);
    d.coefficient *= e;
    out.push_back(std::move(d));
  }
  return Polynomial::from_terms(p.field(), p.nvars(), std::move(out));
}

Polynomial homogenize(const Polynomial& p, int target_degree) {
  if (p.nvars() >= kMaxVars) {
    throw Error(ErrorCode::IndexOutOfRange, "no slot left for a homogenizing variable");
  }
  if (p.degree() > target_degree) {
    throw Error(ErrorCode::DegreeTooSmall, "cannot homogenize degree " + p.degree().to_string() +
                                               " to " + std::to_string(target_degree));
  }
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term h = t;
    h.monomial[p.nvars()] = static_cast<std::uint16_t>(target_degree - t.monomial.total_degree());
    out.push_back(std::move(h));
  }
  return Polynomial::from_terms(p.field(), p.nvars() + 1, std::move(out));
}

Polynomial dehomogenize(const Polynomial& p) {
  if (p.nvars() < 2) throw Error(ErrorCode::IndexOutOfRange, "nothing to dehomogenize");
  const int last = p.nvars() - 1;
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term h = t;
    h.monomial[last] = 0;
    out.push_back(std::move(h));
  }
  return Polynomial::from_terms(p.field(), last, std::move(out));
}

Polynomial euler_residual(const Polynomial& form) {
  if (!form.is_homogeneous()) throw Error(ErrorCode::NotHomogeneous, "Euler residual of a non-form");
  Polynomial sum(form.field(), form.nvars());
  if (form.is_zero()) return sum;
  for (int i = 0; i < form.nvars(); ++i) {
    sum += Polynomial::variable(form.field(), form.nvars(), i) * differentiate(form, i);
  }
  return sum - form * Rational(form.degree().value());
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  if (static_cast<int>(point.size()) != p.nvars()) {
    throw Error(ErrorCode::IndexOutOfRange, "point of length " + std::to_string(point.size()) +
                                                " for " + std::to_string(p.nvars()) + " variables");
  }
  const Field& field = p.field();
  std::array<Rational, kMaxVars> coords;
  for (int i = 0; i < p.nvars(); ++i) coords[static_cast<std::size_t>(i)] = field.normalize(point[static_cast<std::size_t>(i)]);
  Rational total = 0;
  for (const auto& t : p.terms()) {
    Rational value = t.coefficient;
    for (int i = 0; i < p.nvars(); ++i) {
      for (unsigned k = 0; k < t.monomial[i]; ++k) value *= coords[static_cast<std::size_t>(i)];
    }
    total += value;
    if (field.is_prime()) total = field.normalize(total);
  }
  return field.normalize(total);
}

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images) {
  if (static_cast<int>(images.size()) != p.nvars() || images.empty()) {
    throw Error(ErrorCode::IndexOutOfRange, "substitution needs one image per variable");
  }
  const Field& field = images.front().field();
  const int nvars = images.front().nvars();
  // powers[i][k] = images[i]^k, built lazily
  std::vector<std::vector<Polynomial>> powers(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    powers[i].push_back(Polynomial::constant(field, nvars, 1));
  }
  Polynomial total(field, nvars);
  for (const auto& t : p.terms()) {
    Polynomial product = Polynomial::constant(field, nvars, field.normalize(t.coefficient));
    for (std::size_t i = 0; i < images.size(); ++i) {
      const auto e = t.monomial[static_cast<int>(i)];
      while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * images[i]);
      if (e != 0) product *= powers[i][e];
    }
    total += product;
  }
  return total;
}

std::span<const std::string> default_variable_names(int nvars) {
  static const std::array<std::string, kMaxVars> kNames = {"x", "y", "z", "w"};
  check_nvars(nvars);
  return std::span<const std::string>(kNames.data(), static_cast<std::size_t>(nvars));
}

std::string to_string(const Polynomial& p) { return to_string(p, default_variable_names(p.nvars())); }

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coefficient;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (negative) {
      out += '-';
    } else if (!first) {
      out += '+';
    }
    first = false;
    std::string mono;
    for (int i = 0; i < p.nvars(); ++i) {
      const auto e = t.monomial[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[static_cast<std::size_t>(i)];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.get_str() + "*" + mono;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Field& field, std::span<const std::string> names)
      : text_(text), field_(field), names_(names), nvars_(static_cast<int>(names.size())) {}

  Polynomial parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty polynomial");
    Polynomial result = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError,
                "polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_primary() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
  }

  Polynomial expression() {
    Polynomial acc(field_, nvars_);
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    Polynomial t = term();
    acc = negative ? -t : t;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        Polynomial divisor = factor();
        if (divisor.is_zero() || divisor.degree() != 0) fail("division by a non-constant or zero");
        acc *= field_.inverse(divisor.terms().front().coefficient);
      } else if (starts_primary()) {
        acc *= factor();  // implicit product such as 2x or 3(x+y)
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a nonnegative integer");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 4) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Integer value(std::string(text_.substr(start, pos_ - start)));
      return Polynomial::constant(field_, nvars_, Rational(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view ident = text_.substr(start, pos_ - start);
      for (int i = 0; i < nvars_; ++i) {
        if (names_[static_cast<std::size_t>(i)] == ident) return Polynomial::variable(field_, nvars_, i);
      }
      pos_ = start;
      fail("unknown variable '" + std::string(ident) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  Field field_;
  std::span<const std::string> names_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Field& field, int nvars) {
  return parse_polynomial(text, field, default_variable_names(nvars));
}

Polynomial parse_polynomial(std::string_view text, const Field& field,
                            std::span<const std::string> names) {
  check_nvars(static_cast<int>(names.size()));
  return Parser(text, field, names).parse();
}

}  // namespace picard
