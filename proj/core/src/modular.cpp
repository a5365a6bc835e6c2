#include "picard/modular.hpp"

#include <array>

namespace picard::modular {

u64 pow(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp != 0) {
    if (exp & 1U) result = mul(result, base, p);
    base = mul(base, base, p);
    exp >>= 1U;
  }
  return result;
}

u64 inverse(u64 a, u64 p) {
  // extended Euclid on signed 128-bit to avoid overflow of the cofactors
  __int128 t = 0, new_t = 1;
  __int128 r = p, new_r = a % p;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<u64>(t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> kSmall = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kSmall) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : kSmall) {
    u64 x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 reduce(const Integer& value, u64 p) {
  Integer r = value % Integer(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

std::optional<u64> reduce(const Rational& value, u64 p) {
  u64 den = reduce(value.get_den(), p);
  if (den == 0) return std::nullopt;
  return mul(reduce(value.get_num(), p), inverse(den, p), p);
}

std::optional<Rational> reconstruct(const Integer& residue, const Integer& modulus) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(modulus / 2).get_mpz_t());
  Integer r0 = modulus, r1 = residue % modulus;
  if (r1 < 0) r1 += modulus;
  Integer t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

u64 random_prime(std::mt19937_64& rng, unsigned bits) {
  const u64 lo = u64{1} << (bits - 1);
  const u64 span = lo;
  while (true) {
    u64 candidate = lo + (rng() % span);
    candidate |= 1U;
    if (is_prime(candidate)) return candidate;
  }
}

u64 PrimeStream::next() { return random_prime(rng_, 62); }

}  // namespace picard::modular
