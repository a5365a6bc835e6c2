#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include <gmpxx.h>

namespace picard {

using Integer = mpz_class;
using Rational = mpq_class;

namespace modular {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Primes used by the library stay below 2^62 so that sums of two residues
/// never overflow and products fit in 128 bits.
inline constexpr u64 kMaxPrime = (u64{1} << 62);

inline u64 add(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}

inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 mul(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<u128>(a) * b) % p);
}

u64 pow(u64 base, u64 exp, u64 p);

/// Inverse of a nonzero residue. Precondition: gcd(a, p) = 1.
u64 inverse(u64 a, u64 p);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

/// Residue of an exact rational, or nullopt when p divides the denominator.
std::optional<u64> reduce(const Rational& value, u64 p);

u64 reduce(const Integer& value, u64 p);

/// Rational reconstruction: the unique n/d with |n|, d <= sqrt(m/2) and
/// n = a d (mod m), if one exists.
std::optional<Rational> reconstruct(const Integer& residue, const Integer& modulus);

/// Seeded stream of distinct random primes in [2^61, 2^62).
class PrimeStream {
 public:
  explicit PrimeStream(std::uint64_t seed) : rng_(seed) {}
  u64 next();

 private:
  std::mt19937_64 rng_;
};

/// A random prime with the requested number of bits, drawn from `rng`.
u64 random_prime(std::mt19937_64& rng, unsigned bits);

}  // namespace modular
}  // namespace picard
