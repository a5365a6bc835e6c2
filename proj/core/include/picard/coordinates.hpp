#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "picard/polynomial.hpp"

namespace picard {

using Matrix4 = std::array<std::array<Rational, 4>, 4>;

Matrix4 identity_matrix();

/// Gauss-Jordan inverse over `field`; nullopt when singular.
std::optional<Matrix4> invert(const Matrix4& m, const Field& field);

/// An invertible linear substitution x -> M x of the homogeneous coordinates,
/// together with its inverse. Forms transform as F'(x) = F(M x) and points
/// as s' = M^-1 s, so s lies on F = 0 iff s' lies on F' = 0.
struct CoordinateChange {
  Matrix4 forward;
  Matrix4 inverse;
  std::uint64_t seed = 0;

  /// Seed 0 is the identity; any other seed draws small integer entries and
  /// resamples until the matrix is invertible over `field`.
  static CoordinateChange sample(std::uint64_t seed, const Field& field);

  Polynomial apply(const Polynomial& form) const;
  Polynomial undo(const Polynomial& form) const;
  std::vector<Rational> map_point(std::span<const Rational> point, const Field& field) const;
};

/// F(M x) for a polynomial in four variables.
Polynomial substitute_linear(const Polynomial& form, const Matrix4& m);

/// The seeded change of coordinates applied to `form`, plus its matrix.
std::pair<Polynomial, Matrix4> random_coordinate_change(const Polynomial& form, std::uint64_t seed);

}  // namespace picard
