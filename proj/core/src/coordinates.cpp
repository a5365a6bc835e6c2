#include "picard/coordinates.hpp"

#include <random>

#include "picard/errors.hpp"

namespace picard {

Matrix4 identity_matrix() {
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m[i][j] = (i == j) ? 1 : 0;
  }
  return m;
}

std::optional<Matrix4> invert(const Matrix4& m, const Field& field) {
  std::array<std::array<Rational, 8>, 4> aug;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      aug[i][j] = field.normalize(m[i][j]);
      aug[i][j + 4] = (i == j) ? 1 : 0;
    }
  }
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    while (pivot < 4 && aug[pivot][col] == 0) ++pivot;
    if (pivot == 4) return std::nullopt;
    std::swap(aug[pivot], aug[col]);
    const Rational inv = field.inverse(aug[col][col]);
    for (auto& v : aug[col]) v = field.normalize(v * inv);
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      const Rational factor = aug[r][col];
      for (std::size_t j = 0; j < 8; ++j) aug[r][j] = field.normalize(aug[r][j] - factor * aug[col][j]);
    }
  }
  Matrix4 out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = aug[i][j + 4];
  }
  return out;
}

CoordinateChange CoordinateChange::sample(std::uint64_t seed, const Field& field) {
  if (seed == 0) return CoordinateChange{identity_matrix(), identity_matrix(), 0};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  while (true) {
    Matrix4 m;
    for (auto& row : m) {
      for (auto& v : row) v = field.normalize(Rational(entry(rng)));
    }
    if (auto inv = invert(m, field)) return CoordinateChange{m, *inv, seed};
  }
}

Polynomial substitute_linear(const Polynomial& form, const Matrix4& m) {
  if (form.nvars() != 4) {
    throw Error(ErrorCode::IndexOutOfRange, "linear coordinate changes act on four variables");
  }
  const Field& field = form.field();
  std::vector<Polynomial> images;
  images.reserve(4);
  for (std::size_t i = 0; i < 4; ++i) {
    Polynomial row(field, 4);
    for (std::size_t j = 0; j < 4; ++j) {
      row += Polynomial::variable(field, 4, static_cast<int>(j)) * m[i][j];
    }
    images.push_back(std::move(row));
  }
  return substitute(form, images);
}

Polynomial CoordinateChange::apply(const Polynomial& form) const { return substitute_linear(form, forward); }

Polynomial CoordinateChange::undo(const Polynomial& form) const { return substitute_linear(form, inverse); }

std::vector<Rational> CoordinateChange::map_point(std::span<const Rational> point, const Field& field) const {
  if (point.size() != 4) throw Error(ErrorCode::IndexOutOfRange, "points have four coordinates");
  std::vector<Rational> out(4);
  for (std::size_t i = 0; i < 4; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < 4; ++j) acc += inverse[i][j] * point[j];
    out[i] = field.normalize(acc);
  }
  return out;
}

std::pair<Polynomial, Matrix4> random_coordinate_change(const Polynomial& form, std::uint64_t seed) {
  auto change = CoordinateChange::sample(seed, form.field());
  return {change.apply(form), change.forward};
}

}  // namespace picard
