#pragma once

// Brute-force reference computations for the test suites. Nothing here uses
// the library's linear engine, monomial order or polynomial arithmetic; the
// library is only used to parse fixtures.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "picard/surface.hpp"
#include "picard/plane_lemma.hpp"

namespace oracle {

using Q = mpq_class;
using Exp = std::array<int, 4>;
using Poly = std::map<Exp, Q>;
using Vec = std::vector<Q>;

/// Arithmetic in Q (p = 0) or F_p.
struct Ring {
  std::uint64_t p = 0;
  Q norm(const Q& v) const;
};

Ring ring_of(const picard::Field& field);

Poly from(const picard::Polynomial& p);
Poly add(const Poly& a, const Poly& b, const Ring& r);
Poly scale(const Poly& a, const Q& s, const Ring& r);
Poly mul(const Poly& a, const Poly& b, const Ring& r);
Poly diff(const Poly& a, int var, const Ring& r);
Q eval(const Poly& a, const std::vector<Q>& point, const Ring& r);
int degree(const Poly& a);  // -1 for zero
bool is_zero(const Poly& a);
bool equal(const Poly& a, const Poly& b, const Ring& r);

/// Exponent vectors in `nvars` variables with total degree in [lo, hi].
std::vector<Exp> monomials(int nvars, int lo, int hi);

struct Kernel {
  std::vector<Vec> vectors;
  std::size_t rank = 0;
};

/// Fraction (or F_p) Gauss-Jordan elimination on a dense matrix.
Kernel nullspace(std::vector<Vec> rows, std::size_t ncols, const Ring& r);
std::size_t rank(std::vector<Vec> rows, std::size_t ncols, const Ring& r);

/// Affine polynomials of degree <= m whose degree-m homogenization vanishes at
/// the explicit samples and on every parametrized component.
Kernel adjoint(const picard::SurfaceModel& s, int m);

struct Solution {
  Poly A, B, C, N;
};

/// All (A, B, C, N) with A, B, C adjoint of degree <= d - 2, deg N <= d - 3 and
/// A f_x + B f_y + C f_z = N f, as a basis.
std::vector<Solution> picard_basis(const picard::SurfaceModel& s);

/// Q = A_x + B_y + C_z - N.
Poly defect(const Solution& sol, const Ring& r);

struct Fiber {
  bool exists = false;
  std::size_t dim = 0;
  std::optional<Solution> particular;
};

/// Completions (B, C, N) of a fixed A.
Fiber fiber(const picard::SurfaceModel& s, const Poly& A);

/// Dimension of the (Y_1..Y_4, Q) solution space and of the adjoint forms of
/// degree d - 4.
std::pair<std::size_t, std::size_t> gral_dims(const picard::SurfaceModel& s);

std::size_t syzygy_dim(const picard::Polynomial& g, int l);

/// dim of polynomials of degree <= bound over F_p modulo the span of the
/// generator multiples of degree <= bound.
std::size_t quotient_dim_mod_p(const std::vector<picard::Polynomial>& gens, int bound, std::uint64_t p);

struct PointCount {
  std::size_t points = 0;
  /// Points where the Jacobian determinant of the generators is nonzero.
  std::size_t simple = 0;
};

/// Exhaustive search over F_p^3 for the common zeros of three polynomials.
PointCount count_points_mod_p(const std::vector<picard::Polynomial>& gens, std::uint64_t p);

}  // namespace oracle
