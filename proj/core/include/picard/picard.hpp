#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picard/adjoint.hpp"
#include "picard/surface.hpp"

namespace picard {

/// A f_x + B f_y + C f_z = N f with deg A, B, C <= d - 2 and deg N <= d - 3.
struct PicardSolution {
  Polynomial A{Field::rationals(), 3};
  Polynomial B{Field::rationals(), 3};
  Polynomial C{Field::rationals(), 3};
  Polynomial N{Field::rationals(), 3};

  static PicardSolution zero(const Field& field);
  bool is_zero() const;
  friend bool operator==(const PicardSolution&, const PicardSolution&) = default;
};

struct PicardSolutionSpace {
  std::vector<PicardSolution> basis;
  AdjointSpace adjoint;
  EliminationRoute route = EliminationRoute::fractions;

  std::size_t dim() const { return basis.size(); }
};

/// A f_x + B f_y + C f_z - N f.
Polynomial picard_residual(const SurfaceModel& s, const PicardSolution& sol);

/// Exact basis of the solution space. Every basis element is re-verified by
/// polynomial arithmetic.
PicardSolutionSpace solve_picard(const SurfaceModel& s, const SolverOptions& options = {});

/// Dimension of the solutions with A = B = 0; zero on every surface.
std::size_t form_map_kernel_dim(const SurfaceModel& s, const SolverOptions& options = {});

/// The unique (B, C, N) completing A. Throws ContractViolation when A is
/// not adjoint of degree d - 2, NoCompletion and NonUniqueCompletion.
PicardSolution complete_triple(const SurfaceModel& s, const Polynomial& A, const SolverOptions& options = {});

/// A_x + B_y + C_z - N with no checks.
Polynomial divergence_defect(const PicardSolution& sol);

/// The defect Q of a verified solution. Throws NotASolution, and
/// AssertionFailure when deg Q > d - 4 or when Q != 0 on an ordinary surface
/// in characteristic 0.
Polynomial integrability_defect(const SurfaceModel& s, const PicardSolution& sol);

/// Compares the numerator of the derivative of the 1-form in the chart with
/// f_z^2 Q + f (N f_zz - f_z N_z). Throws NotASolution.
bool chart_identity_check(const SurfaceModel& s, const PicardSolution& sol);

struct HomogeneousSolution {
  std::array<Polynomial, 4> X{Polynomial{Field::rationals(), 4}, Polynomial{Field::rationals(), 4},
                              Polynomial{Field::rationals(), 4}, Polynomial{Field::rationals(), 4}};
  /// X_i x_j - X_j x_i for (i, j) = (1,2), (1,3), (1,4), (2,3), (2,4), (3,4).
  std::array<Polynomial, 6> minors{Polynomial{Field::rationals(), 4}, Polynomial{Field::rationals(), 4},
                                   Polynomial{Field::rationals(), 4}, Polynomial{Field::rationals(), 4},
                                   Polynomial{Field::rationals(), 4}, Polynomial{Field::rationals(), 4}};
  Polynomial divergence{Field::rationals(), 4};
  bool relation_ok = false;
  bool minors_adjoint = false;
  bool divergence_zero = false;
  bool defect_zero = false;
  /// Whether the affine/homogeneous equivalence was asserted.
  bool equivalence_checked = false;
  std::vector<std::string> warnings;
};

/// X_1 = (d A - x N)^h, X_2, X_3 likewise, X_4 = -N^h, all of degree d - 3.
/// Throws NotASolution, DegreeOverflow, and AssertionFailure when the
/// relation, the minor condition or the equivalence breaks.
HomogeneousSolution homogenize_solution(const SurfaceModel& s, const PicardSolution& sol,
                                        const SolverOptions& options = {});

struct GralResult {
  std::size_t space_dim = 0;
  std::size_t trivial_dim = 0;
  bool nontrivial = false;
  /// (Y_1, Y_2, Y_3, Y_4, Q) per basis vector.
  std::vector<std::array<Polynomial, 5>> basis;
};

/// Y_1 F_1 + ... + Y_4 F_4 = Q F with Y_i adjoint forms of degree d - 3 and
/// Q a form of degree d - 4. Throws ContractViolation when p divides d.
GralResult gral_solve(const SurfaceModel& s, const SolverOptions& options = {});

struct JacobianSampleCheck {
  int axis = 1;
  std::size_t samples = 0;
  std::size_t vanishing = 0;
};

struct SeveriReport {
  Polynomial theta{Field::rationals(), 3};
  bool top_ok = false;
  bool base_line_ok = false;
  std::vector<JacobianSampleCheck> jacobian;
  bool vacuous = false;

  bool ok() const;
};

/// theta = N_{d-3} / d; checks A_top = x theta (and cyclically), that the
/// homogenized A contains the line x = w = 0, and that A, B, C vanish on the
/// supplied jacobian samples. Throws NotASolution, ContractViolation when p
/// divides d.
SeveriReport severi_structure_check(const SurfaceModel& s, const PicardSolution& sol);

struct StabilityCheck {
  std::size_t dim_rationals = 0;
  std::size_t dim_prime = 0;
  std::uint64_t prime = 0;
  std::size_t attempts = 0;
  bool agree = false;
};

/// Compares the solution dimension over the rationals with the dimension
/// modulo random large primes drawn from `seed`, retrying unlucky primes.
StabilityCheck field_change_stability(const SurfaceModel& s, std::uint64_t seed,
                                      const SolverOptions& options = {}, std::size_t max_attempts = 6);

}  // namespace picard
