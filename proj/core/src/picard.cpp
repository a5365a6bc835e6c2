#include "picard/picard.hpp"

#include <algorithm>

#include "picard/errors.hpp"

namespace picard {

namespace {

Polynomial var(const Field& field, int nvars, int i) { return Polynomial::variable(field, nvars, i); }

void require_solution(const SurfaceModel& s, const PicardSolution& sol) {
  for (const Polynomial* p : {&sol.A, &sol.B, &sol.C, &sol.N}) {
    if (!(p->field() == s.field) || p->nvars() != 3) {
      throw Error(ErrorCode::NotASolution, "solution components must be affine polynomials over " +
                                               s.field.to_string());
    }
  }
  const Polynomial r = picard_residual(s, sol);
  if (!r.is_zero()) throw Error(ErrorCode::NotASolution, "Picard residual is " + to_string(r));
}

void require_invertible_degree(const SurfaceModel& s, const char* what) {
  if (s.field.vanishes(s.d)) {
    throw Error(ErrorCode::ContractViolation, std::string(what) + " divides by d = " + std::to_string(s.d) +
                                                  ", which vanishes in " + s.field.to_string());
  }
}

Polynomial affine(const SurfaceModel& s) { return Polynomial(s.field, 3); }

struct Assembled {
  LinearIdentity identity;
  NullspaceBasis kernel;
};

Assembled solve_identity(LinearIdentity identity, const SolverOptions& options) {
  CoeffMatrix m = coefficient_matrix(identity);
  if (options.on_matrix) options.on_matrix(m);
  NullspaceBasis kernel = nullspace_basis(m, options.engine);
  return Assembled{std::move(identity), std::move(kernel)};
}

}  // namespace

PicardSolution PicardSolution::zero(const Field& field) {
  return PicardSolution{Polynomial(field, 3), Polynomial(field, 3), Polynomial(field, 3), Polynomial(field, 3)};
}

bool PicardSolution::is_zero() const { return A.is_zero() && B.is_zero() && C.is_zero() && N.is_zero(); }

Polynomial picard_residual(const SurfaceModel& s, const PicardSolution& sol) {
  return sol.A * s.affine_partial(1) + sol.B * s.affine_partial(2) + sol.C * s.affine_partial(3) - sol.N * s.f;
}

PicardSolutionSpace solve_picard(const SurfaceModel& s, const SolverOptions& options) {
  if (s.f.is_zero()) throw Error(ErrorCode::ContractViolation, "affine chart of " + s.id + " is zero");
  PicardSolutionSpace out;
  out.adjoint = adjoint_space(s, s.d - 2, options);

  LinearIdentity id;
  id.field = s.field;
  id.nvars = 3;
  id.provenance = "Picard relation for " + s.id;
  const char* names[] = {"A", "B", "C"};
  for (int axis = 1; axis <= 3; ++axis) {
    id.add_term(id.add_block(names[axis - 1], out.adjoint.basis), s.affine_partial(axis));
  }
  id.add_term(id.add_block("N", monomial_basis(s.field, 3, s.d - 3)), -s.f);

  const Assembled solved = solve_identity(std::move(id), options);
  out.route = solved.kernel.route;
  for (const auto& v : solved.kernel.vectors) {
    const auto parts = decode(solved.identity, v);
    PicardSolution sol{parts[0], parts[1], parts[2], parts[3]};
    const Polynomial r = picard_residual(s, sol);
    if (!r.is_zero()) throw InvariantViolation("Picard basis element solves the relation", to_string(r));
    out.basis.push_back(std::move(sol));
  }
  return out;
}

std::size_t form_map_kernel_dim(const SurfaceModel& s, const SolverOptions& options) {
  const AdjointSpace adjoint = adjoint_space(s, s.d - 2, options);
  LinearIdentity id;
  id.field = s.field;
  id.nvars = 3;
  id.provenance = "Picard relation with A = B = 0 for " + s.id;
  id.add_term(id.add_block("C", adjoint.basis), s.affine_partial(3));
  id.add_term(id.add_block("N", monomial_basis(s.field, 3, s.d - 3)), -s.f);
  return solve_identity(std::move(id), options).kernel.dim();
}

PicardSolution complete_triple(const SurfaceModel& s, const Polynomial& A, const SolverOptions& options) {
  const AdjointSpace adjoint = adjoint_space(s, s.d - 2, options);
  if (!(A.field() == s.field) || A.nvars() != 3 || !adjoint.contains(A)) {
    throw Error(ErrorCode::ContractViolation,
                to_string(A) + " is not an adjoint of degree " + std::to_string(s.d - 2));
  }
  LinearIdentity id;
  id.field = s.field;
  id.nvars = 3;
  id.provenance = "completion of A = " + to_string(A) + " on " + s.id;
  id.add_term(id.add_block("lambda", {Polynomial::constant(s.field, 3, 1)}), A * s.affine_partial(1));
  id.add_term(id.add_block("B", adjoint.basis), s.affine_partial(2));
  id.add_term(id.add_block("C", adjoint.basis), s.affine_partial(3));
  id.add_term(id.add_block("N", monomial_basis(s.field, 3, s.d - 3)), -s.f);

  const Assembled solved = solve_identity(std::move(id), options);
  const auto& vectors = solved.kernel.vectors;
  const auto hit = std::find_if(vectors.begin(), vectors.end(), [](const auto& v) { return v[0] != 0; });
  if (hit == vectors.end()) throw Error(ErrorCode::NoCompletion, to_string(A) + " admits no completion on " + s.id);
  // the lambda coordinate has rank one on the kernel, so the fiber over
  // lambda = 1 has dimension dim - 1
  if (vectors.size() > 1) {
    throw Error(ErrorCode::NonUniqueCompletion, "completions of " + to_string(A) + " on " + s.id + " form a " +
                                                    std::to_string(vectors.size() - 1) + "-dimensional family");
  }
  std::vector<Rational> v = *hit;
  const Rational scale = s.field.inverse(v[0]);
  for (auto& c : v) c = s.field.normalize(c * scale);
  const auto parts = decode(solved.identity, v);
  PicardSolution sol{A, parts[1], parts[2], parts[3]};
  const Polynomial r = picard_residual(s, sol);
  if (!r.is_zero()) throw InvariantViolation("completion solves the relation", to_string(r));
  return sol;
}

Polynomial divergence_defect(const PicardSolution& sol) {
  return differentiate(sol.A, 0) + differentiate(sol.B, 1) + differentiate(sol.C, 2) - sol.N;
}

Polynomial integrability_defect(const SurfaceModel& s, const PicardSolution& sol) {
  require_solution(s, sol);
  Polynomial Q = divergence_defect(sol);
  if (Q.degree() > s.d - 4) {
    throw Error(ErrorCode::AssertionFailure, "defect " + to_string(Q) + " on " + s.id + " exceeds degree " +
                                                 std::to_string(s.d - 4));
  }
  if (s.ordinary && !s.field.is_prime() && !Q.is_zero()) {
    throw Error(ErrorCode::AssertionFailure,
                "nonzero defect " + to_string(Q) + " on ordinary surface " + s.id + " in characteristic 0");
  }
  return Q;
}

bool chart_identity_check(const SurfaceModel& s, const PicardSolution& sol) {
  require_solution(s, sol);
  const Polynomial fx = s.affine_partial(1);
  const Polynomial fy = s.affine_partial(2);
  const Polynomial fz = s.affine_partial(3);
  const Polynomial fzx = differentiate(fz, 0);
  const Polynomial fzy = differentiate(fz, 1);
  const Polynomial fzz = differentiate(fz, 2);
  const Polynomial& A = sol.A;
  const Polynomial& B = sol.B;

  const Polynomial lhs = fz * fz * (differentiate(A, 0) + differentiate(B, 1)) -
                         fz * (A * fzx + differentiate(A, 2) * fx + B * fzy + differentiate(B, 2) * fy) +
                         fzz * (A * fx + B * fy);
  const Polynomial rhs = fz * fz * divergence_defect(sol) + s.f * (sol.N * fzz - fz * differentiate(sol.N, 2));
  return lhs == rhs;
}

HomogeneousSolution homogenize_solution(const SurfaceModel& s, const PicardSolution& sol,
                                        const SolverOptions& options) {
  require_solution(s, sol);
  const Field& k = s.field;
  const int target = s.d - 3;
  const auto lift = [&](const Polynomial& p, const char* name) {
    if (p.degree() > target) {
      throw Error(ErrorCode::DegreeOverflow, std::string(name) + " = " + to_string(p) + " has degree above " +
                                                 std::to_string(target) + " on " + s.id);
    }
    return homogenize(p, target);
  };

  HomogeneousSolution h;
  const Rational d(s.d);
  const Polynomial x = var(k, 3, 0), y = var(k, 3, 1), z = var(k, 3, 2);
  h.X[0] = lift(sol.A * d - x * sol.N, "X_1");
  h.X[1] = lift(sol.B * d - y * sol.N, "X_2");
  h.X[2] = lift(sol.C * d - z * sol.N, "X_3");
  h.X[3] = -lift(sol.N, "X_4");

  Polynomial relation(k, 4);
  for (int i = 0; i < 4; ++i) relation += h.X[i] * s.form_partial(i + 1);
  h.relation_ok = relation.is_zero();
  if (!h.relation_ok) {
    throw Error(ErrorCode::AssertionFailure, "homogeneous relation leaves " + to_string(relation) + " on " + s.id);
  }

  const AdjointSpace adjoint = adjoint_space(s, s.d - 2, options);
  h.minors_adjoint = true;
  std::size_t slot = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      h.minors[slot] = h.X[i] * var(k, 4, j) - h.X[j] * var(k, 4, i);
      if (!adjoint.contains(dehomogenize(h.minors[slot]))) h.minors_adjoint = false;
      ++slot;
    }
  }
  if (!h.minors_adjoint) {
    if (adjoint.certified) {
      throw Error(ErrorCode::AssertionFailure, "a minor of the homogeneous solution is not adjoint on " + s.id);
    }
    h.warnings.push_back("a minor fails the sampled adjoint space, which is not certified");
  }

  h.divergence = Polynomial(k, 4);
  for (int i = 0; i < 4; ++i) h.divergence += differentiate(h.X[i], i);
  h.divergence_zero = h.divergence.is_zero();
  h.defect_zero = divergence_defect(sol).is_zero();
  if (k.vanishes(s.d)) {
    h.warnings.push_back("characteristic divides d; affine and homogeneous integrability not compared");
  } else {
    h.equivalence_checked = true;
    if (h.defect_zero != h.divergence_zero) {
      throw Error(ErrorCode::AssertionFailure, "affine defect and homogeneous divergence disagree on " + s.id);
    }
  }
  return h;
}

GralResult gral_solve(const SurfaceModel& s, const SolverOptions& options) {
  require_invertible_degree(s, "the trivial family");
  GralResult out;
  if (s.d < 3) return out;
  const Field& k = s.field;

  const AdjointSpace adjoint = adjoint_space(s, s.d - 3, options);
  std::vector<Polynomial> forms;
  for (const auto& b : adjoint.basis) forms.push_back(homogenize(b, s.d - 3));

  LinearIdentity id;
  id.field = k;
  id.nvars = 4;
  id.provenance = "homogeneous identity Y.F = Q F for " + s.id;
  const char* names[] = {"Y1", "Y2", "Y3", "Y4"};
  for (int i = 0; i < 4; ++i) id.add_term(id.add_block(names[i], forms), s.form_partial(i + 1));
  id.add_term(id.add_block("Q", form_basis(k, 4, s.d - 4)), -s.F);

  const Assembled solved = solve_identity(std::move(id), options);
  out.space_dim = solved.kernel.dim();
  for (const auto& v : solved.kernel.vectors) {
    const Polynomial r = identity_residual(solved.identity, v);
    if (!r.is_zero()) throw InvariantViolation("homogeneous identity basis element", to_string(r));
    const auto parts = decode(solved.identity, v);
    out.basis.push_back({parts[0], parts[1], parts[2], parts[3], parts[4]});
  }

  if (s.d >= 4) {
    const AdjointSpace canonical = adjoint_space(s, s.d - 4, options);
    out.trivial_dim = canonical.dim();
    const Rational inv_d = k.inverse(Rational(s.d));
    for (const auto& q : canonical.basis) {
      const Polynomial Q = homogenize(q, s.d - 4);
      Polynomial r = -(Q * s.F);
      for (int i = 0; i < 4; ++i) {
        const Polynomial Y = var(k, 4, i) * Q * inv_d;
        r += Y * s.form_partial(i + 1);
        if (adjoint.certified && !adjoint.contains(dehomogenize(Y))) {
          throw InvariantViolation("trivial family lies in the adjoint forms", to_string(Y));
        }
      }
      if (!r.is_zero()) throw InvariantViolation("trivial family solves the identity", to_string(r));
    }
  }
  out.nontrivial = out.space_dim > out.trivial_dim;
  return out;
}

bool SeveriReport::ok() const {
  return top_ok && base_line_ok &&
         std::all_of(jacobian.begin(), jacobian.end(), [](const auto& j) { return j.vanishing == j.samples; });
}

SeveriReport severi_structure_check(const SurfaceModel& s, const PicardSolution& sol) {
  require_solution(s, sol);
  require_invertible_degree(s, "theta");
  const Field& k = s.field;
  SeveriReport report;
  report.vacuous = sol.is_zero();
  report.theta = s.d >= 3 ? sol.N.homogeneous_component(s.d - 3) * k.inverse(Rational(s.d)) : affine(s);

  const std::array<const Polynomial*, 3> parts = {&sol.A, &sol.B, &sol.C};
  report.top_ok = true;
  report.base_line_ok = true;
  for (int i = 0; i < 3; ++i) {
    const Polynomial top = s.d >= 2 ? parts[i]->homogeneous_component(s.d - 2) : affine(s);
    if (!(top == var(k, 3, i) * report.theta)) report.top_ok = false;
    std::vector<Polynomial> images = {var(k, 3, 0), var(k, 3, 1), var(k, 3, 2)};
    images[i] = affine(s);
    if (!substitute(top, images).is_zero()) report.base_line_ok = false;

    JacobianSampleCheck check;
    check.axis = i + 1;
    for (const auto& p : s.jacobian_samples[i]) {
      ++check.samples;
      if (evaluate(*parts[i], p) == 0) ++check.vanishing;
    }
    report.jacobian.push_back(check);
  }
  return report;
}

StabilityCheck field_change_stability(const SurfaceModel& s, std::uint64_t seed, const SolverOptions& options,
                                      std::size_t max_attempts) {
  StabilityCheck out;
  out.dim_rationals = solve_picard(s, options).dim();
  if (s.field.is_prime()) {
    out.dim_prime = out.dim_rationals;
    out.prime = s.field.characteristic();
    out.agree = true;
    return out;
  }
  modular::PrimeStream primes(seed);
  while (out.attempts < max_attempts) {
    ++out.attempts;
    const auto p = primes.next();
    std::optional<SurfaceModel> reduced;
    try {
      reduced = reduce_surface(s, Field::prime(p));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DivisionByCharacteristic) throw;
      continue;
    }
    out.prime = p;
    out.dim_prime = solve_picard(*reduced, options).dim();
    if (out.dim_prime == out.dim_rationals) {
      out.agree = true;
      break;
    }
  }
  return out;
}

}  // namespace picard
