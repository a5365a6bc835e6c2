#include <gtest/gtest.h>

#include "oracle.hpp"
#include "picard/errors.hpp"
#include "picard/picard.hpp"
#include "support.hpp"

using namespace picard;
using picard::testing::code_of;
using picard::testing::poly3;
using picard::testing::poly4;

namespace {

const std::vector<std::string> kSurfaces = {
    "fermat_quartic", "fermat_quartic_random", "smooth_quadric", "smooth_quadric_random",
    "smooth_cubic",   "smooth_cubic_random",   "steiner_roman",  "steiner_roman_random",
    "cone_cubic",     "cone_cubic_random",     "cone_quartic",   "cone_quartic_random"};

std::size_t defect_rank(const SurfaceModel& s, const PicardSolutionSpace& space) {
  // rank of the defects as vectors over the affine monomials
  const auto monos = oracle::monomials(3, 0, s.d);
  std::vector<oracle::Vec> rows;
  for (const auto& sol : space.basis) {
    const oracle::Poly q = oracle::from(divergence_defect(sol));
    oracle::Vec row;
    for (const auto& e : monos) row.push_back(q.count(e) ? q.at(e) : oracle::Q(0));
    rows.push_back(row);
  }
  return oracle::rank(rows, monos.size(), oracle::ring_of(s.field));
}

}  // namespace

TEST(Picard, DimensionsMatchTheOracle) {
  for (const auto& name : kSurfaces) {
    const SurfaceModel s = picard::testing::surface(name);
    EXPECT_EQ(solve_picard(s).dim(), oracle::picard_basis(s).size()) << name;
  }
}

TEST(Picard, FrozenDimensions) {
  EXPECT_EQ(solve_picard(picard::testing::surface("fermat_quartic")).dim(), 0u);
  EXPECT_EQ(solve_picard(picard::testing::surface("cone_cubic")).dim(), 1u);
  EXPECT_EQ(solve_picard(picard::testing::surface("cone_quartic")).dim(), 4u);
  EXPECT_EQ(solve_picard(picard::testing::surface("steiner_roman_random")).dim(), 0u);
}

TEST(Picard, ConeCubicBasis) {
  const PicardSolutionSpace space = solve_picard(picard::testing::surface("cone_cubic"));
  ASSERT_EQ(space.dim(), 1u);
  const PicardSolution& sol = space.basis[0];
  EXPECT_EQ(sol.A, poly3("1/3*x"));
  EXPECT_EQ(sol.B, poly3("1/3*y"));
  EXPECT_EQ(sol.C, poly3("1/3*z"));
  EXPECT_EQ(sol.N, poly3("1"));
  EXPECT_TRUE(divergence_defect(sol).is_zero());
}

TEST(Picard, EveryBasisElementSolvesTheRelation) {
  for (const auto& name : kSurfaces) {
    const SurfaceModel s = picard::testing::surface(name);
    for (const auto& sol : solve_picard(s).basis) {
      EXPECT_TRUE(picard_residual(s, sol).is_zero()) << name;
      EXPECT_TRUE(chart_identity_check(s, sol)) << name;
    }
  }
}

TEST(Picard, FormMapKernelIsZero) {
  for (const auto& name : kSurfaces) {
    EXPECT_EQ(form_map_kernel_dim(picard::testing::surface(name)), 0u) << name;
  }
}

TEST(Picard, OrdinarySurfacesHaveClosedSolutions) {
  for (const auto& name : kSurfaces) {
    const SurfaceModel s = picard::testing::surface(name);
    if (!s.ordinary) continue;
    for (const auto& sol : solve_picard(s).basis) EXPECT_TRUE(integrability_defect(s, sol).is_zero());
  }
}

TEST(Picard, ConeQuarticDefects) {
  for (const char* name : {"cone_quartic", "cone_quartic_random"}) {
    const SurfaceModel s = picard::testing::surface(name);
    const PicardSolutionSpace space = solve_picard(s);
    ASSERT_EQ(space.dim(), 4u);
    EXPECT_EQ(defect_rank(s, space), 1u) << name;
    for (const auto& sol : space.basis) {
      const Polynomial q = integrability_defect(s, sol);
      EXPECT_TRUE(q.degree() <= 0);
      EXPECT_TRUE(oracle::equal(oracle::from(q), oracle::defect({oracle::from(sol.A), oracle::from(sol.B),
                                                                 oracle::from(sol.C), oracle::from(sol.N)},
                                                                oracle::Ring{}),
                                oracle::Ring{}));
    }
  }
  const PicardSolutionSpace space = solve_picard(picard::testing::surface("cone_quartic"));
  EXPECT_EQ(divergence_defect(space.basis[3]), poly3("-1/4"));
}

TEST(Picard, DegreeBoundOnDefect) {
  for (const auto& name : kSurfaces) {
    const SurfaceModel s = picard::testing::surface(name);
    for (const Field& f : {Field::rationals(), Field::prime(5), Field::prime(7), Field::prime(11)}) {
      if (!good_reduction(s, f)) continue;
      const SurfaceModel t = f.is_prime() ? reduce_surface(s, f) : s;
      for (const auto& sol : solve_picard(t).basis) {
        EXPECT_TRUE(divergence_defect(sol).degree() <= t.d - 4) << name << " " << f.to_string();
      }
    }
  }
}

TEST(Picard, NotASolutionIsRejected) {
  const SurfaceModel s = picard::testing::surface("cone_cubic");
  PicardSolution bad = PicardSolution::zero(s.field);
  bad.A = poly3("x");
  EXPECT_EQ(code_of([&] { integrability_defect(s, bad); }), ErrorCode::NotASolution);
  EXPECT_EQ(code_of([&] { homogenize_solution(s, bad); }), ErrorCode::NotASolution);
}

TEST(Completion, ConeCubic) {
  const SurfaceModel s = picard::testing::surface("cone_cubic");
  const PicardSolution sol = complete_triple(s, poly3("x"));
  EXPECT_EQ(sol.B, poly3("y"));
  EXPECT_EQ(sol.C, poly3("z"));
  EXPECT_EQ(sol.N, poly3("3"));
}

TEST(Completion, FermatHasNone) {
  const SurfaceModel s = picard::testing::surface("fermat_quartic");
  for (const auto& A : adjoint_space(s, 2).basis) {
    EXPECT_FALSE(oracle::fiber(s, oracle::from(A)).exists);
    EXPECT_EQ(code_of([&] { complete_triple(s, A); }), ErrorCode::NoCompletion) << to_string(A);
  }
  EXPECT_EQ(code_of([&] { complete_triple(s, poly3("x^2+y*z-3")); }), ErrorCode::NoCompletion);
}

TEST(Completion, Contracts) {
  const SurfaceModel steiner = picard::testing::surface("steiner_roman");
  EXPECT_EQ(code_of([&] { complete_triple(steiner, poly3("x^2")); }), ErrorCode::ContractViolation);
  EXPECT_EQ(code_of([&] { complete_triple(steiner, poly3("x^3")); }), ErrorCode::ContractViolation);
}

TEST(Completion, AgreesWithTheOracleFiber) {
  const SurfaceModel s = picard::testing::surface("cone_quartic");
  for (const auto& sol : solve_picard(s).basis) {
    if (sol.A.is_zero()) continue;
    const oracle::Fiber f = oracle::fiber(s, oracle::from(sol.A));
    ASSERT_TRUE(f.exists);
    if (f.dim == 0) {
      EXPECT_EQ(complete_triple(s, sol.A), sol);
    } else {
      EXPECT_EQ(code_of([&] { complete_triple(s, sol.A); }), ErrorCode::NonUniqueCompletion);
    }
  }
}

TEST(Homogeneous, RelationMinorsAndDivergence) {
  for (const auto& name : kSurfaces) {
    const SurfaceModel s = picard::testing::surface(name);
    for (const auto& sol : solve_picard(s).basis) {
      const HomogeneousSolution h = homogenize_solution(s, sol);
      EXPECT_TRUE(h.relation_ok) << name;
      EXPECT_TRUE(h.minors_adjoint) << name;
      Polynomial sum(s.field, 4);
      for (int i = 0; i < 4; ++i) sum = sum + h.X[i] * s.form_partial(i + 1);
      EXPECT_TRUE(sum.is_zero()) << name;
      if (!s.is_cone()) {
        EXPECT_TRUE(h.equivalence_checked);
        EXPECT_EQ(h.defect_zero, h.divergence_zero) << name;
      }
    }
  }
}

TEST(Homogeneous, ConeQuarticDivergence) {
  const SurfaceModel s = picard::testing::surface("cone_quartic");
  const auto space = solve_picard(s);
  const HomogeneousSolution h = homogenize_solution(s, space.basis[3]);
  EXPECT_EQ(h.X[3], poly4("-w"));
  EXPECT_EQ(h.divergence, poly4("-1"));
  EXPECT_FALSE(h.defect_zero);
  EXPECT_FALSE(h.divergence_zero);
}

TEST(Gral, FrozenResults) {
  struct Row {
    const char* name;
    std::size_t space, trivial;
    bool nontrivial;
  };
  for (const Row& r : {Row{"fermat_quartic", 1, 1, false}, Row{"smooth_quadric", 0, 0, false},
                       Row{"smooth_cubic", 0, 0, false}, Row{"steiner_roman", 0, 0, false},
                       Row{"cone_cubic", 1, 0, true}, Row{"cone_quartic", 5, 1, true}}) {
    const SurfaceModel s = picard::testing::surface(r.name);
    const GralResult g = gral_solve(s);
    EXPECT_EQ(g.space_dim, r.space) << r.name;
    EXPECT_EQ(g.trivial_dim, r.trivial) << r.name;
    EXPECT_EQ(g.nontrivial, r.nontrivial) << r.name;
    EXPECT_EQ(oracle::gral_dims(s), std::make_pair(r.space, r.trivial)) << r.name;
  }
  const GralResult cone = gral_solve(picard::testing::surface("cone_cubic"));
  ASSERT_EQ(cone.basis.size(), 1u);
  EXPECT_TRUE(cone.basis[0][0].is_zero());
  EXPECT_TRUE(cone.basis[0][1].is_zero());
  EXPECT_TRUE(cone.basis[0][2].is_zero());
  EXPECT_EQ(cone.basis[0][3], poly4("1"));
}

TEST(Gral, CharacteristicDividingDegree) {
  const SurfaceModel s = reduce_surface(picard::testing::surface("cone_cubic"), Field::prime(3));
  EXPECT_EQ(code_of([&] { gral_solve(s); }), ErrorCode::ContractViolation);
}

TEST(Severi, ConeStructure) {
  for (const char* name : {"cone_cubic", "cone_quartic"}) {
    const SurfaceModel s = picard::testing::surface(name);
    for (const auto& sol : solve_picard(s).basis) {
      const SeveriReport r = severi_structure_check(s, sol);
      EXPECT_TRUE(r.ok()) << name;
    }
  }
  const SurfaceModel s = picard::testing::surface("cone_cubic");
  const SeveriReport r = severi_structure_check(s, solve_picard(s).basis[0]);
  EXPECT_EQ(r.theta, poly3("1/3"));
  ASSERT_EQ(r.jacobian.size(), 3u);
  EXPECT_EQ(r.jacobian[0].samples, 1u);
  EXPECT_EQ(r.jacobian[0].vanishing, 1u);
}

TEST(Stability, RationalAndModularDimensionsAgree) {
  for (const char* name : {"fermat_quartic", "cone_cubic", "cone_quartic", "steiner_roman_random"}) {
    const StabilityCheck c = field_change_stability(picard::testing::surface(name), 42);
    EXPECT_TRUE(c.agree) << name;
    EXPECT_EQ(c.dim_rationals, c.dim_prime);
    EXPECT_GE(c.attempts, 1u);
  }
}

TEST(Picard, DegreeBoundFailsWhenTheCharacteristicDividesTheDegree) {
  // F = (x+y+z+w)^4 over F_2: every partial vanishes
  const SurfaceModel s = reduce_surface(picard::testing::surface("fermat_quartic"), Field::prime(2));
  bool exceeded = false;
  for (const auto& sol : solve_picard(s).basis) exceeded |= divergence_defect(sol).degree() > s.d - 4;
  EXPECT_TRUE(exceeded);
}
