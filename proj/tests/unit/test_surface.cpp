#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "oracle.hpp"
#include "picard/errors.hpp"
#include "picard/surface.hpp"
#include "support.hpp"

using namespace picard;
using picard::testing::code_of;
using picard::testing::poly3;
using picard::testing::poly4;

TEST(Surface, FermatChart) {
  const SurfaceModel s = picard::testing::surface("fermat_quartic");
  EXPECT_EQ(s.d, 4);
  EXPECT_EQ(s.f, poly3("x^4+y^4+z^4+1"));
  EXPECT_EQ(s.form_partial(4), poly4("4*w^3"));
  EXPECT_EQ(s.affine_partial(2), poly3("4*y^3"));
  EXPECT_TRUE(s.ordinary);
  EXPECT_FALSE(s.is_cone());
  EXPECT_TRUE(s.double_curve.empty());
  EXPECT_EQ(*s.expected.delta, 36);
}

TEST(Surface, ConesHaveNoW) {
  EXPECT_TRUE(picard::testing::surface("cone_cubic").is_cone());
  EXPECT_TRUE(picard::testing::surface("cone_quartic").is_cone());
  EXPECT_FALSE(picard::testing::surface("cone_quartic_random").is_cone());
}

TEST(Surface, RandomVariantsAreMovedConsistently) {
  for (const char* name : {"fermat_quartic", "steiner_roman", "cone_quartic"}) {
    const SurfaceModel a = picard::testing::surface(name);
    const SurfaceModel b = picard::testing::surface(std::string(name) + "_random");
    EXPECT_EQ(a.d, b.d);
    EXPECT_FALSE(a.F == b.F) << name;
    EXPECT_TRUE(b.generic_coordinates);
    EXPECT_NO_THROW(validate_surface(b));
  }
}

TEST(Surface, SteinerDoubleCurve) {
  const SurfaceModel s = picard::testing::surface("steiner_roman");
  EXPECT_EQ(s.double_curve.generators.size(), 3u);
  EXPECT_EQ(s.double_curve.components.size(), 3u);
  EXPECT_EQ(s.double_curve.samples.size(), 6u);
  EXPECT_EQ(*s.triple_points, 1);
}

TEST(Surface, SampleOffTheSingularLocusIsRejected) {
  nlohmann::json doc = {{"F", "x^2*y^2+y^2*z^2+z^2*x^2-x*y*z*w"},
                        {"double_curve", {{"samples", {{1, 1, 0, 1}}}}},
                        {"ordinary", true}};
  try {
    load_surface(doc, "bad");
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.witness(), "[1, 1, 0, 1]");
  }
}

TEST(Surface, RejectsBadDocuments) {
  EXPECT_EQ(code_of([] { load_surface(nlohmann::json{{"F", "x^2+y"}, {"ordinary", true}}); }),
            ErrorCode::InvariantViolation);
  EXPECT_EQ(code_of([] { load_surface(nlohmann::json{{"F", "x^2+"}}); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_surface(nlohmann::json::array()); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_surface_file("/nonexistent/surface.json"); }), ErrorCode::ParseError);
}

TEST(Surface, JsonRoundTrip) {
  for (const char* name : {"steiner_roman", "cone_cubic", "smooth_cubic_random"}) {
    const SurfaceModel s = picard::testing::surface(name);
    const SurfaceModel t = load_surface(nlohmann::json::parse(surface_to_json(s).dump()));
    EXPECT_EQ(s.F, t.F) << name;
    EXPECT_EQ(s.double_curve.samples, t.double_curve.samples);
    EXPECT_EQ(s.jacobian_samples, t.jacobian_samples);
    EXPECT_EQ(surface_to_json(s).dump(), surface_to_json(t).dump());
  }
}

TEST(Surface, Reduction) {
  const SurfaceModel s = reduce_surface(picard::testing::surface("cone_quartic"), Field::prime(5));
  EXPECT_EQ(s.field, Field::prime(5));
  EXPECT_EQ(s.F, poly4("x^4+y^4+z^4", Field::prime(5)));
  const SurfaceModel half = make_surface("half", poly4("1/3*x^2+y^2+z^2+w^2"), {}, true);
  EXPECT_EQ(code_of([&] { reduce_surface(half, Field::prime(3)); }), ErrorCode::DivisionByCharacteristic);
}

TEST(ZeuthenSegre, Formula) {
  EXPECT_EQ(zeuthen_segre_formula(4, 0, 2), 2);
  EXPECT_EQ(zeuthen_segre_formula(9, 1, 3), 12);
  EXPECT_EQ(zeuthen_segre_formula(24, 3, 4), 36);
}

TEST(ZeuthenSegre, JacobianCountsOnRandomSmoothSurfaces) {
  const std::vector<std::pair<const char*, long>> cases = {
      {"smooth_quadric_random", 2}, {"smooth_cubic_random", 12}, {"fermat_quartic_random", 36}};
  for (const auto& [name, delta] : cases) {
    const SurfaceModel s = picard::testing::surface(name);
    EXPECT_EQ(jacobian_count(s, 1), delta) << name;
    EXPECT_EQ(delta, s.d * (s.d - 1) * (s.d - 1));
    EXPECT_EQ(zeuthen_segre_formula(*s.expected.e, *s.expected.g, s.d), delta);
  }
}

TEST(ZeuthenSegre, OracleCrossCheckModP) {
  // quotient dimension mod a large prime at two consecutive bounds
  const std::uint64_t p = 1000003;
  for (const char* name : {"smooth_quadric_random", "smooth_cubic_random", "fermat_quartic_random"}) {
    const SurfaceModel s = picard::testing::surface(name);
    const auto gens = pencil_data(s, 1).jacobian_generators;
    const std::vector<Polynomial> g(gens.begin(), gens.end());
    const int bound = 3 * (s.d - 1) + 1;
    const std::size_t a = oracle::quotient_dim_mod_p(g, bound, p);
    const std::size_t b = oracle::quotient_dim_mod_p(g, bound + 1, p);
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(static_cast<long>(a), jacobian_count(s, 1)) << name;
  }
}

TEST(ZeuthenSegre, ExhaustiveCountBoundsTheLength) {
  const SurfaceModel s = picard::testing::surface("smooth_quadric_random");
  const auto gens = pencil_data(s, 1).jacobian_generators;
  for (const std::uint64_t p : {13u, 17u, 29u}) {
    const oracle::PointCount c = oracle::count_points_mod_p({gens.begin(), gens.end()}, p);
    EXPECT_LE(c.points, 2u);
    EXPECT_LE(c.simple, c.points);
  }
}

TEST(ZeuthenSegre, ConeVertexAtInfinityIsNotZeroDimensional) {
  // the affine chart of the standard cone still has a finite J_1
  EXPECT_EQ(jacobian_count(picard::testing::surface("cone_quartic"), 1), 36);
  const SurfaceModel moved = picard::testing::surface("cone_cubic_random");
  EXPECT_EQ(code_of([&] { jacobian_count(moved, 2); }), ErrorCode::NotZeroDimensional);
}

TEST(Reduction, GoodAndBadPrimes) {
  const SurfaceModel fermat = picard::testing::surface("fermat_quartic");
  EXPECT_EQ(essential_variables(fermat), 4u);
  EXPECT_EQ(essential_variables(picard::testing::surface("cone_quartic")), 3u);
  EXPECT_TRUE(good_reduction(fermat, Field::rationals()));
  EXPECT_TRUE(good_reduction(fermat, Field::prime(5)));
  EXPECT_FALSE(good_reduction(fermat, Field::prime(2)));
  // the seeded coordinate change is singular modulo 2
  EXPECT_FALSE(good_reduction(picard::testing::surface("smooth_cubic_random"), Field::prime(2)));
  EXPECT_TRUE(good_reduction(picard::testing::surface("smooth_cubic_random"), Field::prime(5)));
}
