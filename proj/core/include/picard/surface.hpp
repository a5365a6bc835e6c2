#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "picard/coordinates.hpp"
#include "picard/linear.hpp"
#include "picard/polynomial.hpp"

namespace picard {

using Point = std::vector<Rational>;

/// Externally known invariants a fixture may carry for comparison.
struct ExpectedValues {
  std::optional<long> q_an;
  std::optional<long> p_g;
  std::optional<long> delta;
  std::optional<long> q_a;
  std::optional<long> e;
  std::optional<long> g;
};

/// A rational component of the double curve, t -> [p0(t):p1(t):p2(t):p3(t)],
/// with the degree of the image curve.
struct CurveComponent {
  std::vector<Polynomial> parametrization;  // four polynomials in one variable
  int degree = 1;
};

/// The double curve is input data: generators of its homogeneous ideal,
/// optional points on it and optional rational parametrizations.
struct DoubleCurve {
  std::vector<Polynomial> generators;
  std::vector<Point> samples;
  std::vector<CurveComponent> components;

  bool empty() const { return generators.empty() && samples.empty() && components.empty(); }
};

/// Degree-d surface F = 0 in P^3 with its affine chart f(x,y,z) = F(x,y,z,1).
struct SurfaceModel {
  std::string id;
  Field field = Field::rationals();
  Polynomial F{Field::rationals(), 4};
  Polynomial f{Field::rationals(), 3};
  int d = 0;
  DoubleCurve double_curve;
  bool ordinary = false;
  bool generic_coordinates = false;
  std::optional<long> triple_points;
  ExpectedValues expected;
  std::vector<std::string> waivers;
  /// Affine points of the jacobian scheme J_i, indexed by axis - 1.
  std::array<std::vector<Point>, 3> jacobian_samples;

  /// dF/dx_i for i = 1..4.
  Polynomial form_partial(int i) const;
  /// df/dx, df/dy, df/dz for axis = 1..3.
  Polynomial affine_partial(int axis) const;
  bool is_cone() const;
  bool waived(const std::string& key) const;
};

/// Builds the model, derives f and d and checks every invariant.
/// Throws InvariantViolation naming the failing generator or sample.
SurfaceModel make_surface(std::string id, Polynomial F, DoubleCurve curve, bool ordinary);

/// Re-runs every invariant check on an assembled model.
void validate_surface(const SurfaceModel& s);

/// Parses a fixture document; `fallback_id` is used when it has no "id".
/// Throws ParseError or InvariantViolation.
SurfaceModel load_surface(const nlohmann::json& doc, const std::string& fallback_id = {});
SurfaceModel load_surface_file(const std::filesystem::path& path);

/// Fixture document of the model as it stands (after any coordinate change).
nlohmann::ordered_json surface_to_json(const SurfaceModel& s);

/// Moves the surface and all of its double-curve data by the substitution.
SurfaceModel transform_surface(const SurfaceModel& s, const CoordinateChange& change);

/// Reduction of a rational model modulo a prime. Throws
/// DivisionByCharacteristic when a denominator vanishes.
SurfaceModel reduce_surface(const SurfaceModel& s, const Field& target);

/// Dimension of the span of F_1, ..., F_4, i.e. the number of variables F
/// essentially depends on.
std::size_t essential_variables(const SurfaceModel& s);

/// True when reducing into `target` keeps the model's shape: the
/// characteristic does not divide d, the reduction exists and F still
/// depends on as many variables. Always true for the rationals.
bool good_reduction(const SurfaceModel& s, const Field& target);

Point parse_point(const nlohmann::json& value, const Field& field, std::size_t length);
nlohmann::ordered_json point_to_json(const Point& p);

struct PencilData {
  int axis = 1;
  /// {f, f_y, f_z} for axis 1 and cyclically for axes 2 and 3.
  std::array<Polynomial, 3> jacobian_generators;
  /// The polar form F_axis.
  Polynomial polar;
};

PencilData pencil_data(const SurfaceModel& s, int axis);

/// Length of the jacobian scheme of the pencil along `axis`, computed as the
/// dimension of k[x,y,z] / (f, f_y, f_z) from truncated Macaulay matrices.
/// Throws UnsupportedDoubleCurve or NotZeroDimensional.
long jacobian_count(const SurfaceModel& s, int axis, const EngineOptions& options = {});

/// dim of degree-<=bound polynomials modulo the span of the multiples of
/// `generators` that stay within the bound.
long truncated_quotient_dimension(std::span<const Polynomial> generators, int bound,
                                  const EngineOptions& options = {});

/// Length of the singular scheme of the section F(x, y, z, 0) by the plane
/// at infinity; nullopt when the section is zero or its singularities are
/// not isolated.
std::optional<long> section_singular_length(const SurfaceModel& s, const EngineOptions& options = {});

/// The plane at infinity is in general position: its section is exactly as
/// singular as the section by a seeded random plane. Tangency, a triple or
/// pinch point at infinity and a cone vertex at infinity all fail this.
bool chart_is_generic(const SurfaceModel& s, const EngineOptions& options = {});

/// delta = e + 4(g - 1) + d.
long zeuthen_segre_formula(long e, long g, long d);

}  // namespace picard
