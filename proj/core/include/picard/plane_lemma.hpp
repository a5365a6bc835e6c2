#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "picard/linear.hpp"
#include "picard/surface.hpp"

namespace picard {

/// Plane curve g(x, y, z) = 0 of degree n >= 1. `nodal` is declared, and the
/// listed nodes are checked to be ordinary double points.
struct PlaneCurve {
  std::string id;
  Field field = Field::rationals();
  Polynomial g{Field::rationals(), 3};
  bool nodal = false;
  std::vector<Point> nodes;

  int degree() const { return g.degree().value(); }
};

/// Throws InvariantViolation when g is not a nonzero form of positive degree
/// or a declared node is not an ordinary double point.
PlaneCurve make_curve(std::string id, Polynomial g, bool nodal, std::vector<Point> nodes = {});
PlaneCurve load_curve(const nlohmann::json& doc, const std::string& fallback_id = {});
PlaneCurve load_curve_file(const std::filesystem::path& path);
nlohmann::ordered_json curve_to_json(const PlaneCurve& c);

/// g, its partials vanish at p and the Hessian at p has rank 2.
bool is_ordinary_node(const Polynomial& g, const Point& p);

/// Triples (P1, P2, P3) of forms of degree l with P1 g_x + P2 g_y + P3 g_z = 0.
struct SyzygySpace {
  int l = 0;
  NullspaceBasis kernel;
  std::vector<std::array<Polynomial, 3>> triples;

  std::size_t dim() const { return triples.size(); }
};

SyzygySpace syzygy_space(const PlaneCurve& curve, int l, const EngineOptions& options = {});

/// No syzygy of degree l for 0 <= l <= n - 2. Throws ContractViolation
/// unless the curve is declared nodal.
bool castelnuovo_check(const PlaneCurve& curve, const EngineOptions& options = {});

}  // namespace picard
