#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "picard/linear.hpp"
#include "picard/surface.hpp"

namespace picard {

enum class AdjointStrategy { ideal_span, point_sampling };

std::string_view strategy_name(AdjointStrategy s);
AdjointStrategy parse_strategy(std::string_view text);

using MatrixObserver = std::function<void(const CoeffMatrix&)>;

struct SolverOptions {
  /// Unset: ideal-span when generators are present, else point sampling.
  std::optional<AdjointStrategy> strategy;
  EngineOptions engine;
  /// Called with every coefficient matrix the solvers assemble.
  MatrixObserver on_matrix;
};

/// Affine polynomials of degree <= m whose degree-m homogenization contains
/// the double curve. The basis is in reduced echelon form over the monomials
/// in canonical order, so membership is a reduction.
struct AdjointSpace {
  int m = 0;
  Field field = Field::rationals();
  std::vector<Polynomial> basis;
  AdjointStrategy strategy = AdjointStrategy::ideal_span;
  /// False when the space came from an explicit sample list only.
  bool certified = true;
  /// True when the double curve is empty and the space is everything.
  bool unconstrained = false;

  std::size_t dim() const { return basis.size(); }
  bool contains(const Polynomial& p) const;
};

/// Throws StrategyUnavailable when the double curve is nonempty and the
/// chosen strategy has no data to work with.
AdjointSpace adjoint_space(const SurfaceModel& s, int m, const SolverOptions& options = {});

/// Points generated from the double-curve parametrizations: at least
/// 3 m e + 1 per component of degree e.
std::vector<Point> parametrized_samples(const SurfaceModel& s, int m);

}  // namespace picard
