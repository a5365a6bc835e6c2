#include "picard/adjoint.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "picard/errors.hpp"

namespace picard {

namespace {

using ColumnIndex = std::map<Monomial, std::size_t, GrevlexDescending>;

ColumnIndex index_columns(const std::vector<Monomial>& columns) {
  ColumnIndex out;
  for (std::size_t i = 0; i < columns.size(); ++i) out.emplace(columns[i], i);
  return out;
}

std::vector<Polynomial> rows_to_polynomials(const RowEchelon& e, const std::vector<Monomial>& columns) {
  std::vector<Polynomial> out;
  for (const auto& row : e.rows) {
    std::vector<Term> terms;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0) terms.push_back(Term{columns[c], row[c]});
    }
    out.push_back(Polynomial::from_terms(e.field, 3, std::move(terms)));
  }
  return out;
}

}  // namespace

std::string_view strategy_name(AdjointStrategy s) {
  return s == AdjointStrategy::ideal_span ? "ideal-span" : "point-sampling";
}

AdjointStrategy parse_strategy(std::string_view text) {
  if (text == "ideal-span") return AdjointStrategy::ideal_span;
  if (text == "point-sampling") return AdjointStrategy::point_sampling;
  throw Error(ErrorCode::ParseError, "unknown adjoint strategy '" + std::string(text) + "'");
}

bool AdjointSpace::contains(const Polynomial& p) const {
  if (p.is_zero()) return true;
  if (p.degree() > m) return false;
  Polynomial rest = p;
  for (const auto& b : basis) {
    const Rational c = rest.coefficient(b.terms().front().monomial);
    if (c != 0) rest -= b * c;
  }
  return rest.is_zero();
}

std::vector<std::vector<Point>> component_samples(const SurfaceModel& s, int m) {
  std::vector<std::vector<Point>> out;
  const Field& field = s.field;
  for (const auto& c : s.double_curve.components) {
    const long wanted = 3L * std::max(m, 0) * c.degree + 1;
    std::set<std::vector<std::string>> seen;
    std::vector<Point> points;
    // t runs over 0, 1, -1, 2, -2, ...; over a small prime field it may wrap
    for (long k = 0; static_cast<long>(points.size()) < wanted && k < 4 * wanted + 8; ++k) {
      const long t = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
      Point p;
      std::vector<std::string> key;
      const std::array<Rational, 1> at = {field.normalize(Rational(t))};
      for (const auto& coord : c.parametrization) {
        p.push_back(evaluate(coord, at));
        key.push_back(p.back().get_str());
      }
      if (std::all_of(p.begin(), p.end(), [](const Rational& v) { return v == 0; })) continue;
      if (!seen.insert(key).second) continue;
      points.push_back(std::move(p));
    }
    out.push_back(std::move(points));
  }
  return out;
}

std::vector<Point> parametrized_samples(const SurfaceModel& s, int m) {
  std::vector<Point> out;
  for (auto& points : component_samples(s, m)) out.insert(out.end(), points.begin(), points.end());
  return out;
}

AdjointSpace adjoint_space(const SurfaceModel& s, int m, const SolverOptions& options) {
  AdjointSpace space;
  space.m = m;
  space.field = s.field;
  space.strategy = options.strategy.value_or(AdjointStrategy::ideal_span);
  if (m < 0) return space;

  const DoubleCurve& curve = s.double_curve;
  if (curve.empty()) {
    space.unconstrained = true;
    space.basis = monomial_basis(s.field, 3, m);
    return space;
  }

  AdjointStrategy strategy;
  if (options.strategy) {
    strategy = *options.strategy;
  } else {
    strategy = curve.generators.empty() ? AdjointStrategy::point_sampling : AdjointStrategy::ideal_span;
  }
  space.strategy = strategy;
  const bool has_points = !curve.samples.empty() || !curve.components.empty();
  if ((strategy == AdjointStrategy::ideal_span && curve.generators.empty()) ||
      (strategy == AdjointStrategy::point_sampling && !has_points)) {
    throw Error(ErrorCode::StrategyUnavailable, std::string(strategy_name(strategy)) + " has no data for " + s.id);
  }

  const auto columns = monomials_up_to(3, m);
  const ColumnIndex column_of = index_columns(columns);
  CoeffMatrix matrix;
  matrix.field = s.field;
  matrix.ncols = columns.size();

  if (strategy == AdjointStrategy::ideal_span) {
    // span of generator x monomial products, dehomogenized
    matrix.provenance = "adjoint ideal span, degree <= " + std::to_string(m);
    for (const auto& g : curve.generators) {
      const int e = g.degree().value();
      if (e > m) continue;
      const Polynomial affine = dehomogenize(g);
      for (const auto& mono : monomials_up_to(3, m - e)) {
        SparseRow row;
        for (const auto& t : affine.terms()) row.push_back(SparseEntry{column_of.at(t.monomial * mono), t.coefficient});
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
        matrix.rows.push_back(std::move(row));
      }
    }
    if (options.on_matrix) options.on_matrix(matrix);
    space.basis = rows_to_polynomials(reduced_row_echelon(matrix, options.engine), columns);
    space.certified = true;
    return space;
  }

  // evaluation of the degree-m homogenization at points of the curve
  matrix.provenance = "adjoint point sampling, degree <= " + std::to_string(m);
  std::vector<Point> points = curve.samples;
  const auto per_component = component_samples(s, m);
  // a degree-m form vanishing at m e + 1 distinct points of a degree-e
  // component vanishes on it
  bool enough = !curve.components.empty();
  for (std::size_t k = 0; k < per_component.size(); ++k) {
    const long needed = static_cast<long>(m) * curve.components[k].degree + 1;
    if (static_cast<long>(per_component[k].size()) < needed) enough = false;
    points.insert(points.end(), per_component[k].begin(), per_component[k].end());
  }
  for (const auto& p : points) {
    SparseRow row;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Monomial& mono = columns[c];
      Rational v = 1;
      for (int i = 0; i < 3; ++i) {
        for (unsigned k = 0; k < mono[i]; ++k) v *= p[static_cast<std::size_t>(i)];
      }
      for (int k = mono.total_degree(); k < m; ++k) v *= p[3];
      v = s.field.normalize(v);
      if (v != 0) row.push_back(SparseEntry{c, std::move(v)});
    }
    matrix.rows.push_back(std::move(row));
  }
  if (options.on_matrix) options.on_matrix(matrix);
  const NullspaceBasis kernel = nullspace_basis(matrix, options.engine);
  CoeffMatrix span = CoeffMatrix::from_dense(s.field, kernel.vectors, "adjoint sampled kernel");
  span.ncols = columns.size();
  space.basis = rows_to_polynomials(reduced_row_echelon(span, options.engine), columns);
  space.certified = enough;
  return space;
}

}  // namespace picard
