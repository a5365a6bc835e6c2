#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "picard/polynomial.hpp"

namespace picard {

struct SparseEntry {
  std::size_t col;
  Rational value;
};

/// Sorted by column, no stored zeros.
using SparseRow = std::vector<SparseEntry>;

/// Exact sparse matrix produced from a polynomial identity. Rows are indexed
/// by monomials of the identity's ambient degree when `row_labels` is
/// non-empty; columns by the unknown coefficients.
struct CoeffMatrix {
  Field field = Field::rationals();
  std::size_t ncols = 0;
  std::vector<SparseRow> rows;
  std::vector<Monomial> row_labels;
  std::vector<std::string> column_labels;
  std::string provenance;

  std::size_t nrows() const { return rows.size(); }
  std::size_t nonzeros() const;

  /// Builds a matrix from dense rows, dropping zeros.
  static CoeffMatrix from_dense(const Field& field, const std::vector<std::vector<Rational>>& dense,
                                std::string provenance = {});
};

enum class EliminationRoute { prime_field, modular_lift, fractions };

std::string_view route_name(EliminationRoute route);

struct EngineOptions {
  std::uint64_t prime_seed = 0x9e3779b97f4a7c15ULL;
  std::size_t max_primes = 96;
  /// Skip the modular path over the rationals.
  bool force_fractions = false;
};

/// Reduced row echelon form. `rows[i]` has a 1 at `pivots[i]` and zeros in
/// every other pivot column.
struct RowEchelon {
  Field field = Field::rationals();
  std::size_t ncols = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Rational>> rows;
  EliminationRoute route = EliminationRoute::fractions;
  std::size_t primes_used = 0;

  std::size_t rank() const { return pivots.size(); }
};

/// Basis of the right kernel in reduced form: vector k has a 1 in
/// `free_columns[k]` and zeros in the other free columns.
struct NullspaceBasis {
  std::vector<std::vector<Rational>> vectors;
  std::vector<std::size_t> free_columns;
  EliminationRoute route = EliminationRoute::fractions;

  std::size_t dim() const { return vectors.size(); }
};

RowEchelon reduced_row_echelon(const CoeffMatrix& m, const EngineOptions& options = {});
NullspaceBasis nullspace_from_echelon(const RowEchelon& echelon);
NullspaceBasis nullspace_basis(const CoeffMatrix& m, const EngineOptions& options = {});
std::size_t rank(const CoeffMatrix& m, const EngineOptions& options = {});

/// M v = 0 exactly, for a single vector.
bool annihilates(const CoeffMatrix& m, std::span<const Rational> v);

/// Matrix reduced into another field (rationals to a prime field). Throws
/// DivisionByCharacteristic when an entry's denominator vanishes.
CoeffMatrix reduce_matrix(const CoeffMatrix& m, const Field& target);

/// Text dump: a header line "% rows cols nnz", a "% provenance" line, then one
/// "row col value" triple per line (0-based).
void dump_matrix(const CoeffMatrix& m, std::ostream& out);

// Linear polynomial identities ------------------------------------------------

/// An unknown polynomial ranging over the span of `basis`; each basis element
/// contributes one unknown coefficient.
struct UnknownBlock {
  std::string name;
  std::vector<Polynomial> basis;
};

/// Product of the listed unknown blocks times a fixed multiplier. The
/// identity is linear iff every term names exactly one unknown block.
struct IdentityTerm {
  std::vector<std::size_t> unknowns;
  Polynomial multiplier;
};

/// sum(terms) = 0, to be solved for the unknown coefficients.
struct LinearIdentity {
  Field field = Field::rationals();
  int nvars = 3;
  std::vector<UnknownBlock> blocks;
  std::vector<IdentityTerm> terms;
  std::string provenance;

  std::size_t add_block(std::string name, std::vector<Polynomial> basis);
  void add_term(std::size_t block, Polynomial multiplier);
  std::size_t unknown_count() const;
  /// Offset of the first coefficient of `block` in the unknown vector.
  std::size_t block_offset(std::size_t block) const;
};

/// Monomials of degree <= max_degree as polynomials (empty for negative bound).
std::vector<Polynomial> monomial_basis(const Field& field, int nvars, int max_degree);
/// Monomials of degree exactly `degree`.
std::vector<Polynomial> form_basis(const Field& field, int nvars, int degree);

/// Throws NotLinear when a term has zero or several unknown factors.
CoeffMatrix coefficient_matrix(const LinearIdentity& identity);

/// The unknown polynomials encoded by a coefficient vector, one per block.
std::vector<Polynomial> decode(const LinearIdentity& identity, std::span<const Rational> vector);

/// Left-hand side of the identity evaluated at a solution vector; the zero
/// polynomial exactly when the vector solves it.
Polynomial identity_residual(const LinearIdentity& identity, std::span<const Rational> vector);

}  // namespace picard
