#include "picard/linear.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "picard/errors.hpp"

namespace picard {

namespace {

using modular::u64;

// Reduced echelon form modulo a word-sized prime.
struct ModEchelon {
  std::vector<std::size_t> pivots;
  std::vector<std::vector<u64>> rows;
};

using ModSparseRow = std::vector<std::pair<std::size_t, u64>>;

constexpr std::size_t kDenseColumnLimit = 64;

// Column-by-column Gauss-Jordan: the pivot of each column is the lowest-index
// remaining row with a nonzero entry there.
ModEchelon dense_echelon(const std::vector<ModSparseRow>& input, std::size_t ncols, u64 p) {
  std::vector<std::vector<u64>> a(input.size(), std::vector<u64>(ncols, 0));
  for (std::size_t r = 0; r < input.size(); ++r) {
    for (const auto& [c, v] : input[r]) a[r][c] = v;
  }
  ModEchelon out;
  std::size_t next = 0;
  for (std::size_t col = 0; col < ncols && next < a.size(); ++col) {
    std::size_t pivot = next;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    if (pivot != next) {
      // rotate instead of swap so the remaining rows keep their index order
      std::rotate(a.begin() + static_cast<std::ptrdiff_t>(next), a.begin() + static_cast<std::ptrdiff_t>(pivot),
                  a.begin() + static_cast<std::ptrdiff_t>(pivot) + 1);
    }
    auto& prow = a[next];
    const u64 inv = modular::inverse(prow[col], p);
    for (std::size_t j = col; j < ncols; ++j) prow[j] = modular::mul(prow[j], inv, p);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == next || a[r][col] == 0) continue;
      const u64 factor = a[r][col];
      for (std::size_t j = col; j < ncols; ++j) {
        if (prow[j] != 0) a[r][j] = modular::sub(a[r][j], modular::mul(factor, prow[j], p), p);
      }
    }
    out.pivots.push_back(col);
    ++next;
  }
  a.resize(out.pivots.size());
  out.rows = std::move(a);
  return out;
}

// Row-incremental elimination against sparse pivot rows with a dense scratch
// accumulator, followed by back substitution. Produces the same reduced form
// as the dense routine since the reduced echelon form of a row space is unique.
ModEchelon sparse_echelon(const std::vector<ModSparseRow>& input, std::size_t ncols, u64 p) {
  std::vector<long> pivot_row_of_col(ncols, -1);
  std::vector<ModSparseRow> pivot_rows;
  std::vector<u64> scratch(ncols, 0);
  for (const auto& row : input) {
    if (row.empty()) continue;
    std::size_t lo = ncols;
    for (const auto& [c, v] : row) {
      scratch[c] = v;
      lo = std::min(lo, c);
    }
    for (std::size_t col = lo; col < ncols; ++col) {
      if (scratch[col] == 0 || pivot_row_of_col[col] < 0) continue;
      const u64 factor = scratch[col];
      for (const auto& [c, v] : pivot_rows[static_cast<std::size_t>(pivot_row_of_col[col])]) {
        scratch[c] = modular::sub(scratch[c], modular::mul(factor, v, p), p);
      }
    }
    std::size_t lead = lo;
    while (lead < ncols && scratch[lead] == 0) ++lead;
    if (lead == ncols) continue;
    const u64 inv = modular::inverse(scratch[lead], p);
    ModSparseRow reduced;
    for (std::size_t c = lead; c < ncols; ++c) {
      if (scratch[c] != 0) {
        reduced.emplace_back(c, modular::mul(scratch[c], inv, p));
        scratch[c] = 0;
      }
    }
    pivot_row_of_col[lead] = static_cast<long>(pivot_rows.size());
    pivot_rows.push_back(std::move(reduced));
  }

  ModEchelon out;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (pivot_row_of_col[c] >= 0) out.pivots.push_back(c);
  }
  out.rows.assign(out.pivots.size(), std::vector<u64>(ncols, 0));
  // back substitution from the rightmost pivot
  for (std::size_t k = out.pivots.size(); k-- > 0;) {
    auto& dense = out.rows[k];
    for (const auto& [c, v] : pivot_rows[static_cast<std::size_t>(pivot_row_of_col[out.pivots[k]])]) dense[c] = v;
    for (std::size_t later = k + 1; later < out.pivots.size(); ++later) {
      const std::size_t pc = out.pivots[later];
      const u64 factor = dense[pc];
      if (factor == 0) continue;
      const auto& lower = out.rows[later];
      for (std::size_t c = pc; c < ncols; ++c) {
        if (lower[c] != 0) dense[c] = modular::sub(dense[c], modular::mul(factor, lower[c], p), p);
      }
    }
  }
  return out;
}

ModEchelon echelon_mod_p(const std::vector<ModSparseRow>& rows, std::size_t ncols, u64 p) {
  return ncols < kDenseColumnLimit ? dense_echelon(rows, ncols, p) : sparse_echelon(rows, ncols, p);
}

std::optional<std::vector<ModSparseRow>> reduce_rows(const CoeffMatrix& m, u64 p) {
  std::vector<ModSparseRow> out;
  out.reserve(m.rows.size());
  for (const auto& row : m.rows) {
    ModSparseRow r;
    r.reserve(row.size());
    for (const auto& e : row) {
      auto v = modular::reduce(e.value, p);
      if (!v) return std::nullopt;
      if (*v != 0) r.emplace_back(e.col, *v);
    }
    out.push_back(std::move(r));
  }
  return out;
}

RowEchelon fraction_echelon(const CoeffMatrix& m) {
  const Field& field = m.field;
  std::vector<std::vector<Rational>> a(m.rows.size(), std::vector<Rational>(m.ncols, 0));
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (const auto& e : m.rows[r]) a[r][e.col] = field.normalize(e.value);
  }
  RowEchelon out;
  out.field = field;
  out.ncols = m.ncols;
  out.route = EliminationRoute::fractions;
  std::size_t next = 0;
  for (std::size_t col = 0; col < m.ncols && next < a.size(); ++col) {
    std::size_t pivot = next;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    if (pivot != next) {
      std::rotate(a.begin() + static_cast<std::ptrdiff_t>(next), a.begin() + static_cast<std::ptrdiff_t>(pivot),
                  a.begin() + static_cast<std::ptrdiff_t>(pivot) + 1);
    }
    auto& prow = a[next];
    const Rational inv = field.inverse(prow[col]);
    for (std::size_t j = col; j < m.ncols; ++j) prow[j] = field.normalize(prow[j] * inv);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == next || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t j = col; j < m.ncols; ++j) {
        if (prow[j] != 0) a[r][j] = field.normalize(a[r][j] - factor * prow[j]);
      }
    }
    out.pivots.push_back(col);
    ++next;
  }
  a.resize(out.pivots.size());
  out.rows = std::move(a);
  return out;
}

RowEchelon from_mod(const ModEchelon& e, const Field& field, std::size_t ncols) {
  RowEchelon out;
  out.field = field;
  out.ncols = ncols;
  out.pivots = e.pivots;
  out.route = EliminationRoute::prime_field;
  out.primes_used = 1;
  out.rows.reserve(e.rows.size());
  for (const auto& row : e.rows) {
    std::vector<Rational> r(ncols);
    for (std::size_t c = 0; c < ncols; ++c) r[c] = Rational(Integer(static_cast<unsigned long>(row[c])));
    out.rows.push_back(std::move(r));
  }
  return out;
}

// Higher rank first, then lexicographically smaller pivot columns.
bool better_pivots(const std::vector<std::size_t>& candidate, const std::vector<std::size_t>& reference) {
  if (candidate.size() != reference.size()) return candidate.size() > reference.size();
  return candidate < reference;
}

bool verify_echelon(const CoeffMatrix& m, const RowEchelon& e) {
  const NullspaceBasis basis = nullspace_from_echelon(e);
  return std::all_of(basis.vectors.begin(), basis.vectors.end(),
                     [&](const auto& v) { return annihilates(m, v); });
}

// Eliminate modulo a stream of primes, combine residues by CRT, reconstruct the
// rational reduced form and accept it only after exact verification. The rank
// over Q is at least the rank mod p, and a verified kernel of the complementary
// dimension bounds it from above, so acceptance certifies the result.
std::optional<RowEchelon> modular_lift(const CoeffMatrix& m, const EngineOptions& options) {
  modular::PrimeStream primes(options.prime_seed);
  std::vector<std::size_t> reference;
  std::vector<Integer> residues;
  Integer modulus = 0;
  std::size_t used = 0;
  std::optional<std::pair<std::size_t, Rational>> previous_probe;
  for (std::size_t attempt = 0; attempt < options.max_primes; ++attempt) {
    const u64 p = primes.next();
    auto rows = reduce_rows(m, p);
    if (!rows) continue;
    const ModEchelon e = echelon_mod_p(*rows, m.ncols, p);
    const std::size_t cells = e.pivots.size() * m.ncols;
    if (modulus == 0 || better_pivots(e.pivots, reference)) {
      reference = e.pivots;
      residues.assign(cells, 0);
      for (std::size_t i = 0; i < e.rows.size(); ++i) {
        for (std::size_t c = 0; c < m.ncols; ++c) {
          residues[i * m.ncols + c] = static_cast<unsigned long>(e.rows[i][c]);
        }
      }
      modulus = static_cast<unsigned long>(p);
      used = 1;
    } else if (e.pivots != reference) {
      continue;  // unlucky prime
    } else {
      const Integer pz = static_cast<unsigned long>(p);
      const u64 inv = modular::inverse(modular::reduce(modulus, p), p);
      for (std::size_t i = 0; i < e.rows.size(); ++i) {
        for (std::size_t c = 0; c < m.ncols; ++c) {
          Integer& x = residues[i * m.ncols + c];
          const u64 delta = modular::mul(modular::sub(e.rows[i][c], modular::reduce(x, p), p), inv, p);
          x += modulus * static_cast<unsigned long>(delta);
        }
      }
      modulus *= pz;
      ++used;
    }

    // cheap stability probe on the last nonzero cell before a full reconstruction
    std::optional<std::size_t> probe_cell;
    for (std::size_t k = residues.size(); k-- > 0;) {
      if (residues[k] != 0) {
        probe_cell = k;
        break;
      }
    }
    if (probe_cell) {
      auto probe = modular::reconstruct(residues[*probe_cell], modulus);
      const bool stable = probe && previous_probe && previous_probe->first == *probe_cell &&
                          previous_probe->second == *probe;
      previous_probe.reset();
      if (probe) previous_probe.emplace(*probe_cell, *probe);
      if (!stable) continue;
    }

    RowEchelon candidate;
    candidate.field = m.field;
    candidate.ncols = m.ncols;
    candidate.pivots = reference;
    candidate.route = EliminationRoute::modular_lift;
    candidate.primes_used = used;
    candidate.rows.assign(reference.size(), std::vector<Rational>(m.ncols, 0));
    bool reconstructed = true;
    for (std::size_t i = 0; i < reference.size() && reconstructed; ++i) {
      for (std::size_t c = 0; c < m.ncols; ++c) {
        const Integer& x = residues[i * m.ncols + c];
        if (x == 0) continue;
        auto q = modular::reconstruct(x, modulus);
        if (!q) {
          reconstructed = false;
          break;
        }
        candidate.rows[i][c] = *q;
      }
    }
    if (reconstructed && verify_echelon(m, candidate)) return candidate;
  }
  return std::nullopt;
}

}  // namespace

std::string_view route_name(EliminationRoute route) {
  switch (route) {
    case EliminationRoute::prime_field: return "prime-field";
    case EliminationRoute::modular_lift: return "modular-lift";
    case EliminationRoute::fractions: return "fractions";
  }
  return "unknown";
}

std::size_t CoeffMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.size();
  return n;
}

CoeffMatrix CoeffMatrix::from_dense(const Field& field, const std::vector<std::vector<Rational>>& dense,
                                    std::string provenance) {
  CoeffMatrix m;
  m.field = field;
  m.ncols = dense.empty() ? 0 : dense.front().size();
  m.provenance = std::move(provenance);
  for (const auto& row : dense) {
    if (row.size() != m.ncols) throw Error(ErrorCode::IndexOutOfRange, "ragged dense matrix");
    SparseRow r;
    for (std::size_t c = 0; c < row.size(); ++c) {
      Rational v = field.normalize(row[c]);
      if (v != 0) r.push_back(SparseEntry{c, std::move(v)});
    }
    m.rows.push_back(std::move(r));
  }
  return m;
}

RowEchelon reduced_row_echelon(const CoeffMatrix& m, const EngineOptions& options) {
  if (m.field.is_prime()) {
    auto rows = reduce_rows(m, m.field.characteristic());
    return from_mod(echelon_mod_p(*rows, m.ncols, m.field.characteristic()), m.field, m.ncols);
  }
  if (!options.force_fractions) {
    if (auto lifted = modular_lift(m, options)) return *lifted;
  }
  return fraction_echelon(m);
}

NullspaceBasis nullspace_from_echelon(const RowEchelon& echelon) {
  NullspaceBasis out;
  out.route = echelon.route;
  std::vector<bool> is_pivot(echelon.ncols, false);
  for (auto c : echelon.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < echelon.ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(echelon.ncols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < echelon.pivots.size(); ++i) {
      if (echelon.rows[i][f] != 0) v[echelon.pivots[i]] = echelon.field.normalize(-echelon.rows[i][f]);
    }
    out.free_columns.push_back(f);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

NullspaceBasis nullspace_basis(const CoeffMatrix& m, const EngineOptions& options) {
  return nullspace_from_echelon(reduced_row_echelon(m, options));
}

std::size_t rank(const CoeffMatrix& m, const EngineOptions& options) {
  return reduced_row_echelon(m, options).rank();
}

bool annihilates(const CoeffMatrix& m, std::span<const Rational> v) {
  if (v.size() != m.ncols) throw Error(ErrorCode::IndexOutOfRange, "vector length does not match columns");
  for (const auto& row : m.rows) {
    Rational acc = 0;
    for (const auto& e : row) {
      if (v[e.col] != 0) acc += e.value * v[e.col];
    }
    if (m.field.normalize(acc) != 0) return false;
  }
  return true;
}

CoeffMatrix reduce_matrix(const CoeffMatrix& m, const Field& target) {
  CoeffMatrix out = m;
  out.field = target;
  for (auto& row : out.rows) {
    SparseRow kept;
    for (auto& e : row) {
      Rational v = target.normalize(e.value);
      if (v != 0) kept.push_back(SparseEntry{e.col, std::move(v)});
    }
    row = std::move(kept);
  }
  return out;
}

void dump_matrix(const CoeffMatrix& m, std::ostream& out) {
  out << "% " << m.nrows() << ' ' << m.ncols << ' ' << m.nonzeros() << '\n';
  out << "% " << m.provenance << " [" << m.field.to_string() << "]\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (const auto& e : m.rows[r]) out << r << ' ' << e.col << ' ' << e.value.get_str() << '\n';
  }
}

std::size_t LinearIdentity::add_block(std::string name, std::vector<Polynomial> basis) {
  for (const auto& b : basis) {
    if (!(b.field() == field) || b.nvars() != nvars) {
      throw Error(ErrorCode::IncompatibleOperands, "basis of block '" + name + "' has the wrong ring");
    }
  }
  blocks.push_back(UnknownBlock{std::move(name), std::move(basis)});
  return blocks.size() - 1;
}

void LinearIdentity::add_term(std::size_t block, Polynomial multiplier) {
  terms.push_back(IdentityTerm{{block}, std::move(multiplier)});
}

std::size_t LinearIdentity::unknown_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.basis.size();
  return n;
}

std::size_t LinearIdentity::block_offset(std::size_t block) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < block; ++i) n += blocks[i].basis.size();
  return n;
}

std::vector<Polynomial> monomial_basis(const Field& field, int nvars, int max_degree) {
  std::vector<Polynomial> out;
  for (const auto& m : monomials_up_to(nvars, max_degree)) out.push_back(Polynomial::monomial(field, nvars, m));
  return out;
}

std::vector<Polynomial> form_basis(const Field& field, int nvars, int degree) {
  std::vector<Polynomial> out;
  for (const auto& m : monomials_of_degree(nvars, degree)) out.push_back(Polynomial::monomial(field, nvars, m));
  return out;
}

CoeffMatrix coefficient_matrix(const LinearIdentity& identity) {
  for (const auto& term : identity.terms) {
    if (term.unknowns.size() != 1) {
      throw Error(ErrorCode::NotLinear, "term with " + std::to_string(term.unknowns.size()) +
                                            " unknown factors in '" + identity.provenance + "'");
    }
    if (term.unknowns.front() >= identity.blocks.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "term refers to a missing unknown block");
    }
  }
  // column -> (row monomial -> value)
  std::map<Monomial, std::size_t, GrevlexDescending> row_index;
  std::vector<std::map<Monomial, Rational, GrevlexDescending>> columns(identity.unknown_count());
  for (const auto& term : identity.terms) {
    const std::size_t block = term.unknowns.front();
    const std::size_t offset = identity.block_offset(block);
    const auto& basis = identity.blocks[block].basis;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Polynomial product = basis[j] * term.multiplier;
      for (const auto& t : product.terms()) {
        columns[offset + j][t.monomial] += t.coefficient;
        row_index.emplace(t.monomial, 0);
      }
    }
  }
  CoeffMatrix m;
  m.field = identity.field;
  m.ncols = columns.size();
  m.provenance = identity.provenance;
  std::size_t next = 0;
  for (auto& [mono, idx] : row_index) {
    idx = next++;
    m.row_labels.push_back(mono);
  }
  m.rows.assign(row_index.size(), {});
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [mono, value] : columns[c]) {
      Rational v = identity.field.normalize(value);
      if (v != 0) m.rows[row_index.at(mono)].push_back(SparseEntry{c, std::move(v)});
    }
  }
  for (std::size_t b = 0; b < identity.blocks.size(); ++b) {
    for (std::size_t j = 0; j < identity.blocks[b].basis.size(); ++j) {
      m.column_labels.push_back(identity.blocks[b].name + "[" + to_string(identity.blocks[b].basis[j]) + "]");
    }
  }
  return m;
}

std::vector<Polynomial> decode(const LinearIdentity& identity, std::span<const Rational> vector) {
  if (vector.size() != identity.unknown_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "coefficient vector has the wrong length");
  }
  std::vector<Polynomial> out;
  std::size_t k = 0;
  for (const auto& block : identity.blocks) {
    Polynomial p(identity.field, identity.nvars);
    for (const auto& b : block.basis) {
      if (vector[k] != 0) p += b * vector[k];
      ++k;
    }
    out.push_back(std::move(p));
  }
  return out;
}

Polynomial identity_residual(const LinearIdentity& identity, std::span<const Rational> vector) {
  const auto values = decode(identity, vector);
  Polynomial total(identity.field, identity.nvars);
  for (const auto& term : identity.terms) {
    Polynomial product = term.multiplier;
    for (auto b : term.unknowns) product *= values[b];
    total += product;
  }
  return total;
}

}  // namespace picard
