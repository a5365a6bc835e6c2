#include "oracle.hpp"

#include <stdexcept>

#include "picard/errors.hpp"

namespace oracle {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Echelon {
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;
};

Echelon gauss_jordan(std::vector<Vec> rows, std::size_t ncols, const Ring& r) {
  Echelon e;
  std::size_t next = 0;
  for (std::size_t c = 0; c < ncols && next < rows.size(); ++c) {
    std::size_t pick = next;
    while (pick < rows.size() && rows[pick][c] == 0) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[next], rows[pick]);
    const Q inv = r.norm(Q(1) / rows[next][c]);
    for (auto& v : rows[next]) v = r.norm(v * inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == next || rows[i][c] == 0) continue;
      const Q factor = rows[i][c];
      for (std::size_t k = 0; k < rows[i].size(); ++k) rows[i][k] = r.norm(rows[i][k] - factor * rows[next][k]);
    }
    e.pivots.push_back(c);
    ++next;
  }
  rows.resize(next);
  e.rows = std::move(rows);
  return e;
}

int total(const Exp& e) { return e[0] + e[1] + e[2] + e[3]; }

Exp plus(const Exp& a, const Exp& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }

Poly monomial(const Exp& e) { return Poly{{e, Q(1)}}; }

/// Columns given as polynomials; returns dense rows indexed by the monomials
/// that occur.
std::vector<Vec> rows_of(const std::vector<Poly>& columns) {
  std::map<Exp, std::size_t> index;
  for (const auto& col : columns) {
    for (const auto& [e, c] : col) index.emplace(e, 0);
  }
  std::size_t k = 0;
  for (auto& [e, i] : index) i = k++;
  std::vector<Vec> rows(index.size(), Vec(columns.size(), Q(0)));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (const auto& [e, c] : columns[j]) rows[index.at(e)][j] = c;
  }
  return rows;
}

/// Projective points of the double curve known to the fixture.
std::vector<std::vector<Q>> curve_points(const picard::SurfaceModel& s, int m) {
  const Ring r = ring_of(s.field);
  std::vector<std::vector<Q>> out;
  for (const auto& p : s.double_curve.samples) out.push_back(std::vector<Q>(p.begin(), p.end()));
  for (const auto& c : s.double_curve.components) {
    const int count = 3 * std::max(m, 1) * c.degree + 5;
    for (int t = 0; t < count; ++t) {
      std::vector<Q> pt;
      for (const auto& coord : c.parametrization) pt.push_back(eval(from(coord), {r.norm(Q(t))}, r));
      out.push_back(std::move(pt));
    }
  }
  if (!s.double_curve.generators.empty() && s.double_curve.samples.empty() && s.double_curve.components.empty()) {
    throw std::logic_error("oracle needs points on the double curve");
  }
  return out;
}

/// Value of the degree-m homogenization of a 3-variable monomial at a point.
Q hom_value(const Exp& e, int m, const std::vector<Q>& pt, const Ring& r) {
  Exp h = e;
  h[3] = m - total(e);
  return eval(monomial(h), pt, r);
}

/// Rows forcing the block at `offset` to vanish on the double curve.
void adjoint_rows(const picard::SurfaceModel& s, const std::vector<Exp>& block, std::size_t offset, int m,
                  std::size_t ncols, std::vector<Vec>& rows, bool homogeneous) {
  const Ring r = ring_of(s.field);
  for (const auto& pt : curve_points(s, m)) {
    Vec row(ncols, Q(0));
    for (std::size_t i = 0; i < block.size(); ++i) {
      row[offset + i] = homogeneous ? eval(monomial(block[i]), pt, r) : hom_value(block[i], m, pt, r);
    }
    rows.push_back(std::move(row));
  }
}

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 out = 1;
  while (e) {
    if (e & 1) out = mulmod(out, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return out;
}

u64 residue(const Q& v, u64 p) {
  const Ring r{p};
  return r.norm(v).get_num().get_ui();
}

struct ModTerm {
  Exp e;
  u64 c;
};

std::vector<ModTerm> mod_terms(const Poly& a, u64 p) {
  std::vector<ModTerm> out;
  for (const auto& [e, c] : a) {
    const u64 v = residue(c, p);
    if (v) out.push_back({e, v});
  }
  return out;
}

u64 mod_eval(const std::vector<ModTerm>& terms, const std::array<u64, 3>& pt, u64 p) {
  u64 sum = 0;
  for (const auto& t : terms) {
    u64 v = t.c;
    for (int i = 0; i < 3; ++i) v = mulmod(v, powmod(pt[i], static_cast<u64>(t.e[i]), p), p);
    sum = (sum + v) % p;
  }
  return sum;
}

}  // namespace

Q Ring::norm(const Q& v) const {
  Q out = v;
  out.canonicalize();
  if (p == 0) return out;
  const mpz_class mod(std::to_string(p));
  mpz_class num = out.get_num() % mod;
  if (num < 0) num += mod;
  mpz_class den = out.get_den() % mod;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw std::domain_error("denominator vanishes mod p");
  }
  mpz_class res = (num * inv) % mod;
  return Q(res);
}

Ring ring_of(const picard::Field& field) { return Ring{field.is_prime() ? field.characteristic() : 0}; }

Poly from(const picard::Polynomial& p) {
  Poly out;
  for (const auto& t : p.terms()) {
    Exp e{0, 0, 0, 0};
    for (int i = 0; i < p.nvars(); ++i) e[static_cast<std::size_t>(i)] = t.monomial[i];
    out[e] = t.coefficient;
  }
  return out;
}

Poly add(const Poly& a, const Poly& b, const Ring& r) {
  Poly out = a;
  for (const auto& [e, c] : b) {
    const Q v = r.norm(out[e] + c);
    if (v == 0) {
      out.erase(e);
    } else {
      out[e] = v;
    }
  }
  return out;
}

Poly scale(const Poly& a, const Q& s, const Ring& r) {
  Poly out;
  for (const auto& [e, c] : a) {
    const Q v = r.norm(c * s);
    if (v != 0) out[e] = v;
  }
  return out;
}

Poly mul(const Poly& a, const Poly& b, const Ring& r) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) out = add(out, Poly{{plus(ea, eb), r.norm(ca * cb)}}, r);
  }
  return out;
}

Poly diff(const Poly& a, int var, const Ring& r) {
  Poly out;
  for (const auto& [e, c] : a) {
    if (e[static_cast<std::size_t>(var)] == 0) continue;
    Exp d = e;
    d[static_cast<std::size_t>(var)] -= 1;
    out = add(out, Poly{{d, r.norm(c * e[static_cast<std::size_t>(var)])}}, r);
  }
  return out;
}

Q eval(const Poly& a, const std::vector<Q>& point, const Ring& r) {
  Q sum = 0;
  for (const auto& [e, c] : a) {
    Q v = c;
    for (std::size_t i = 0; i < 4; ++i) {
      if (e[i] == 0) continue;
      if (i >= point.size()) throw std::logic_error("point too short");
      for (int k = 0; k < e[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return r.norm(sum);
}

int degree(const Poly& a) {
  int d = -1;
  for (const auto& [e, c] : a) d = std::max(d, total(e));
  return d;
}

bool is_zero(const Poly& a) { return a.empty(); }

bool equal(const Poly& a, const Poly& b, const Ring& r) { return add(a, scale(b, Q(-1), r), r).empty(); }

std::vector<Exp> monomials(int nvars, int lo, int hi) {
  std::vector<Exp> out;
  if (hi < 0) return out;
  const int top3 = nvars > 3 ? hi : 0;
  const int top2 = nvars > 2 ? hi : 0;
  const int top1 = nvars > 1 ? hi : 0;
  for (int a = 0; a <= hi; ++a) {
    for (int b = 0; b <= top1; ++b) {
      for (int c = 0; c <= top2; ++c) {
        for (int w = 0; w <= top3; ++w) {
          const int t = a + b + c + w;
          if (t >= lo && t <= hi) out.push_back({a, b, c, w});
        }
      }
    }
  }
  return out;
}

Kernel nullspace(std::vector<Vec> rows, std::size_t ncols, const Ring& r) {
  const Echelon e = gauss_jordan(std::move(rows), ncols, r);
  Kernel k;
  k.rank = e.pivots.size();
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(ncols, Q(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = r.norm(-e.rows[i][f]);
    k.vectors.push_back(std::move(v));
  }
  return k;
}

std::size_t rank(std::vector<Vec> rows, std::size_t ncols, const Ring& r) {
  return gauss_jordan(std::move(rows), ncols, r).pivots.size();
}

Kernel adjoint(const picard::SurfaceModel& s, int m) {
  if (m < 0) return {};
  const Ring r = ring_of(s.field);
  const auto block = monomials(3, 0, m);
  std::vector<Vec> rows;
  adjoint_rows(s, block, 0, m, block.size(), rows, false);
  return nullspace(std::move(rows), block.size(), r);
}

std::vector<Solution> picard_basis(const picard::SurfaceModel& s) {
  const Ring r = ring_of(s.field);
  const Poly f = from(s.f);
  const std::array<Poly, 3> partials = {diff(f, 0, r), diff(f, 1, r), diff(f, 2, r)};
  const auto abc = monomials(3, 0, s.d - 2);
  const auto nmon = monomials(3, 0, s.d - 3);
  const std::size_t ncols = 3 * abc.size() + nmon.size();

  std::vector<Poly> columns;
  for (int i = 0; i < 3; ++i) {
    for (const auto& e : abc) columns.push_back(mul(monomial(e), partials[static_cast<std::size_t>(i)], r));
  }
  for (const auto& e : nmon) columns.push_back(scale(mul(monomial(e), f, r), Q(-1), r));
  std::vector<Vec> rows = rows_of(columns);
  for (int i = 0; i < 3; ++i) adjoint_rows(s, abc, static_cast<std::size_t>(i) * abc.size(), s.d - 2, ncols, rows, false);

  std::vector<Solution> out;
  for (const auto& v : nullspace(std::move(rows), ncols, r).vectors) {
    Solution sol;
    std::array<Poly*, 3> parts = {&sol.A, &sol.B, &sol.C};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < abc.size(); ++j) {
        const Q& c = v[i * abc.size() + j];
        if (c != 0) (*parts[i])[abc[j]] = c;
      }
    }
    for (std::size_t j = 0; j < nmon.size(); ++j) {
      const Q& c = v[3 * abc.size() + j];
      if (c != 0) sol.N[nmon[j]] = c;
    }
    out.push_back(std::move(sol));
  }
  return out;
}

Poly defect(const Solution& sol, const Ring& r) {
  Poly q = add(add(diff(sol.A, 0, r), diff(sol.B, 1, r), r), diff(sol.C, 2, r), r);
  return add(q, scale(sol.N, Q(-1), r), r);
}

Fiber fiber(const picard::SurfaceModel& s, const Poly& A) {
  const Ring r = ring_of(s.field);
  const Poly f = from(s.f);
  const Poly fx = diff(f, 0, r), fy = diff(f, 1, r), fz = diff(f, 2, r);
  const auto bc = monomials(3, 0, s.d - 2);
  const auto nmon = monomials(3, 0, s.d - 3);
  const std::size_t ncols = 2 * bc.size() + nmon.size();

  // the last column carries A f_x, so solutions have last coordinate -1
  std::vector<Poly> columns;
  for (const auto& e : bc) columns.push_back(mul(monomial(e), fy, r));
  for (const auto& e : bc) columns.push_back(mul(monomial(e), fz, r));
  for (const auto& e : nmon) columns.push_back(scale(mul(monomial(e), f, r), Q(-1), r));
  columns.push_back(mul(A, fx, r));
  std::vector<Vec> rows = rows_of(columns);
  adjoint_rows(s, bc, 0, s.d - 2, ncols + 1, rows, false);
  adjoint_rows(s, bc, bc.size(), s.d - 2, ncols + 1, rows, false);

  const Echelon e = gauss_jordan(rows, ncols + 1, r);
  Fiber out;
  const std::size_t rank_m = rank(rows, ncols, r);
  out.dim = ncols - rank_m;
  out.exists = e.pivots.size() == rank_m;
  if (!out.exists) return out;
  Vec v(ncols, Q(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = r.norm(-e.rows[i][ncols]);
  Solution sol;
  sol.A = A;
  for (std::size_t j = 0; j < bc.size(); ++j) {
    if (v[j] != 0) sol.B[bc[j]] = v[j];
    if (v[bc.size() + j] != 0) sol.C[bc[j]] = v[bc.size() + j];
  }
  for (std::size_t j = 0; j < nmon.size(); ++j) {
    if (v[2 * bc.size() + j] != 0) sol.N[nmon[j]] = v[2 * bc.size() + j];
  }
  out.particular = std::move(sol);
  return out;
}

std::pair<std::size_t, std::size_t> gral_dims(const picard::SurfaceModel& s) {
  if (s.d < 3) return {0, 0};
  const Ring r = ring_of(s.field);
  const Poly F = from(s.F);
  const auto ys = monomials(4, s.d - 3, s.d - 3);
  const auto qs = monomials(4, s.d - 4, s.d - 4);
  const std::size_t ncols = 4 * ys.size() + qs.size();
  std::vector<Poly> columns;
  for (int i = 0; i < 4; ++i) {
    const Poly Fi = diff(F, i, r);
    for (const auto& e : ys) columns.push_back(mul(monomial(e), Fi, r));
  }
  for (const auto& e : qs) columns.push_back(scale(mul(monomial(e), F, r), Q(-1), r));
  std::vector<Vec> rows = rows_of(columns);
  for (std::size_t i = 0; i < 4; ++i) adjoint_rows(s, ys, i * ys.size(), s.d - 3, ncols, rows, true);
  const std::size_t space = nullspace(std::move(rows), ncols, r).vectors.size();
  const std::size_t trivial = s.d >= 4 ? adjoint(s, s.d - 4).vectors.size() : 0;
  return {space, trivial};
}

std::size_t syzygy_dim(const picard::Polynomial& g, int l) {
  const Ring r = ring_of(g.field());
  const Poly G = from(g);
  const auto forms = monomials(3, l, l);
  std::vector<Poly> columns;
  for (int i = 0; i < 3; ++i) {
    const Poly Gi = diff(G, i, r);
    for (const auto& e : forms) columns.push_back(mul(monomial(e), Gi, r));
  }
  return nullspace(rows_of(columns), columns.size(), r).vectors.size();
}

std::size_t quotient_dim_mod_p(const std::vector<picard::Polynomial>& gens, int bound, std::uint64_t p) {
  const auto cols = monomials(3, 0, bound);
  std::map<Exp, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;
  std::vector<std::vector<u64>> rows;
  for (const auto& g : gens) {
    const auto terms = mod_terms(from(g), p);
    const int e = degree(from(g));
    for (const auto& m : monomials(3, 0, bound - e)) {
      std::vector<u64> row(cols.size(), 0);
      for (const auto& t : terms) row[index.at(plus(t.e, m))] = t.c;
      rows.push_back(std::move(row));
    }
  }
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols.size() && rk < rows.size(); ++c) {
    std::size_t pick = rk;
    while (pick < rows.size() && rows[pick][c] == 0) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[rk], rows[pick]);
    const u64 inv = powmod(rows[rk][c], p - 2, p);
    for (auto& v : rows[rk]) v = mulmod(v, inv, p);
    for (std::size_t i = rk + 1; i < rows.size(); ++i) {
      const u64 factor = rows[i][c];
      if (!factor) continue;
      for (std::size_t k = c; k < cols.size(); ++k) rows[i][k] = (rows[i][k] + p - mulmod(factor, rows[rk][k], p)) % p;
    }
    ++rk;
  }
  return cols.size() - rk;
}

PointCount count_points_mod_p(const std::vector<picard::Polynomial>& gens, std::uint64_t p) {
  const Ring r{p};
  std::vector<std::vector<ModTerm>> g;
  std::vector<std::vector<ModTerm>> jac;
  for (const auto& poly : gens) {
    const Poly P = from(poly);
    g.push_back(mod_terms(P, p));
    for (int v = 0; v < 3; ++v) jac.push_back(mod_terms(diff(P, v, r), p));
  }
  PointCount out;
  for (u64 x = 0; x < p; ++x) {
    for (u64 y = 0; y < p; ++y) {
      for (u64 z = 0; z < p; ++z) {
        const std::array<u64, 3> pt = {x, y, z};
        bool zero = true;
        for (const auto& t : g) {
          if (mod_eval(t, pt, p) != 0) {
            zero = false;
            break;
          }
        }
        if (!zero) continue;
        ++out.points;
        std::array<std::array<u64, 3>, 3> m;
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) m[i][j] = mod_eval(jac[static_cast<std::size_t>(3 * i + j)], pt, p);
        }
        const auto term = [&](int a, int b, int c) { return mulmod(mulmod(m[0][a], m[1][b], p), m[2][c], p); };
        const u64 det = (term(0, 1, 2) + term(1, 2, 0) + term(2, 0, 1) + 3 * p - term(0, 2, 1) - term(1, 0, 2) -
                         term(2, 1, 0)) % p;
        if (det != 0) ++out.simple;
      }
    }
  }
  return out;
}

}  // namespace oracle
