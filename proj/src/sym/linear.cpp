#include "sym/linear.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sym/errors.hpp"
#include "sym/expr_io.hpp"

namespace qhl::sym {

namespace {

struct MonoGreater {
  bool operator()(const Mono& a, const Mono& b) const { return mono_cmp(a, b) > 0; }
};

bool poly_has_unknown(const Poly& p, const VarSet& vs) {
  for (const auto& t : p.terms())
    for (std::size_t s = 0; s < t.m.e.size(); ++s)
      if (t.m.e[s] != 0 && vs.kind(static_cast<int>(s)) == SymbolKind::Unknown) return true;
  return false;
}

}  // namespace

void append_coefficient_rows(LinearSystem& sys, const Expr& e,
                             const std::string& entry_provenance) {
  const VarSet& vs = *sys.vs;
  if (poly_has_unknown(e.den(), vs))
    fail(Errc::NonlinearSystem, "denominator involves an unknown coefficient");

  std::set<int> unknown_set(sys.unknown_ids.begin(), sys.unknown_ids.end());
  const std::size_t ncols = sys.unknown_ids.size();
  std::map<int, std::size_t> column_of;
  for (std::size_t c = 0; c < ncols; ++c) column_of[sys.unknown_ids[c]] = c;

  // key: monomial restricted to coordinates and generators
  struct RowAcc {
    std::vector<std::vector<Term>> a;
    std::vector<Term> rhs;
  };
  std::map<Mono, RowAcc, MonoGreater> acc;

  for (const auto& t : e.num().terms()) {
    Mono key, param;
    key.e.assign(vs.size(), 0);
    param.e.assign(vs.size(), 0);
    int unknown_id = -1;
    int32_t udeg = 0;
    for (std::size_t s = 0; s < t.m.e.size(); ++s) {
      if (t.m.e[s] == 0) continue;
      switch (vs.kind(static_cast<int>(s))) {
        case SymbolKind::Coordinate:
        case SymbolKind::ExpGenerator: key.e[s] = t.m.e[s]; break;
        case SymbolKind::Parameter: param.e[s] = t.m.e[s]; break;
        case SymbolKind::Unknown:
          if (!unknown_set.count(static_cast<int>(s))) {
            param.e[s] = t.m.e[s];  // an unlisted unknown is a scalar here
            break;
          }
          udeg += t.m.e[s];
          unknown_id = static_cast<int>(s);
          break;
      }
    }
    if (udeg > 1)
      fail(Errc::NonlinearSystem,
           "unknown coefficients occur nonlinearly in \"" + to_string(e) + "\"");

    auto& row = acc[key];
    if (row.a.empty()) row.a.resize(ncols);
    if (unknown_id < 0) {
      row.rhs.push_back(Term{param, t.c});
    } else {
      row.a[column_of[unknown_id]].push_back(Term{param, t.c});
    }
  }

  for (auto& [key, row] : acc) {
    LinRow out;
    out.a.reserve(ncols);
    for (auto& col : row.a) out.a.push_back(Poly::from_terms(&vs, std::move(col)));
    out.rhs = Poly::from_terms(&vs, std::move(row.rhs));
    out.entry_provenance = entry_provenance;
    out.monomial_provenance = key.is_one() ? "1" : to_string(Poly::from_terms(&vs, {Term{key, 1}}));
    sys.rows.push_back(std::move(out));
  }
}

LinearSystem coefficient_system(const Expr& e, const std::vector<int>& unknowns,
                                const std::string& entry_provenance) {
  LinearSystem sys;
  sys.vs = e.varset();
  sys.unknown_ids = unknowns;
  for (int id : unknowns) {
    if (id < 0 || static_cast<std::size_t>(id) >= sys.vs->size())
      fail(Errc::UnknownVariable, "unknown id out of range");
  }
  append_coefficient_rows(sys, e, entry_provenance);
  return sys;
}

std::vector<Poly> split_vanishing_conditions(const Poly& p) {
  std::vector<Poly> out;
  if (p.is_zero() || p.is_constant()) return out;
  const VarSet* vs = p.varset();
  Poly q = squarefree_part(p);
  // strip symbol factors dividing every term
  for (std::size_t s = 0; s < vs->size(); ++s) {
    int id = static_cast<int>(s);
    int32_t minexp = q.is_zero() ? 0 : q.terms()[0].m.e[s];
    for (const auto& t : q.terms()) minexp = std::min(minexp, t.m.e[s]);
    if (minexp > 0) {
      if (vs->kind(id) != SymbolKind::ExpGenerator) out.push_back(Poly::symbol(vs, id));
      q = divexact(q, Poly::symbol(vs, id, minexp));
    }
  }
  if (!q.is_constant()) out.push_back(primitive_part(q));
  return out;
}

namespace {

struct Elimination {
  std::vector<std::vector<Poly>> m;
  std::vector<int> pivot_cols;  // per pivot index, the column
  std::vector<Poly> pivots;
  int rank = 0;
};

// Deterministic pivot preference: fewer terms, then smaller leading
// monomial, then lower row index.
bool better_pivot(const Poly& a, const Poly& b) {
  if (a.terms().size() != b.terms().size()) return a.terms().size() < b.terms().size();
  return mono_cmp(a.leading().m, b.leading().m) < 0;
}

Elimination fraction_free_forward(std::vector<std::vector<Poly>> m, const VarSet* vs) {
  Elimination el;
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows ? m[0].size() : 0;
  Poly prev = Poly::constant(vs, 1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
    std::size_t best = nrows;
    for (std::size_t i = r; i < nrows; ++i) {
      if (m[i][col].is_zero()) continue;
      if (best == nrows || better_pivot(m[i][col], m[best][col])) best = i;
    }
    if (best == nrows) continue;
    std::swap(m[r], m[best]);
    const Poly piv = m[r][col];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = col + 1; j < ncols; ++j) {
        m[i][j] = divexact(m[i][j] * piv - m[i][col] * m[r][j], prev);
      }
      m[i][col] = Poly::zero(vs);
    }
    el.pivot_cols.push_back(static_cast<int>(col));
    el.pivots.push_back(piv);
    prev = piv;
    ++r;
  }
  el.rank = static_cast<int>(r);
  el.m = std::move(m);
  return el;
}

std::vector<Poly> collect_conditions(const std::vector<Poly>& pivots) {
  std::vector<Poly> out;
  std::set<std::string> seen;
  for (const auto& p : pivots) {
    for (const auto& c : split_vanishing_conditions(p)) {
      std::string s = to_string(c);
      if (seen.insert(s).second) out.push_back(c);
    }
  }
  return out;
}

}  // namespace

NullspaceResult nullspace(const LinearSystem& sys) {
  const VarSet* vs = sys.vs.get();
  for (const auto& row : sys.rows)
    if (!row.rhs.is_zero())
      fail(Errc::Internal, "nullspace of an inhomogeneous system");

  const std::size_t ncols = sys.unknown_ids.size();
  std::vector<std::vector<Poly>> m;
  m.reserve(sys.rows.size());
  for (const auto& row : sys.rows) m.push_back(row.a);

  Elimination el = fraction_free_forward(std::move(m), vs);

  NullspaceResult res;
  res.rank = el.rank;
  res.pivot_conditions = collect_conditions(el.pivots);

  std::vector<bool> is_pivot(ncols, false);
  for (int c : el.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Expr> v(ncols, Expr::zero(sys.vs));
    v[f] = Expr::constant(sys.vs, 1);
    for (int k = el.rank - 1; k >= 0; --k) {
      const std::size_t pc = static_cast<std::size_t>(el.pivot_cols[static_cast<std::size_t>(k)]);
      Expr s = Expr::zero(sys.vs);
      for (std::size_t j = pc + 1; j < ncols; ++j) {
        if (el.m[static_cast<std::size_t>(k)][j].is_zero() || v[j].is_zero()) continue;
        s = s + Expr::from_poly(sys.vs, el.m[static_cast<std::size_t>(k)][j]) * v[j];
      }
      if (!s.is_zero()) {
        v[pc] = -s / Expr::from_poly(sys.vs, el.m[static_cast<std::size_t>(k)][pc]);
      }
    }
    res.basis.push_back(std::move(v));
  }
  return res;
}

RankResult exact_rank(const VarSetPtr& vs, const std::vector<std::vector<Expr>>& m) {
  RankResult res;
  std::set<std::string> seen;
  std::vector<std::vector<Poly>> pm;
  pm.reserve(m.size());
  for (const auto& row : m) {
    // clear denominators; they are nonzero polynomials by construction
    Poly common = Poly::constant(vs.get(), 1);
    for (const auto& e : row)
      if (!e.den().is_constant()) common = common * e.den();
    for (const auto& e : row) {
      if (!e.den().is_constant()) {
        for (const auto& c : split_vanishing_conditions(e.den()))
          if (seen.insert(to_string(c)).second) res.conditions.push_back(c);
      }
    }
    std::vector<Poly> prow;
    for (const auto& e : row) prow.push_back(e.num() * divexact(common, e.den()));
    pm.push_back(std::move(prow));
  }
  Elimination el = fraction_free_forward(std::move(pm), vs.get());
  res.rank = el.rank;
  for (const auto& c : collect_conditions(el.pivots))
    if (seen.insert(to_string(c)).second) res.conditions.push_back(c);
  return res;
}

std::optional<std::vector<Expr>> linear_solve(const VarSetPtr& vs,
                                              std::vector<std::vector<Expr>> a,
                                              std::vector<Expr> b) {
  const std::size_t nrows = a.size();
  const std::size_t ncols = nrows ? a[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
    std::size_t sel = nrows;
    for (std::size_t i = r; i < nrows; ++i)
      if (!a[i][col].is_zero()) {
        sel = i;
        break;
      }
    if (sel == nrows) fail(Errc::Internal, "linear_solve requires full column rank");
    std::swap(a[r], a[sel]);
    std::swap(b[r], b[sel]);
    Expr inv = Expr::constant(vs, 1) / a[r][col];
    for (std::size_t j = col; j < ncols; ++j) a[r][j] = a[r][j] * inv;
    b[r] = b[r] * inv;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r || a[i][col].is_zero()) continue;
      Expr f = a[i][col];
      for (std::size_t j = col; j < ncols; ++j) a[i][j] = a[i][j] - f * a[r][j];
      b[i] = b[i] - f * b[r];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++r;
  }
  for (std::size_t i = r; i < nrows; ++i)
    if (!b[i].is_zero()) return std::nullopt;  // inconsistent
  std::vector<Expr> x(ncols, Expr::zero(vs));
  for (std::size_t k = 0; k < r; ++k) x[static_cast<std::size_t>(pivot_col[k])] = b[k];
  return x;
}

int QMatrix::rref() {
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
    std::size_t sel = rows_;
    for (std::size_t i = r; i < rows_; ++i)
      if (at(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel == rows_) continue;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(r, j), at(sel, j));
    Rational inv = Rational(1) / at(r, col);
    for (std::size_t j = col; j < cols_; ++j) at(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, col) == 0) continue;
      Rational f = at(i, col);
      for (std::size_t j = col; j < cols_; ++j) at(i, j) -= f * at(r, j);
    }
    ++r;
  }
  return static_cast<int>(r);
}

int QMatrix::rank() const {
  QMatrix copy = *this;
  return copy.rref();
}

std::vector<std::vector<Rational>> QMatrix::nullspace() const {
  QMatrix m = *this;
  m.rref();
  std::vector<int> pivot_of_col(cols_, -1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
    if (m.at(r, col) != 0) {
      pivot_of_col[col] = static_cast<int>(r);
      ++r;
    }
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<Rational> v(cols_, 0);
    v[f] = 1;
    for (std::size_t col = 0; col < cols_; ++col)
      if (pivot_of_col[col] >= 0)
        v[col] = -m.at(static_cast<std::size_t>(pivot_of_col[col]), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::array<int, 3> symmetric_inertia(QMatrix s) {
  const std::size_t n = s.rows();
  if (s.cols() != n) fail(Errc::Internal, "inertia of a non-square matrix");
  int pos = 0, neg = 0, zero = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (s.at(k, k) == 0) {
      std::size_t diag = n;
      for (std::size_t l = k + 1; l < n; ++l)
        if (s.at(l, l) != 0) {
          diag = l;
          break;
        }
      if (diag < n) {
        for (std::size_t j = 0; j < n; ++j) std::swap(s.at(k, j), s.at(diag, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(s.at(i, k), s.at(i, diag));
      } else {
        std::size_t off = n;
        for (std::size_t l = k + 1; l < n; ++l)
          if (s.at(k, l) != 0) {
            off = l;
            break;
          }
        if (off == n) {
          ++zero;
          continue;
        }
        // congruence: add row/col 'off' into k, making s(k,k) = 2 s(k,off)
        for (std::size_t j = 0; j < n; ++j) s.at(k, j) += s.at(off, j);
        for (std::size_t i = 0; i < n; ++i) s.at(i, k) += s.at(i, off);
      }
    }
    Rational piv = s.at(k, k);
    if (piv == 0) {
      ++zero;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (s.at(i, k) == 0) continue;
      Rational f = s.at(i, k) / piv;
      for (std::size_t j = 0; j < n; ++j) s.at(i, j) -= f * s.at(k, j);
      for (std::size_t j = 0; j < n; ++j) s.at(j, i) -= f * s.at(j, k);
    }
    if (piv > 0)
      ++pos;
    else
      ++neg;
  }
  return {pos, neg, zero};
}

}  // namespace qhl::sym
