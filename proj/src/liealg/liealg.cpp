#include "liealg/liealg.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sym/errors.hpp"
#include "sym/expr_io.hpp"

namespace qhl::liealg {

using sym::Mono;
using sym::Poly;
using sym::SymbolKind;
using sym::Term;

VectorField bracket(const VectorField& a, const VectorField& b) {
  const VarSetPtr& vs = a.varset();
  VectorField bb = (b.varset().get() == vs.get()) ? b : b.converted(vs);
  auto coords = vs->ids_of_kind(SymbolKind::Coordinate);
  if (coords.size() != 3) qhl::fail(qhl::Errc::Unsupported, "bracket needs exactly 3 coordinates");
  VectorField out{{Expr::zero(vs), Expr::zero(vs), Expr::zero(vs)}};
  for (int m = 0; m < 3; ++m) {
    Expr acc = Expr::zero(vs);
    for (int i = 0; i < 3; ++i) {
      acc = acc +
            a.comp[static_cast<std::size_t>(i)] *
                bb.comp[static_cast<std::size_t>(m)].derivative(coords[static_cast<std::size_t>(i)]) -
            bb.comp[static_cast<std::size_t>(i)] *
                a.comp[static_cast<std::size_t>(m)].derivative(coords[static_cast<std::size_t>(i)]);
    }
    out.comp[static_cast<std::size_t>(m)] = acc;
  }
  return out;
}

namespace {

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const { return sym::mono_cmp(a, b) < 0; }
};

// Splits a field into coefficient expressions indexed by
// (component, coordinate/generator monomial); coefficients live in the
// parameter subfield. Requires denominators free of coordinates.
using CoeffKey = std::pair<int, Mono>;
struct CoeffKeyLess {
  bool operator()(const CoeffKey& a, const CoeffKey& b) const {
    if (a.first != b.first) return a.first < b.first;
    return sym::mono_cmp(a.second, b.second) < 0;
  }
};
using CoeffMap = std::map<CoeffKey, Expr, CoeffKeyLess>;

CoeffMap field_coefficients(const VectorField& f) {
  const VarSetPtr& vs = f.varset();
  CoeffMap out;
  for (int c = 0; c < 3; ++c) {
    const Expr& e = f.comp[static_cast<std::size_t>(c)];
    for (std::size_t s = 0; s < vs->size(); ++s) {
      int id = static_cast<int>(s);
      if (vs->kind(id) == SymbolKind::Parameter) continue;
      if (e.den().depends_on(id))
        qhl::fail(qhl::Errc::Unsupported,
                  "field component has a coordinate-dependent denominator: " + sym::to_string(e));
    }
    Expr inv_den = Expr::constant(vs, 1) / Expr::from_poly(vs, e.den());
    std::map<Mono, std::vector<Term>, MonoLess> groups;
    for (const auto& t : e.num().terms()) {
      Mono key, param;
      key.e.assign(vs->size(), 0);
      param.e.assign(vs->size(), 0);
      for (std::size_t s = 0; s < t.m.e.size(); ++s) {
        if (t.m.e[s] == 0) continue;
        if (vs->kind(static_cast<int>(s)) == SymbolKind::Parameter)
          param.e[s] = t.m.e[s];
        else
          key.e[s] = t.m.e[s];
      }
      groups[key].push_back(Term{param, t.c});
    }
    for (auto& [key, terms] : groups) {
      Expr coeff = Expr::from_poly(vs, Poly::from_terms(vs.get(), std::move(terms))) * inv_den;
      if (!coeff.is_zero()) out[{c, key}] = coeff;
    }
  }
  return out;
}

// Shared key index across several fields.
std::vector<CoeffKey> union_keys(const std::vector<CoeffMap>& maps) {
  std::set<CoeffKey, CoeffKeyLess> keys;
  for (const auto& m : maps)
    for (const auto& [k, v] : m) keys.insert(k);
  return {keys.begin(), keys.end()};
}

}  // namespace

std::optional<std::vector<Expr>> span_coordinates(const std::vector<VectorField>& basis,
                                                  const VectorField& f) {
  if (basis.empty()) {
    if (f.is_zero()) return std::vector<Expr>{};
    return std::nullopt;
  }
  const VarSetPtr& vs = basis[0].varset();
  std::vector<CoeffMap> maps;
  for (const auto& b : basis) maps.push_back(field_coefficients(b));
  maps.push_back(field_coefficients(f.converted(vs)));
  auto keys = union_keys(maps);

  std::vector<std::vector<Expr>> a(keys.size(), std::vector<Expr>(basis.size(), Expr::zero(vs)));
  std::vector<Expr> rhs(keys.size(), Expr::zero(vs));
  for (std::size_t r = 0; r < keys.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) {
      auto it = maps[c].find(keys[r]);
      if (it != maps[c].end()) a[r][c] = it->second;
    }
    auto it = maps.back().find(keys[r]);
    if (it != maps.back().end()) rhs[r] = it->second;
  }
  return sym::linear_solve(vs, std::move(a), std::move(rhs));
}

bool span_contains(const std::vector<VectorField>& basis, const VectorField& f) {
  return span_coordinates(basis, f).has_value();
}

bool spans_equal(const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
  for (const auto& f : b)
    if (!span_contains(a, f)) return false;
  for (const auto& f : a)
    if (!span_contains(b, f)) return false;
  return true;
}

VectorFieldAlgebra make_algebra(const VarSetPtr& vs, std::vector<VectorField> basis) {
  VectorFieldAlgebra a;
  a.vs = vs;
  for (auto& f : basis) a.basis.push_back(f.converted(vs));
  if (!a.basis.empty()) {
    std::vector<CoeffMap> maps;
    for (const auto& f : a.basis) maps.push_back(field_coefficients(f));
    auto keys = union_keys(maps);
    std::vector<std::vector<Expr>> m(keys.size(),
                                     std::vector<Expr>(a.basis.size(), Expr::zero(vs)));
    for (std::size_t r = 0; r < keys.size(); ++r)
      for (std::size_t c = 0; c < a.basis.size(); ++c) {
        auto it = maps[c].find(keys[r]);
        if (it != maps[c].end()) m[r][c] = it->second;
      }
    if (sym::exact_rank(vs, m).rank != static_cast<int>(a.basis.size()))
      qhl::fail(qhl::Errc::InvalidArgument, "algebra basis is linearly dependent over constants");
  }
  return a;
}

StructureConstants::StructureConstants(std::size_t n, const VarSetPtr& vs)
    : n_(n), c_(n * n * n, Expr::zero(vs)) {}

bool StructureConstants::all_rational() const {
  for (const auto& e : c_)
    if (!e.is_rational()) return false;
  return true;
}

Rational StructureConstants::rat(std::size_t k, std::size_t i, std::size_t j) const {
  return at(k, i, j).rational_value();
}

StructureConstants structure_constants(const VectorFieldAlgebra& a) {
  const VarSetPtr& vs = a.vs;
  const std::size_t n = a.dim();
  StructureConstants sc(n, vs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      VectorField br = bracket(a.basis[i], a.basis[j]);
      auto coords = span_coordinates(a.basis, br);
      if (!coords)
        qhl::fail(qhl::Errc::NotAnAlgebra,
                  "bracket of basis fields " + std::to_string(i + 1) + "," +
                      std::to_string(j + 1) + " lies outside the span; residual (" +
                      sym::to_string(br.comp[0]) + ", " + sym::to_string(br.comp[1]) + ", " +
                      sym::to_string(br.comp[2]) + ")");
      for (std::size_t k = 0; k < n; ++k) {
        sc.at(k, i, j) = (*coords)[k];
        sc.at(k, j, i) = -(*coords)[k];
      }
    }
  }
  // Jacobi identity on the constants
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Expr s = Expr::zero(vs);
          for (std::size_t m = 0; m < n; ++m) {
            s = s + sc.at(m, i, j) * sc.at(l, m, k) + sc.at(m, j, k) * sc.at(l, m, i) +
                sc.at(m, k, i) * sc.at(l, m, j);
          }
          if (!s.is_zero())
            qhl::fail(qhl::Errc::Internal, "structure constants violate the Jacobi identity");
        }
  return sc;
}

namespace {

// Bracket of coordinate vectors through the structure constants.
std::vector<Rational> bracket_coords(const StructureConstants& sc, const std::vector<Rational>& u,
                                     const std::vector<Rational>& v) {
  const std::size_t n = sc.dim();
  std::vector<Rational> w(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (v[j] == 0) continue;
        Rational c = sc.rat(k, i, j);
        if (c != 0) w[k] += u[i] * v[j] * c;
      }
    }
  return w;
}

std::vector<std::vector<Rational>> row_space_basis(const std::vector<std::vector<Rational>>& rows,
                                                   std::size_t n) {
  QMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  int rank = m.rref();
  std::vector<std::vector<Rational>> basis;
  for (int r = 0; r < rank; ++r) {
    std::vector<Rational> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = m.at(static_cast<std::size_t>(r), j);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

AlgebraFingerprint fingerprint(const StructureConstants& sc) {
  if (!sc.all_rational())
    qhl::fail(qhl::Errc::Unsupported,
              "fingerprint requires rational structure constants; specialize the parameters");
  const std::size_t n = sc.dim();
  AlgebraFingerprint fp;
  fp.dim = static_cast<int>(n);

  // derived series
  std::vector<std::vector<Rational>> current;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n, 0);
    e[i] = 1;
    current.push_back(std::move(e));
  }
  fp.derived_dims.push_back(static_cast<int>(n));
  while (true) {
    std::vector<std::vector<Rational>> brackets;
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j)
        brackets.push_back(bracket_coords(sc, current[i], current[j]));
    auto next = row_space_basis(brackets, n);
    int d = static_cast<int>(next.size());
    int prev = fp.derived_dims.back();
    fp.derived_dims.push_back(d);
    current = std::move(next);
    if (d == 0 || d == prev) break;
  }

  // center: [v, e_j] = 0 for all j
  QMatrix cm(n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) cm.at(j * n + k, i) = sc.rat(k, i, j);
  fp.center_dim = static_cast<int>(n) - cm.rank();

  // Killing form B_ij = sum_ab c^a_ib c^b_ja
  QMatrix killing(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s += sc.rat(a, i, b) * sc.rat(b, j, a);
      killing.at(i, j) = s;
    }
  fp.killing_signature = sym::symmetric_inertia(std::move(killing));

  fp.unimodular = true;
  for (std::size_t i = 0; i < n && fp.unimodular; ++i) {
    Rational tr = 0;
    for (std::size_t a = 0; a < n; ++a) tr += sc.rat(a, i, a);
    if (tr != 0) fp.unimodular = false;
  }
  return fp;
}

AlgebraFingerprint fingerprint(const VectorFieldAlgebra& a) {
  return fingerprint(structure_constants(a));
}

std::string classify_algebra(const AlgebraFingerprint& fp) {
  const auto& d = fp.derived_dims;
  if (d.size() >= 2 && d[1] == 0) return "abelian";
  if (fp.dim == 3) {
    if (fp.solvable() && d == std::vector<int>{3, 1, 0} && fp.center_dim == 1)
      return fp.unimodular ? "heisenberg" : "R+aff(R)";
    if (!fp.solvable() && d.size() >= 2 && d[1] == 3) {
      if (fp.killing_signature == std::array<int, 3>{2, 1, 0}) return "sl(2,R)";
      if (fp.killing_signature == std::array<int, 3>{0, 3, 0}) return "so(3)";
    }
    return "unresolved";
  }
  if (fp.dim == 4) {
    if (d == std::vector<int>{4, 3, 3} && fp.center_dim == 1 &&
        fp.killing_signature == std::array<int, 3>{2, 1, 1})
      return "R+sl(2,R)";
    if (fp.solvable()) return "solvable-dim-4";
    return "unresolved";
  }
  if (fp.dim == 6) {
    if (d == std::vector<int>{6, 6} && fp.center_dim == 0 && fp.unimodular &&
        fp.killing_signature == std::array<int, 3>{2, 1, 3})
      return "flat-lorentz-dim-6";
    return "unresolved";
  }
  return "unresolved";
}

namespace {
Expr evaluate_expr_at(const Expr& e, const Point& p) {
  const VarSetPtr& vs = e.varset();
  auto coords = vs->ids_of_kind(SymbolKind::Coordinate);
  std::map<std::string, Expr> bind;
  for (std::size_t i = 0; i < 3; ++i)
    bind[vs->name(coords[i])] = Expr::constant(vs, p[i]);
  return e.substituted(bind);
}
}  // namespace

std::array<Expr, 3> evaluate_field_at(const VectorField& f, const Point& p) {
  return {evaluate_expr_at(f.comp[0], p), evaluate_expr_at(f.comp[1], p),
          evaluate_expr_at(f.comp[2], p)};
}

int evaluation_rank_at(const VectorFieldAlgebra& a, const Point& p) {
  std::vector<std::vector<Expr>> rows;
  VarSetPtr vs;
  for (const auto& f : a.basis) {
    auto v = evaluate_field_at(f, p);
    vs = v[0].varset();
    rows.push_back({v[0], v[1], v[2]});
  }
  if (rows.empty()) return 0;
  return sym::exact_rank(vs, rows).rank;
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  sym::Integer num = boost::multiprecision::sqrt(numerator(r));
  sym::Integer den = boost::multiprecision::sqrt(denominator(r));
  if (num * num != numerator(r) || den * den != denominator(r)) return std::nullopt;
  return Rational(num) / Rational(den);
}

std::optional<Poly> poly_sqrt(const Poly& p) {
  if (p.is_zero()) return p;
  if (p.is_constant()) {
    auto r = rational_sqrt(p.constant_value());
    if (!r) return std::nullopt;
    return Poly::constant(p.varset(), *r);
  }
  const Term& lt = p.leading();
  Mono half = lt.m;
  for (auto& e : half.e) {
    if (e % 2 != 0) return std::nullopt;
    e /= 2;
  }
  auto lc = rational_sqrt(lt.c);
  if (!lc) return std::nullopt;
  Poly q = Poly::from_terms(p.varset(), {Term{half, *lc}});
  // descend on the remainder, peeling one leading term of the root at a time
  for (int guard = 0; guard < 10000; ++guard) {
    Poly r = p - q * q;
    if (r.is_zero()) return q;
    const Term& lr = r.leading();
    Mono m = lr.m;
    const Mono& lq = q.leading().m;
    if (!sym::mono_divides(lq, m)) return std::nullopt;
    Term t{sym::mono_quot(m, lq), lr.c / (2 * q.leading().c)};
    Poly inc = Poly::from_terms(p.varset(), {t});
    if (inc.is_zero()) return std::nullopt;
    q = q + inc;
  }
  return std::nullopt;
}

std::optional<Expr> expr_sqrt(const Expr& e) {
  auto n = poly_sqrt(e.num());
  if (!n) return std::nullopt;
  auto d = poly_sqrt(e.den());
  if (!d) return std::nullopt;
  return Expr::fraction(e.varset(), *n, *d);
}

}  // namespace

Expr volume_function(const VectorFieldAlgebra& a, const Metric3& g) {
  if (a.dim() != 3)
    qhl::fail(qhl::Errc::InvalidArgument, "volume function needs exactly three basis fields");
  const VarSetPtr& vs = g.varset();
  geom::Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          a.basis[static_cast<std::size_t>(i)].comp[static_cast<std::size_t>(j)].converted(vs);
  Expr det_fields = geom::det3(m);

  // density = sqrt(|det g|); try det and -det as exact squares
  std::optional<Expr> density = expr_sqrt(g.det());
  if (!density) density = expr_sqrt(-g.det());
  if (!density)
    qhl::fail(qhl::Errc::IrrationalDensity,
              "|det g| is not the square of a rational function: " + sym::to_string(g.det()));
  return det_fields * (*density);
}

const char* isotropy_type_name(IsotropyType t) {
  switch (t) {
    case IsotropyType::Trivial: return "trivial";
    case IsotropyType::SemiSimpleReal: return "semi-simple-real";
    case IsotropyType::Unipotent: return "unipotent";
    case IsotropyType::Elliptic: return "elliptic";
    case IsotropyType::HigherDimensional: return "higher-dimensional";
    case IsotropyType::Unresolved: return "unresolved";
  }
  return "unresolved";
}

IsotropyReport isotropy_at(const VectorFieldAlgebra& a, const Point& p) {
  IsotropyReport rep;
  rep.point = p;
  const std::size_t n = a.dim();

  QMatrix ev(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = evaluate_field_at(a.basis[i], p);
    for (std::size_t j = 0; j < 3; ++j) {
      if (!v[j].is_rational())
        qhl::fail(qhl::Errc::Unsupported,
                  "isotropy analysis needs rational field values at the point");
      ev.at(i, j) = v[j].rational_value();
    }
  }
  // kernel of the evaluation map: coefficients c with sum c_i basis_i (p) = 0
  QMatrix evt(3, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < 3; ++j) evt.at(j, i) = ev.at(i, j);
  auto kernel = evt.nullspace();

  const VarSetPtr& vs = a.vs;
  for (const auto& coeffs : kernel) {
    VectorField f{{Expr::zero(vs), Expr::zero(vs), Expr::zero(vs)}};
    for (std::size_t i = 0; i < n; ++i) {
      if (coeffs[i] == 0) continue;
      Expr c = Expr::constant(vs, coeffs[i]);
      for (std::size_t m = 0; m < 3; ++m) f.comp[m] = f.comp[m] + c * a.basis[i].comp[m];
    }
    rep.isotropy_basis.push_back(std::move(f));
  }

  if (rep.isotropy_basis.empty()) {
    rep.type = IsotropyType::Trivial;
    return rep;
  }
  if (rep.isotropy_basis.size() > 1) {
    rep.type = IsotropyType::HigherDimensional;
    return rep;
  }

  // linearize the generator at its zero
  const VectorField& k = rep.isotropy_basis[0];
  auto coords = vs->ids_of_kind(SymbolKind::Coordinate);
  QMatrix jac(3, 3);
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t j = 0; j < 3; ++j) {
      Expr v = evaluate_expr_at(k.comp[m].derivative(coords[j]), p);
      if (!v.is_rational())
        qhl::fail(qhl::Errc::Unsupported, "isotropy linearization is not rational at the point");
      jac.at(m, j) = v.rational_value();
    }
  rep.linearization = jac;
  rep.has_linearization = true;

  // characteristic polynomial x^3 - c1 x^2 + c2 x - c3
  Rational c1 = jac.at(0, 0) + jac.at(1, 1) + jac.at(2, 2);
  Rational c2 = jac.at(0, 0) * jac.at(1, 1) - jac.at(0, 1) * jac.at(1, 0) +
                jac.at(0, 0) * jac.at(2, 2) - jac.at(0, 2) * jac.at(2, 0) +
                jac.at(1, 1) * jac.at(2, 2) - jac.at(1, 2) * jac.at(2, 1);
  Rational c3 = jac.at(0, 0) * (jac.at(1, 1) * jac.at(2, 2) - jac.at(1, 2) * jac.at(2, 1)) -
                jac.at(0, 1) * (jac.at(1, 0) * jac.at(2, 2) - jac.at(1, 2) * jac.at(2, 0)) +
                jac.at(0, 2) * (jac.at(1, 0) * jac.at(2, 1) - jac.at(1, 1) * jac.at(2, 0));

  if (c1 == 0 && c2 == 0 && c3 == 0) {
    rep.type = IsotropyType::Unipotent;
    return rep;
  }
  if (c3 == 0) {
    // x (x^2 - c1 x + c2): the nonzero eigenvalue pair decides the type
    Rational disc = c1 * c1 - 4 * c2;
    if (disc > 0 && c2 != 0) {
      rep.type = IsotropyType::SemiSimpleReal;
    } else if (disc < 0) {
      rep.type = IsotropyType::Elliptic;
    } else {
      rep.type = IsotropyType::Unresolved;
    }
    return rep;
  }
  rep.type = IsotropyType::Unresolved;
  return rep;
}

}  // namespace qhl::liealg
