#include "geom/geometry.hpp"

#include <algorithm>
#include <set>

#include "sym/errors.hpp"
#include "sym/expr_io.hpp"
#include "sym/linear.hpp"

namespace qhl::geom {

using sym::Mono;
using sym::QMatrix;
using sym::Term;

namespace {

std::array<int, 3> coordinate_ids(const VarSetPtr& vs) {
  auto ids = vs->ids_of_kind(sym::SymbolKind::Coordinate);
  if (ids.size() != 3)
    qhl::fail(qhl::Errc::Unsupported, "geometry operations need exactly 3 coordinates");
  return {ids[0], ids[1], ids[2]};
}

}  // namespace

Expr det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Metric3 Metric3::from_entries(const VarSetPtr& vs, const Mat3& g) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
          g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        qhl::fail(qhl::Errc::InvalidArgument, "metric entries are not symmetric");
  Metric3 m;
  m.vs_ = vs;
  m.g_ = g;
  m.det_ = det3(g);
  if (m.det_.is_zero()) qhl::fail(qhl::Errc::SingularMetric, "metric determinant vanishes identically");
  return m;
}

Metric3 Metric3::family(const VarSetPtr& vs, const Expr& c, const Expr& d) {
  Expr z = Expr::symbol(vs, "z");
  Expr one = Expr::constant(vs, 1);
  Expr zero = Expr::zero(vs);
  Mat3 g;
  g[0] = {one, d * z, zero};
  g[1] = {d * z, c * z * z, one};
  g[2] = {zero, one, zero};
  Metric3 m = from_entries(vs, g);
  if (m.lorentzian_at_origin() != std::optional<bool>(true))
    qhl::fail(qhl::Errc::Internal, "family metric is not Lorentzian at the origin");
  return m;
}

std::optional<bool> Metric3::lorentzian_at_origin() const {
  std::map<std::string, Expr> origin;
  for (int id : vs_->ids_of_kind(sym::SymbolKind::Coordinate))
    origin[vs_->name(id)] = Expr::zero(vs_);
  QMatrix s(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Expr v = at(i, j).substituted(origin);
      if (!v.is_rational()) return std::nullopt;
      s.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v.rational_value();
    }
  auto inertia = sym::symmetric_inertia(std::move(s));
  return inertia == std::array<int, 3>{2, 1, 0};
}

Mat3 invert_matrix(const Mat3& m) {
  Expr det = det3(m);
  if (det.is_zero()) qhl::fail(qhl::Errc::SingularMetric, "matrix is identically singular");
  Mat3 inv;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      // cofactor expansion arranged so that inv = adj(m)/det directly
      Expr c = m[static_cast<std::size_t>(j1)][static_cast<std::size_t>(i1)] *
                   m[static_cast<std::size_t>(j2)][static_cast<std::size_t>(i2)] -
               m[static_cast<std::size_t>(j1)][static_cast<std::size_t>(i2)] *
                   m[static_cast<std::size_t>(j2)][static_cast<std::size_t>(i1)];
      inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c / det;
    }
  }
  return inv;
}

Mat3 invert_metric(const Metric3& g) { return invert_matrix(g.entries()); }

Christoffel christoffel(const Metric3& g) {
  const VarSetPtr& vs = g.varset();
  auto coords = coordinate_ids(vs);
  Mat3 ginv = invert_metric(g);

  // d[k][i][j] = d g_ij / d x_k
  std::array<Mat3, 3> d;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        d[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            g.at(i, j).derivative(coords[static_cast<std::size_t>(k)]);

  Christoffel ch;
  Expr half = Expr::constant(vs, Rational(1) / 2);
  for (int m = 0; m < 3; ++m) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        Expr sum = Expr::zero(vs);
        for (int k = 0; k < 3; ++k) {
          Expr term = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                       [static_cast<std::size_t>(k)] +
                      d[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]
                       [static_cast<std::size_t>(i)] -
                      d[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                       [static_cast<std::size_t>(j)];
          sum = sum + term * ginv[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
        }
        Expr value = half * sum;
        ch.gamma[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]
                [static_cast<std::size_t>(j)] = value;
        ch.gamma[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)]
                [static_cast<std::size_t>(i)] = value;
      }
    }
  }
  return ch;
}

Riemann riemann(const Metric3& g) {
  const VarSetPtr& vs = g.varset();
  auto coords = coordinate_ids(vs);
  Christoffel ch = christoffel(g);

  Riemann rm;
  for (int s = 0; s < 3; ++s) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          Expr sum = Expr::zero(vs);
          for (int l = 0; l < 3; ++l)
            sum = sum + ch.at(l, i, k) * ch.at(s, j, l) - ch.at(l, j, k) * ch.at(s, i, l);
          sum = sum + ch.at(s, i, k).derivative(coords[static_cast<std::size_t>(j)]) -
                ch.at(s, j, k).derivative(coords[static_cast<std::size_t>(i)]);
          rm.r[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]
              [static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = sum;
        }
      }
    }
  }
  return rm;
}

Mat3 lie_derivative_metric(const VectorField& t, const Metric3& g) {
  return lie_derivative_tensor(t, g.entries(), g.varset());
}

Mat3 lie_derivative_tensor(const VectorField& t, const Mat3& s, const VarSetPtr& vs) {
  VectorField tt = (t.varset().get() == vs.get()) ? t : t.converted(vs);
  auto coords = coordinate_ids(vs);

  // dt[i][m] = d T^m / d x_i
  std::array<std::array<Expr, 3>, 3> dt;
  for (int i = 0; i < 3; ++i)
    for (int m = 0; m < 3; ++m)
      dt[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] =
          tt.comp[static_cast<std::size_t>(m)].derivative(coords[static_cast<std::size_t>(i)]);

  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      Expr sum = Expr::zero(vs);
      for (int m = 0; m < 3; ++m) {
        sum = sum +
              tt.comp[static_cast<std::size_t>(m)] *
                  s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].derivative(
                      coords[static_cast<std::size_t>(m)]) +
              dt[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] *
                  s[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] +
              dt[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] *
                  s[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)];
      }
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sum;
      out[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = sum;
    }
  }
  return out;
}

FlatnessReport is_flat(const Metric3& g) {
  Riemann rm = riemann(g);
  FlatnessReport rep;
  // witness preference: the documented table slots first, then the rest
  constexpr int slots[][4] = {{1, 0, 1, 0}, {2, 0, 1, 0}, {2, 0, 2, 0}, {1, 0, 2, 0},
                              {2, 0, 2, 1}, {2, 1, 2, 1}, {2, 0, 1, 1}};
  for (const auto& idx : slots)
    if (!rm.at(idx[0], idx[1], idx[2], idx[3]).is_zero()) {
      rep.flat = false;
      rep.witness_index = {idx[0], idx[1], idx[2], idx[3]};
      rep.witness = rm.at(idx[0], idx[1], idx[2], idx[3]);
      return rep;
    }
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (!rm.at(s, i, j, k).is_zero()) {
            rep.flat = false;
            rep.witness_index = {s, i, j, k};
            rep.witness = rm.at(s, i, j, k);
            return rep;
          }
  rep.flat = true;
  return rep;
}

Locus curvature_vanishing_locus(const Metric3& g) {
  const VarSetPtr& vs = g.varset();
  Riemann rm = riemann(g);

  Locus locus;
  std::set<std::string> seen;
  bool any_nonzero = false;
  for (int s = 0; s < 3; ++s) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          const Expr& comp = rm.at(s, i, j, k);
          if (comp.is_zero()) continue;
          any_nonzero = true;
          // split off the parameter content: group by coordinate monomial
          const Poly& p = comp.num();
          Poly param_content = Poly::zero(vs.get());
          struct MonoLess {
            bool operator()(const Mono& a, const Mono& b) const { return sym::mono_cmp(a, b) < 0; }
          };
          std::map<Mono, std::vector<Term>, MonoLess> groups;
          for (const auto& t : p.terms()) {
            Mono key, param;
            key.e.assign(vs->size(), 0);
            param.e.assign(vs->size(), 0);
            for (std::size_t v = 0; v < t.m.e.size(); ++v) {
              if (t.m.e[v] == 0) continue;
              if (vs->kind(static_cast<int>(v)) == sym::SymbolKind::Parameter)
                param.e[v] = t.m.e[v];
              else
                key.e[v] = t.m.e[v];
            }
            groups[key].push_back(Term{param, t.c});
          }
          for (auto& [key, terms] : groups) {
            Poly coeff = Poly::from_terms(vs.get(), terms);
            param_content = sym::poly_gcd(param_content, coeff);
            if (param_content.is_constant() && !param_content.is_zero()) break;
          }
          Poly coord_part = param_content.is_zero() ? p : sym::divexact(p, param_content);
          if (coord_part.is_constant()) {
            // the component never vanishes once parameters are nonzero
            locus.empty_locus = true;
            locus.conditions.clear();
            return locus;
          }
          Poly cond = sym::squarefree_part(coord_part);
          // drop generator factors, they never vanish
          for (const auto& gen : vs->exp_gens()) {
            int32_t minexp = cond.terms()[0].m.e[static_cast<std::size_t>(gen.symbol)];
            for (const auto& t : cond.terms())
              minexp = std::min(minexp, t.m.e[static_cast<std::size_t>(gen.symbol)]);
            if (minexp > 0)
              cond = sym::divexact(cond, Poly::symbol(vs.get(), gen.symbol, minexp));
          }
          if (cond.is_constant()) {
            locus.empty_locus = true;
            locus.conditions.clear();
            return locus;
          }
          if (seen.insert(sym::to_string(cond)).second) locus.conditions.push_back(cond);
        }
      }
    }
  }
  if (!any_nonzero) qhl::fail(qhl::Errc::FlatMetric, "curvature locus of a flat metric");
  std::sort(locus.conditions.begin(), locus.conditions.end(),
            [](const Poly& a, const Poly& b) { return sym::to_string(a) < sym::to_string(b); });
  return locus;
}

bool totally_geodesic_z0(const Metric3& g) {
  const VarSetPtr& vs = g.varset();
  Christoffel ch = christoffel(g);
  std::map<std::string, Expr> on_s{{"z", Expr::zero(vs)}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!ch.at(2, i, j).substituted(on_s).is_zero()) return false;
  return true;
}

bool geodesic_field_check(const Metric3& g, const VectorField& zf) {
  const VarSetPtr& vs = g.varset();
  VectorField f = (zf.varset().get() == vs.get()) ? zf : zf.converted(vs);
  auto coords = coordinate_ids(vs);
  Christoffel ch = christoffel(g);
  for (int m = 0; m < 3; ++m) {
    Expr acc = Expr::zero(vs);
    for (int i = 0; i < 3; ++i) {
      acc = acc + f.comp[static_cast<std::size_t>(i)] *
                      f.comp[static_cast<std::size_t>(m)].derivative(
                          coords[static_cast<std::size_t>(i)]);
      for (int j = 0; j < 3; ++j)
        acc = acc + ch.at(m, i, j) * f.comp[static_cast<std::size_t>(i)] *
                        f.comp[static_cast<std::size_t>(j)];
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

}  // namespace qhl::geom
