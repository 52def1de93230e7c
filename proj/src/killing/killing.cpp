#include "killing/killing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sym/errors.hpp"
#include "sym/expr_io.hpp"

namespace qhl::killing {

using sym::Mono;
using sym::SymbolKind;
using sym::Term;
using sym::VarSet;

namespace {

// Index pairs in the order the six component equations are reported:
// (dz,dz), (dx,dx), (dx,dz), (dx,dh), (dh,dz), (dh,dh).
constexpr int kPairOrder[6][2] = {{2, 2}, {0, 0}, {0, 2}, {0, 1}, {1, 2}, {1, 1}};

std::string pair_name(const VarSetPtr& vs, int i, int j) {
  auto coords = vs->ids_of_kind(SymbolKind::Coordinate);
  return "(d" + vs->name(coords[static_cast<std::size_t>(i)]) + ",d" +
         vs->name(coords[static_cast<std::size_t>(j)]) + ")";
}

std::vector<Mono> coordinate_monomials(const VarSetPtr& vs, int degree) {
  auto coords = vs->ids_of_kind(SymbolKind::Coordinate);
  if (coords.size() != 3) qhl::fail(qhl::Errc::Unsupported, "ansatz needs exactly 3 coordinates");
  std::vector<Mono> out;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c) {
        Mono m;
        m.e.assign(vs->size(), 0);
        m.e[static_cast<std::size_t>(coords[0])] = a;
        m.e[static_cast<std::size_t>(coords[1])] = b;
        m.e[static_cast<std::size_t>(coords[2])] = c;
        out.push_back(std::move(m));
      }
  std::sort(out.begin(), out.end(),
            [](const Mono& x, const Mono& y) { return sym::mono_cmp(x, y) > 0; });
  return out;
}

}  // namespace

VectorField AnsatzBasis::generic_field() const {
  const std::size_t n = functions.size();
  VectorField t{{Expr::zero(ext), Expr::zero(ext), Expr::zero(ext)}};
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < n; ++k) {
      Mono m = functions[k];
      m.e[static_cast<std::size_t>(unknown_ids[c * n + k])] += 1;
      terms.push_back(Term{std::move(m), Rational(1)});
    }
    t.comp[c] = Expr::from_poly(ext, sym::Poly::from_terms(ext.get(), std::move(terms)));
  }
  return t;
}

AnsatzBasis realize_ansatz(const Metric3& g, const AnsatzSpace& space) {
  const VarSetPtr& vs = g.varset();
  if (space.degree < 0) qhl::fail(qhl::Errc::InvalidArgument, "ansatz degree must be >= 0");

  std::vector<int> gen_symbols;
  for (const auto& name : space.exp_names) {
    auto id = vs->index_of(name);
    if (!id || vs->kind(*id) != SymbolKind::ExpGenerator)
      qhl::fail(qhl::Errc::InvalidArgument,
                "ansatz generator is not an exponential generator of the metric: " + name);
    gen_symbols.push_back(*id);
  }

  std::vector<Mono> plain = coordinate_monomials(vs, space.degree);
  std::vector<Mono> functions = plain;
  for (int gsym : gen_symbols) {
    for (const auto& m : plain) {
      Mono mg = m;
      mg.e[static_cast<std::size_t>(gsym)] += 1;
      functions.push_back(std::move(mg));
    }
  }

  const std::size_t n = functions.size();
  std::vector<std::string> names;
  names.reserve(3 * n);
  for (std::size_t i = 0; i < 3 * n; ++i) names.push_back("u" + std::to_string(i));
  AnsatzBasis basis;
  basis.ext = vs->with_unknowns(names);
  basis.unknown_ids.reserve(3 * n);
  for (const auto& nm : names) basis.unknown_ids.push_back(*basis.ext->index_of(nm));
  // re-home the function monomials over the extended registry
  basis.functions.reserve(n);
  for (auto& m : functions) {
    Mono me;
    me.e.assign(basis.ext->size(), 0);
    for (std::size_t s = 0; s < m.e.size(); ++s)
      if (m.e[s] != 0) {
        auto id = basis.ext->index_of(vs->name(static_cast<int>(s)));
        me.e[static_cast<std::size_t>(*id)] = m.e[s];
      }
    basis.functions.push_back(std::move(me));
  }
  return basis;
}

sym::LinearSystem killing_equations(const Metric3& g, const AnsatzBasis& basis) {
  Metric3 ge = Metric3::from_entries(
      basis.ext, {{{g.at(0, 0).converted(basis.ext), g.at(0, 1).converted(basis.ext),
                    g.at(0, 2).converted(basis.ext)},
                   {g.at(1, 0).converted(basis.ext), g.at(1, 1).converted(basis.ext),
                    g.at(1, 2).converted(basis.ext)},
                   {g.at(2, 0).converted(basis.ext), g.at(2, 1).converted(basis.ext),
                    g.at(2, 2).converted(basis.ext)}}});
  VectorField t = basis.generic_field();
  geom::Mat3 lie = geom::lie_derivative_metric(t, ge);

  sym::LinearSystem sys;
  sys.vs = basis.ext;
  sys.unknown_ids = basis.unknown_ids;
  for (const auto& pr : kPairOrder) {
    int i = pr[0], j = pr[1];
    sym::append_coefficient_rows(sys, lie[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                 pair_name(basis.ext, i, j));
  }
  return sys;
}

KillingBasis solve_killing(const Metric3& g, const AnsatzSpace& space) {
  AnsatzBasis basis = realize_ansatz(g, space);
  sym::LinearSystem sys = killing_equations(g, basis);
  sym::NullspaceResult ns = sym::nullspace(sys);

  KillingBasis out;
  out.system_rank = ns.rank;
  for (const auto& c : ns.pivot_conditions) out.pivot_conditions.push_back(sym::to_string(c));

  const std::size_t n = basis.function_count();
  for (const auto& v : ns.basis) {
    VectorField f{{Expr::zero(basis.ext), Expr::zero(basis.ext), Expr::zero(basis.ext)}};
    for (std::size_t c = 0; c < 3; ++c) {
      Expr acc = Expr::zero(basis.ext);
      for (std::size_t k = 0; k < n; ++k) {
        const Expr& coeff = v[c * n + k];
        if (coeff.is_zero()) continue;
        Expr fn = Expr::from_poly(basis.ext,
                                  sym::Poly::from_terms(basis.ext.get(),
                                                        {Term{basis.functions[k], Rational(1)}}));
        acc = acc + coeff * fn;
      }
      f.comp[c] = acc;
    }
    out.fields.push_back(f.converted(g.varset()));
  }

  // soundness: every kernel vector kills the metric
  for (const auto& f : out.fields) {
    if (!verify_killing(g, f).killing)
      qhl::fail(qhl::Errc::Internal, "kernel vector fails the Killing re-check");
  }
  return out;
}

KillingVerdict verify_killing(const Metric3& g, const VectorField& t) {
  KillingVerdict v;
  v.residual = geom::lie_derivative_metric(t, g);
  v.killing = true;
  for (int i = 0; i < 3 && v.killing; ++i)
    for (int j = 0; j < 3; ++j)
      if (!v.residual[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) {
        v.killing = false;
        break;
      }
  return v;
}

namespace {

Metric3 substituted_metric(const Metric3& g, const std::map<std::string, Expr>& bindings,
                           AnsatzSpace& space) {
  // Substitution drops generators whose rate collapses; keep the ansatz in
  // step with the surviving registry.
  geom::Mat3 entries;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          g.at(i, j).substituted(bindings);
  const VarSetPtr& target = entries[0][0].varset();
  std::erase_if(space.exp_names, [&](const std::string& n) {
    auto id = target->index_of(n);
    return !id || target->kind(*id) != SymbolKind::ExpGenerator;
  });
  return Metric3::from_entries(target, entries);
}

struct Branch {
  std::string parameter;
  Expr value;  // over the metric registry
  std::string label;
};

std::vector<Branch> branchable(const Metric3& g, const std::vector<std::string>& conditions) {
  const VarSetPtr& vs = g.varset();
  std::vector<Branch> out;
  std::set<std::string> seen;
  for (const auto& ctext : conditions) {
    Expr cond = sym::parse_expr(vs, ctext);
    if (!cond.is_polynomial()) continue;
    const sym::Poly& p = cond.num();
    for (int pid : vs->ids_of_kind(SymbolKind::Parameter)) {
      if (p.degree_in(pid) != 1) continue;
      // p = a*param + r with a rational
      sym::Poly a = sym::Poly::zero(vs.get());
      sym::Poly r = sym::Poly::zero(vs.get());
      bool linear_const = true;
      for (const auto& t : p.terms()) {
        if (t.m.e[static_cast<std::size_t>(pid)] == 1) {
          Mono rest = t.m;
          rest.e[static_cast<std::size_t>(pid)] = 0;
          if (!rest.is_one()) {
            linear_const = false;
            break;
          }
          a = a + sym::Poly::constant(vs.get(), t.c);
        } else {
          r = r + sym::Poly::from_terms(vs.get(), {t});
        }
      }
      if (!linear_const || a.is_zero()) continue;
      Expr value = Expr::from_poly(vs, -r) / Expr::from_poly(vs, a);
      if (!value.is_polynomial()) continue;
      Branch b;
      b.parameter = vs->name(pid);
      b.value = value;
      b.label = b.parameter + " = " + sym::to_string(value);
      if (seen.insert(b.label).second) out.push_back(std::move(b));
      break;  // one solve per condition
    }
  }
  return out;
}

CaseNode solve_cases_rec(const Metric3& g, const AnsatzSpace& space,
                         std::vector<std::string> constraints, int depth) {
  CaseNode node;
  node.constraints = std::move(constraints);
  KillingBasis kb = solve_killing(g, space);
  node.dimension = static_cast<int>(kb.fields.size());
  node.basis = kb.fields;
  node.conditions = kb.pivot_conditions;

  std::vector<Branch> branches = depth > 0 ? branchable(g, kb.pivot_conditions)
                                           : std::vector<Branch>{};
  for (const auto& cond : kb.pivot_conditions) {
    bool handled = false;
    for (const auto& b : branches) {
      Expr c = sym::parse_expr(g.varset(), cond);
      Expr after = c.substituted({{b.parameter, b.value}});
      if (after.is_zero()) handled = true;
    }
    if (!handled && depth > 0) node.unresolved.push_back(cond);
  }

  for (const auto& b : branches) {
    AnsatzSpace child_space = space;
    Metric3 child = substituted_metric(g, {{b.parameter, b.value}}, child_space);
    std::vector<std::string> child_constraints = node.constraints;
    child_constraints.push_back(b.label);
    node.children.push_back(
        solve_cases_rec(child, child_space, std::move(child_constraints), depth - 1));
  }
  return node;
}

}  // namespace

CaseNode solve_killing_cases(const Metric3& g, const AnsatzSpace& space, int max_depth) {
  return solve_cases_rec(g, space, {}, max_depth);
}

std::vector<PdeProportionality> reference_pde_report() {
  VarSetPtr vs = sym::VarSet::chart(true);
  Expr c = Expr::symbol(vs, "C");
  Expr d = Expr::symbol(vs, "D");
  Metric3 g = Metric3::family(vs, c, d);

  AnsatzSpace space;
  space.degree = 3;
  AnsatzBasis basis = realize_ansatz(g, space);
  const VarSetPtr& ext = basis.ext;

  VectorField t = basis.generic_field();
  Metric3 ge = Metric3::from_entries(
      ext, {{{g.at(0, 0).converted(ext), g.at(0, 1).converted(ext), g.at(0, 2).converted(ext)},
             {g.at(1, 0).converted(ext), g.at(1, 1).converted(ext), g.at(1, 2).converted(ext)},
             {g.at(2, 0).converted(ext), g.at(2, 1).converted(ext), g.at(2, 2).converted(ext)}}});
  geom::Mat3 lie = geom::lie_derivative_metric(t, ge);

  const Expr alpha = t.comp[0], beta = t.comp[1], gamma = t.comp[2];
  Expr ce = Expr::symbol(ext, "C"), de = Expr::symbol(ext, "D"), ze = Expr::symbol(ext, "z");
  auto dx = [&](const Expr& e) { return e.derivative("x"); };
  auto dh = [&](const Expr& e) { return e.derivative("h"); };
  auto dz = [&](const Expr& e) { return e.derivative("z"); };

  const Expr reference[6] = {
      dz(beta),
      dx(alpha) + de * ze * dx(beta),
      dx(beta) + de * ze * dz(beta) + dz(alpha),
      gamma * de + de * ze * dx(alpha) + ce * ze * ze * dx(beta) + dx(gamma) + dh(alpha) +
          de * ze * dh(beta),
      dh(beta) + ce * ze * ze * dz(beta) + de * ze * dz(alpha) + dz(gamma),
      ze * ce * gamma + ce * ze * ze * dh(beta) + de * ze * dh(alpha) + dh(gamma),
  };

  std::vector<PdeProportionality> report;
  for (int k = 0; k < 6; ++k) {
    const int i = kPairOrder[k][0], j = kPairOrder[k][1];
    const Expr& component = lie[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    const Expr& ref = reference[k];
    if (component.is_zero() || ref.is_zero())
      qhl::fail(qhl::Errc::PdeMismatch,
                "component or reference equation vanished for pair " + pair_name(ext, i, j));
    Rational q = component.num().leading().c / ref.num().leading().c;
    if (sym::mono_cmp(component.num().leading().m, ref.num().leading().m) != 0 ||
        !(component - ref * Expr::constant(ext, q)).is_zero())
      qhl::fail(qhl::Errc::PdeMismatch,
                "component is not proportional to the reference equation for pair " +
                    pair_name(ext, i, j));
    PdeProportionality p;
    p.pair = pair_name(ext, i, j);
    p.reference = sym::to_string(ref);
    p.multiple = q;
    report.push_back(std::move(p));
  }
  return report;
}

}  // namespace qhl::killing
