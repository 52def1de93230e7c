#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "classify/classify.hpp"
#include "killing/killing.hpp"
#include "liealg/liealg.hpp"
#include "sym/expr_io.hpp"

using namespace qhl;
using namespace qhl::sym;
using geom::Metric3;
using geom::VectorField;

namespace {

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}

  Rational rational(int lo = -4, int hi = 4, int maxden = 3) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, maxden);
    return Rational(num(gen)) / den(gen);
  }

  // random polynomial of total degree <= deg over the given symbols
  Expr poly(const VarSetPtr& vs, const std::vector<std::string>& symbols, int deg,
            int terms = 4) {
    Expr acc = Expr::zero(vs);
    std::uniform_int_distribution<int> expo(0, deg);
    for (int t = 0; t < terms; ++t) {
      Expr term = Expr::constant(vs, rational());
      int budget = deg;
      for (const auto& s : symbols) {
        int e = std::min(budget, expo(gen));
        budget -= e;
        if (e > 0) term = term * Expr::symbol(vs, s).pow(e);
      }
      acc = acc + term;
    }
    return acc;
  }

  VectorField field(const VarSetPtr& vs, int deg) {
    return VectorField{{poly(vs, {"x", "h", "z"}, deg), poly(vs, {"x", "h", "z"}, deg),
                        poly(vs, {"x", "h", "z"}, deg)}};
  }
};

}  // namespace

TEST_CASE("ring axioms on random expressions") {
  auto vs = VarSet::chart(true);
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    Expr a = rng.poly(vs, {"x", "h", "z", "C", "D"}, 3);
    Expr b = rng.poly(vs, {"x", "h", "z", "C", "D"}, 3);
    Expr c = rng.poly(vs, {"x", "h", "z", "C", "D"}, 3);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("canonical uniqueness: a - b vanishes iff representations agree") {
  auto vs = VarSet::chart(true);
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    Expr a = rng.poly(vs, {"x", "z", "C"}, 2);
    Expr b = rng.poly(vs, {"x", "z", "C"}, 2);
    bool same = (a - b).is_zero();
    CHECK(same == (to_string(a) == to_string(b)));
    CHECK(same == (a == b));
  }
  // different builds of the same value share the representation
  Expr left = parse_expr(vs, "(x + h)^2");
  Expr right = parse_expr(vs, "x^2 + 2*x*h + h^2");
  CHECK(to_string(left) == to_string(right));
}

TEST_CASE("mixed partials commute, including through generators") {
  auto vs = VarSet::chart(true)->with_exp_generator({"E", "x", {{Rational(-1), {{"D", 1}}}}});
  Rng rng(107);
  std::vector<std::string> vars{"x", "h", "z", "C", "D"};
  for (int trial = 0; trial < 10; ++trial) {
    Expr e = rng.poly(vs, {"x", "h", "z", "C", "D"}, 2) * Expr::symbol(vs, "E") +
             rng.poly(vs, {"x", "h", "z", "C", "D"}, 2);
    for (const auto& u : vars)
      for (const auto& v : vars)
        CHECK(e.derivative(u).derivative(v) == e.derivative(v).derivative(u));
  }
}

TEST_CASE("substitution and derivative commute for parameter bindings") {
  auto vs = VarSet::chart(true);
  Rng rng(109);
  for (int trial = 0; trial < 10; ++trial) {
    Expr e = rng.poly(vs, {"x", "h", "z", "C", "D"}, 3);
    std::map<std::string, Expr> bind{{"C", Expr::constant(vs, rng.rational())},
                                     {"D", Expr::constant(vs, rng.rational())}};
    for (const auto& v : {"x", "h", "z"}) {
      Expr lhs = e.derivative(v).substituted(bind);
      Expr rhs = e.substituted(bind).derivative(v);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("first Bianchi identity for the symbolic family") {
  auto vs = VarSet::chart(true);
  Metric3 g = Metric3::family(vs, Expr::symbol(vs, "C"), Expr::symbol(vs, "D"));
  geom::Riemann rm = geom::riemann(g);
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          CHECK((rm.at(s, i, j, k) + rm.at(s, j, k, i) + rm.at(s, k, i, j)).is_zero());
}

TEST_CASE("metric compatibility of the connection") {
  auto vs = VarSet::chart(true);
  Metric3 g = Metric3::family(vs, Expr::symbol(vs, "C"), Expr::symbol(vs, "D"));
  geom::Christoffel ch = geom::christoffel(g);
  auto coords = vs->ids_of_kind(SymbolKind::Coordinate);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Expr nabla = g.at(i, j).derivative(coords[static_cast<std::size_t>(k)]);
        for (int m = 0; m < 3; ++m)
          nabla = nabla - ch.at(m, k, i) * g.at(m, j) - ch.at(m, k, j) * g.at(i, m);
        CHECK(nabla.is_zero());
      }
}

TEST_CASE("lie derivative is linear and respects brackets") {
  auto vs = VarSet::chart(true);
  Metric3 g = Metric3::family(vs, Expr::symbol(vs, "C"), Expr::symbol(vs, "D"));
  Rng rng(113);
  for (int trial = 0; trial < 4; ++trial) {
    VectorField a = rng.field(vs, 1);
    VectorField b = rng.field(vs, 1);
    Rational lam = rng.rational();
    // linearity in the field
    VectorField combo{{a.comp[0] + Expr::constant(vs, lam) * b.comp[0],
                       a.comp[1] + Expr::constant(vs, lam) * b.comp[1],
                       a.comp[2] + Expr::constant(vs, lam) * b.comp[2]}};
    auto la = geom::lie_derivative_metric(a, g);
    auto lb = geom::lie_derivative_metric(b, g);
    auto lc = geom::lie_derivative_metric(combo, g);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(lc[i][j] == la[i][j] + Expr::constant(vs, lam) * lb[i][j]);
  }
  // L_{[a,b]} g = L_a L_b g - L_b L_a g on test fields
  for (int trial = 0; trial < 3; ++trial) {
    VectorField a = rng.field(vs, 1);
    VectorField b = rng.field(vs, 1);
    auto lab = geom::lie_derivative_tensor(liealg::bracket(a, b), g.entries(), vs);
    auto ab = geom::lie_derivative_tensor(a, geom::lie_derivative_metric(b, g), vs);
    auto ba = geom::lie_derivative_tensor(b, geom::lie_derivative_metric(a, g), vs);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(lab[i][j] == ab[i][j] - ba[i][j]);
  }

  // L_{[a,b]} g = 0 when both fields are Killing
  VectorField dx{{Expr::constant(vs, 1), Expr::zero(vs), Expr::zero(vs)}};
  VectorField y{{Expr::zero(vs), -Expr::symbol(vs, "h"), Expr::symbol(vs, "z")}};
  auto lie = geom::lie_derivative_metric(liealg::bracket(dx, y), g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(lie[i][j].is_zero());
}

TEST_CASE("bracket is bilinear, antisymmetric, and satisfies Jacobi") {
  auto vs = VarSet::chart(false);
  Rng rng(127);
  for (int trial = 0; trial < 8; ++trial) {
    VectorField a = rng.field(vs, 2);
    VectorField b = rng.field(vs, 2);
    VectorField c = rng.field(vs, 2);
    auto add = [&](const VectorField& u, const VectorField& v) {
      return VectorField{{u.comp[0] + v.comp[0], u.comp[1] + v.comp[1], u.comp[2] + v.comp[2]}};
    };
    // antisymmetry
    CHECK(add(liealg::bracket(a, b), liealg::bracket(b, a)).is_zero());
    // Jacobi
    VectorField j1 = liealg::bracket(liealg::bracket(a, b), c);
    VectorField j2 = liealg::bracket(liealg::bracket(b, c), a);
    VectorField j3 = liealg::bracket(liealg::bracket(c, a), b);
    CHECK(add(add(j1, j2), j3).is_zero());
  }
}

TEST_CASE("structure constants rebuild brackets exactly") {
  Metric3 g21 = classify::family_metric(Rational(2), Rational(1), false);
  auto kb = killing::solve_killing(g21, killing::AnsatzSpace{2, {}});
  auto alg = liealg::make_algebra(g21.varset(), kb.fields);
  auto sc = liealg::structure_constants(alg);
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      VectorField want = liealg::bracket(alg.basis[i], alg.basis[j]);
      VectorField got{{Expr::zero(alg.vs), Expr::zero(alg.vs), Expr::zero(alg.vs)}};
      for (std::size_t k = 0; k < alg.dim(); ++k)
        for (std::size_t m = 0; m < 3; ++m)
          got.comp[m] = got.comp[m] + sc.at(k, i, j) * alg.basis[k].comp[m];
      CHECK(got == want);
    }
}

TEST_CASE("fingerprint is invariant under rational changes of basis") {
  Metric3 g21 = classify::family_metric(Rational(2), Rational(1), false);
  auto kb = killing::solve_killing(g21, killing::AnsatzSpace{2, {}});
  auto alg = liealg::make_algebra(g21.varset(), kb.fields);
  auto reference = liealg::fingerprint(alg);

  Rng rng(131);
  const std::size_t n = alg.dim();
  int done = 0;
  while (done < 20) {
    // random invertible rational matrix
    QMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p.at(i, j) = rng.rational(-3, 3, 2);
    if (p.rank() != static_cast<int>(n)) continue;
    std::vector<VectorField> transformed;
    for (std::size_t i = 0; i < n; ++i) {
      VectorField f{{Expr::zero(alg.vs), Expr::zero(alg.vs), Expr::zero(alg.vs)}};
      for (std::size_t j = 0; j < n; ++j) {
        if (p.at(i, j) == 0) continue;
        Expr c = Expr::constant(alg.vs, p.at(i, j));
        for (std::size_t m = 0; m < 3; ++m) f.comp[m] = f.comp[m] + c * alg.basis[j].comp[m];
      }
      transformed.push_back(std::move(f));
    }
    auto fp = liealg::fingerprint(liealg::make_algebra(alg.vs, transformed));
    CHECK(fp.dim == reference.dim);
    CHECK(fp.derived_dims == reference.derived_dims);
    CHECK(fp.center_dim == reference.center_dim);
    CHECK(fp.killing_signature == reference.killing_signature);
    CHECK(fp.unimodular == reference.unimodular);
    ++done;
  }
}

namespace {

// Independent dimension oracle: evaluate the Lie-derivative entries of every
// ansatz basis field at sample points and take the kernel of the resulting
// rational matrix. Avoids the coefficient-matching path entirely.
int sampled_killing_dimension(const Metric3& g, int degree, unsigned seed) {
  auto vs = g.varset();
  killing::AnsatzSpace space{degree, {}};
  auto basis = killing::realize_ansatz(g, space);
  const std::size_t n = basis.function_count();

  std::vector<VectorField> gens;
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < n; ++k) {
      VectorField f{{Expr::zero(vs), Expr::zero(vs), Expr::zero(vs)}};
      Expr fn = Expr::from_poly(
          basis.ext, Poly::from_terms(basis.ext.get(), {Term{basis.functions[k], Rational(1)}}));
      f.comp[c] = fn.converted(vs);
      gens.push_back(std::move(f));
    }

  std::vector<geom::Mat3> lies;
  for (const auto& f : gens) lies.push_back(geom::lie_derivative_metric(f, g));

  Rng rng(seed);
  const std::size_t points = 3 * n + 8;
  std::vector<std::array<Rational, 3>> samples;
  for (std::size_t p = 0; p < points; ++p)
    samples.push_back({rng.rational(-9, 9, 4), rng.rational(-9, 9, 4), rng.rational(-9, 9, 4)});

  QMatrix m(points * 6, gens.size());
  std::size_t row = 0;
  for (const auto& pt : samples) {
    std::map<std::string, Expr> bind{{"x", Expr::constant(vs, pt[0])},
                                     {"h", Expr::constant(vs, pt[1])},
                                     {"z", Expr::constant(vs, pt[2])}};
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        for (std::size_t col = 0; col < gens.size(); ++col) {
          Expr v = lies[col][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                       .substituted(bind);
          m.at(row, col) = v.rational_value();
        }
        ++row;
      }
  }
  return static_cast<int>(gens.size()) - m.rank();
}

}  // namespace

TEST_CASE("sampled-evaluation oracle agrees with the solver") {
  Metric3 g10 = classify::family_metric(Rational(1), Rational(0), false);
  CHECK(sampled_killing_dimension(g10, 2, 1001) ==
        static_cast<int>(killing::solve_killing(g10, killing::AnsatzSpace{2, {}}).fields.size()));

  Metric3 g21 = classify::family_metric(Rational(2), Rational(1), false);
  CHECK(sampled_killing_dimension(g21, 2, 1002) ==
        static_cast<int>(killing::solve_killing(g21, killing::AnsatzSpace{2, {}}).fields.size()));

  // random polynomial metrics of degree <= 2
  auto vs = VarSet::chart(false);
  Rng rng(1003);
  int tested = 0;
  while (tested < 3) {
    geom::Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        Expr e = rng.poly(vs, {"x", "h", "z"}, 2, 2);
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
        m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = e;
      }
    // keep it invertible by anchoring the constant part
    m[0][0] = m[0][0] + Expr::constant(vs, 1);
    m[1][2] = m[1][2] + Expr::constant(vs, 1);
    m[2][1] = m[1][2];
    Expr det = geom::det3(m);
    if (det.is_zero()) continue;
    Metric3 g = Metric3::from_entries(vs, m);
    int solver = static_cast<int>(
        killing::solve_killing(g, killing::AnsatzSpace{1, {}}).fields.size());
    CHECK(sampled_killing_dimension(g, 1, 2000 + static_cast<unsigned>(tested)) == solver);
    ++tested;
  }
}

TEST_CASE("solver soundness re-check") {
  for (auto [c, d, adjoin] : std::vector<std::tuple<int, int, bool>>{
           {1, 0, false}, {0, 1, true}, {2, 1, false}, {0, 0, false}}) {
    Metric3 g = classify::family_metric(Rational(c), Rational(d), adjoin);
    killing::AnsatzSpace space{2, adjoin ? std::vector<std::string>{"E"}
                                         : std::vector<std::string>{}};
    auto kb = killing::solve_killing(g, space);
    for (const auto& f : kb.fields) CHECK(killing::verify_killing(g, f).killing);
  }
}

TEST_CASE("enlarging the ansatz never loses dimensions") {
  // degree growth
  Metric3 g21 = classify::family_metric(Rational(2), Rational(1), false);
  std::size_t prev = 0;
  for (int deg = 0; deg <= 3; ++deg) {
    auto kb = killing::solve_killing(g21, killing::AnsatzSpace{deg, {}});
    CHECK(kb.fields.size() >= prev);
    prev = kb.fields.size();
  }

  // generator growth: adjoining exp(+Dx) next to exp(-Dx) completes the
  // constant-curvature member's algebra
  VarSet::ExpGenSpec em{"E", "x", {{Rational(-1), {}}}};
  VarSet::ExpGenSpec ep{"F", "x", {{Rational(1), {}}}};
  auto vs1 = VarSet::chart(false)->with_exp_generator(em);
  auto vs2 = vs1->with_exp_generator(ep);
  Metric3 g1 = Metric3::family(vs1, Expr::constant(vs1, 0), Expr::constant(vs1, 1));
  Metric3 g2 = Metric3::family(vs2, Expr::constant(vs2, 0), Expr::constant(vs2, 1));
  auto kb1 = killing::solve_killing(g1, killing::AnsatzSpace{2, {"E"}});
  auto kb2 = killing::solve_killing(g2, killing::AnsatzSpace{2, {"E", "F"}});
  CHECK(kb1.fields.size() == 5);
  CHECK(kb2.fields.size() == 6);
}
