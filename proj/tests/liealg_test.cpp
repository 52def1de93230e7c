#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "classify/classify.hpp"
#include "killing/killing.hpp"
#include "liealg/liealg.hpp"
#include "sym/errors.hpp"
#include "sym/expr_io.hpp"

using namespace qhl;
using namespace qhl::sym;
using geom::Metric3;
using geom::VectorField;
using liealg::Point;

namespace {

Expr E(const VarSetPtr& vs, const std::string& s) { return parse_expr(vs, s); }

VectorField field(const VarSetPtr& vs, const std::string& a, const std::string& b,
                  const std::string& c) {
  return VectorField{{E(vs, a), E(vs, b), E(vs, c)}};
}

}  // namespace

TEST_CASE("bracket relations") {
  auto vs = VarSet::chart(false);
  VectorField ym = field(vs, "0", "-h", "z");
  VectorField dh = field(vs, "0", "1", "0");
  VectorField dx = field(vs, "1", "0", "0");
  VectorField dz = field(vs, "0", "0", "1");
  CHECK(liealg::bracket(ym, dh) == dh);
  CHECK(liealg::bracket(ym, dz) == field(vs, "0", "0", "-1"));
  CHECK(liealg::bracket(dx, dh).is_zero());
  // antisymmetry
  VectorField a = field(vs, "x*h", "z^2", "h");
  VectorField b = field(vs, "z", "x", "h*z");
  CHECK((liealg::bracket(a, b).comp[0] + liealg::bracket(b, a).comp[0]).is_zero());
}

TEST_CASE("structure constants") {
  auto vs = VarSet::chart(false);
  // basis (X', H, Y) with Y = -h dh + z dz: [Y,H] = H, X' central
  std::vector<VectorField> basis = {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"),
                                    field(vs, "0", "-h", "z")};
  auto alg = liealg::make_algebra(vs, basis);
  auto sc = liealg::structure_constants(alg);
  // [e2, e3] = [H, Y] = -H
  CHECK(sc.rat(1, 1, 2) == Rational(-1));
  CHECK(sc.rat(1, 2, 1) == Rational(1));
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(sc.at(k, 0, 1).is_zero());
    CHECK(sc.at(k, 0, 2).is_zero());
  }

  // abelian
  auto ab = liealg::make_algebra(
      vs, {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"), field(vs, "0", "0", "1")});
  auto sc_ab = liealg::structure_constants(ab);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(sc_ab.at(k, i, j).is_zero());

  // the flat-case Killing basis closes with Jacobi verified internally
  Metric3 g00 = classify::family_metric(Rational(0), Rational(0), false);
  auto kb = killing::solve_killing(g00, killing::AnsatzSpace{1, {}});
  auto flat_alg = liealg::make_algebra(g00.varset(), kb.fields);
  CHECK_NOTHROW((void)liealg::structure_constants(flat_alg));

  // non-closure is reported
  auto open_basis = liealg::make_algebra(vs, {field(vs, "1", "0", "0"),
                                              field(vs, "x^2", "0", "0")});
  CHECK_THROWS_AS((void)liealg::structure_constants(open_basis), Error);
}

TEST_CASE("fingerprints and the catalog") {
  auto vs = VarSet::chart(false);
  auto name_of = [&](std::vector<VectorField> basis) {
    auto alg = liealg::make_algebra(vs, std::move(basis));
    return liealg::classify_algebra(liealg::fingerprint(alg));
  };

  // R + aff(R)
  auto raff = liealg::make_algebra(vs, {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"),
                                        field(vs, "0", "-h", "z")});
  auto fp = liealg::fingerprint(raff);
  CHECK(fp.dim == 3);
  CHECK(fp.derived_dims == std::vector<int>{3, 1, 0});
  CHECK(fp.center_dim == 1);
  CHECK_FALSE(fp.unimodular);
  CHECK(liealg::classify_algebra(fp) == "R+aff(R)");

  // abelian
  auto ab = liealg::make_algebra(
      vs, {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"), field(vs, "0", "0", "1")});
  auto fp_ab = liealg::fingerprint(ab);
  CHECK(fp_ab.derived_dims == std::vector<int>{3, 0});
  CHECK(fp_ab.center_dim == 3);
  CHECK(fp_ab.unimodular);
  CHECK(liealg::classify_algebra(fp_ab) == "abelian");

  // heisenberg: [dh, h dx] = dx
  CHECK(name_of({field(vs, "1", "0", "0"), field(vs, "0", "1", "0"), field(vs, "h", "0", "0")}) ==
        "heisenberg");

  // sl(2,R) acting on the h-line
  auto sl2 = liealg::make_algebra(vs, {field(vs, "0", "1", "0"), field(vs, "0", "h", "0"),
                                       field(vs, "0", "h^2", "0")});
  auto fp_sl2 = liealg::fingerprint(sl2);
  CHECK(fp_sl2.killing_signature == std::array<int, 3>{2, 1, 0});
  CHECK(liealg::classify_algebra(fp_sl2) == "sl(2,R)");

  // so(3) as rotation fields
  CHECK(name_of({field(vs, "0", "-z", "h"), field(vs, "z", "0", "-x"),
                 field(vs, "-h", "x", "0")}) == "so(3)");

  // R + sl(2,R): the Killing algebra at C=2, D=1
  Metric3 g21 = classify::family_metric(Rational(2), Rational(1), false);
  auto kb21 = killing::solve_killing(g21, killing::AnsatzSpace{2, {}});
  auto alg21 = liealg::make_algebra(g21.varset(), kb21.fields);
  auto fp21 = liealg::fingerprint(alg21);
  CHECK(fp21.dim == 4);
  CHECK(fp21.center_dim == 1);
  CHECK(fp21.killing_signature == std::array<int, 3>{2, 1, 1});
  CHECK(liealg::classify_algebra(fp21) == "R+sl(2,R)");

  // solvable-dim-4: the exhibited case-(ii) subalgebra <dx, dh, Y, E dz>
  Metric3 g01 = classify::family_metric(Rational(0), Rational(1), true);
  auto vs01 = g01.varset();
  auto sub = liealg::make_algebra(
      vs01, {field(vs01, "1", "0", "0"), field(vs01, "0", "1", "0"), field(vs01, "0", "h", "-z"),
             classify::case_ii_field_over(vs01)});
  auto fp_sub = liealg::fingerprint(sub);
  CHECK(fp_sub.solvable());
  CHECK(liealg::classify_algebra(fp_sub) == "solvable-dim-4");

  // flat Killing algebra
  Metric3 g00 = classify::family_metric(Rational(0), Rational(0), false);
  auto kb00 = killing::solve_killing(g00, killing::AnsatzSpace{1, {}});
  auto alg00 = liealg::make_algebra(g00.varset(), kb00.fields);
  auto fp00 = liealg::fingerprint(alg00);
  CHECK(fp00.dim == 6);
  CHECK(fp00.derived_dims == std::vector<int>{6, 6});
  CHECK(fp00.center_dim == 0);
  CHECK(fp00.unimodular);
  CHECK(fp00.killing_signature == std::array<int, 3>{2, 1, 3});
  CHECK(liealg::classify_algebra(fp00) == "flat-lorentz-dim-6");
}

TEST_CASE("structure constants over the parameter field") {
  // symbolic generic Killing basis: constants live in Q(C,D)
  auto vs = VarSet::chart(true);
  Metric3 g = Metric3::family(vs, Expr::symbol(vs, "C"), Expr::symbol(vs, "D"));
  auto kb = killing::solve_killing(g, killing::AnsatzSpace{2, {}});
  REQUIRE(kb.fields.size() == 4);
  auto alg = liealg::make_algebra(vs, kb.fields);
  auto sc = liealg::structure_constants(alg);
  CHECK_FALSE(sc.all_rational());
  // the scaling field is basis[2] = -h dh + z dz and [basis[2], basis[3]]
  // must stay inside the span with parameter-dependent coordinates
  VectorField br = liealg::bracket(alg.basis[2], alg.basis[3]);
  auto coords = liealg::span_coordinates(alg.basis, br);
  REQUIRE(coords.has_value());
  CHECK_THROWS_AS((void)liealg::fingerprint(sc), Error);
}

TEST_CASE("evaluation pole is reported") {
  auto vs = VarSet::chart(false);
  liealg::VectorFieldAlgebra alg;
  alg.vs = vs;
  alg.basis.push_back(
      VectorField{{E(vs, "1") / E(vs, "z - 1"), Expr::zero(vs), Expr::zero(vs)}});
  CHECK(liealg::evaluation_rank_at(alg, liealg::Point{0, 0, 0}) == 1);
  CHECK_THROWS_AS((void)liealg::evaluation_rank_at(alg, liealg::Point{0, 0, 1}), Error);
}

TEST_CASE("evaluation rank") {
  auto vs = VarSet::chart(false);
  auto alg = liealg::make_algebra(vs, {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"),
                                       field(vs, "0", "h", "-z")});
  CHECK(liealg::evaluation_rank_at(alg, Point{0, 0, 0}) == 2);
  CHECK(liealg::evaluation_rank_at(alg, Point{0, 0, 1}) == 3);
  auto ab = liealg::make_algebra(
      vs, {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"), field(vs, "0", "0", "1")});
  CHECK(liealg::evaluation_rank_at(ab, Point{Rational(7), Rational(-2), Rational(1) / 3}) == 3);

  // exponential generators evaluate to a formal nonvanishing unit
  Metric3 g01 = classify::family_metric(Rational(0), Rational(1), true);
  auto vs01 = g01.varset();
  auto with_e = liealg::make_algebra(
      vs01, {field(vs01, "1", "0", "0"), field(vs01, "0", "1", "0"), field(vs01, "0", "h", "-z"),
             classify::case_ii_field_over(vs01)});
  CHECK(liealg::evaluation_rank_at(with_e, Point{1, 0, 0}) == 3);
  CHECK(liealg::evaluation_rank_at(with_e, Point{0, 0, 0}) == 3);
}

TEST_CASE("volume function") {
  auto vs = VarSet::chart(true);
  Metric3 g = Metric3::family(vs, Expr::symbol(vs, "C"), Expr::symbol(vs, "D"));
  auto alg = liealg::make_algebra(vs, {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"),
                                       field(vs, "0", "h", "-z")});
  Expr v = liealg::volume_function(alg, g);
  CHECK(to_string(v) == "-z");
  CHECK(v.substituted({{"z", Expr::zero(vs)}}).is_zero());

  Metric3 g00 = classify::family_metric(Rational(0), Rational(0), false);
  auto vs00 = g00.varset();
  auto ab = liealg::make_algebra(vs00, {field(vs00, "1", "0", "0"), field(vs00, "0", "1", "0"),
                                        field(vs00, "0", "0", "1")});
  CHECK(liealg::volume_function(ab, g00) == Expr::constant(vs00, 1));

  // density that is not an exact square
  geom::Mat3 m;
  for (auto& row : m)
    for (auto& e : row) e = Expr::zero(vs00);
  m[0][0] = E(vs00, "1");
  m[1][1] = E(vs00, "1");
  m[2][2] = E(vs00, "z");
  Metric3 bad = Metric3::from_entries(vs00, m);
  CHECK_THROWS_AS((void)liealg::volume_function(ab, bad), Error);
}

TEST_CASE("isotropy reports") {
  auto vs = VarSet::chart(false);
  auto alg = liealg::make_algebra(vs, {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"),
                                       field(vs, "0", "h", "-z")});
  auto iso = liealg::isotropy_at(alg, Point{0, 0, 0});
  REQUIRE(iso.isotropy_basis.size() == 1);
  REQUIRE(iso.has_linearization);
  CHECK(iso.type == liealg::IsotropyType::SemiSimpleReal);
  CHECK(iso.linearization.at(0, 0) == 0);
  CHECK(iso.linearization.at(1, 1) == 1);
  CHECK(iso.linearization.at(2, 2) == -1);
  CHECK(iso.linearization.at(0, 1) == 0);

  CHECK(liealg::isotropy_at(alg, Point{0, 0, 1}).type == liealg::IsotropyType::Trivial);

  auto ab = liealg::make_algebra(
      vs, {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"), field(vs, "0", "0", "1")});
  CHECK(liealg::isotropy_at(ab, Point{1, 2, 3}).type == liealg::IsotropyType::Trivial);

  // unipotent: heisenberg's h dx vanishes at the origin with nilpotent Jacobian
  auto heis = liealg::make_algebra(vs, {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"),
                                        field(vs, "h", "0", "0")});
  CHECK(liealg::isotropy_at(heis, Point{0, 0, 0}).type == liealg::IsotropyType::Unipotent);

  // elliptic: planar rotation
  auto rot = liealg::make_algebra(vs, {field(vs, "1", "0", "0"), field(vs, "0", "1", "0"),
                                       field(vs, "-h", "x", "0")});
  CHECK(liealg::isotropy_at(rot, Point{0, 0, 0}).type == liealg::IsotropyType::Elliptic);

  // higher-dimensional kernel
  auto two = liealg::make_algebra(vs, {field(vs, "0", "h", "-z"), field(vs, "0", "h^2", "0")});
  CHECK(liealg::isotropy_at(two, Point{0, 0, 0}).type == liealg::IsotropyType::HigherDimensional);
}
