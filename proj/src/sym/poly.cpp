#include "sym/poly.hpp"

#include <algorithm>
#include <map>

#include "sym/errors.hpp"

namespace qhl::sym {

int mono_cmp(const Mono& a, const Mono& b) {
  int32_t da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  const std::size_t n = std::max(a.e.size(), b.e.size());
  for (std::size_t i = 0; i < n; ++i) {
    int32_t ea = i < a.e.size() ? a.e[i] : 0;
    int32_t eb = i < b.e.size() ? b.e[i] : 0;
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  r.e.resize(std::max(a.e.size(), b.e.size()), 0);
  for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] += a.e[i];
  for (std::size_t i = 0; i < b.e.size(); ++i) r.e[i] += b.e[i];
  return r;
}

bool mono_divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.e.size(); ++i) {
    int32_t eb = i < b.e.size() ? b.e[i] : 0;
    if (a.e[i] > eb) return false;
  }
  return true;
}

Mono mono_quot(const Mono& b, const Mono& a) {
  Mono r = b;
  for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] -= a.e[i];
  return r;
}

namespace {

struct MonoGreater {
  bool operator()(const Mono& a, const Mono& b) const { return mono_cmp(a, b) > 0; }
};

void check_same(const Poly& a, const Poly& b) {
  if (a.varset() == b.varset()) return;
  if (a.varset() && b.varset() && a.varset()->structurally_equal(*b.varset())) return;
  fail(Errc::Internal, "polynomial arithmetic across different symbol registries");
}

}  // namespace

Poly Poly::zero(const VarSet* vs) {
  Poly p;
  p.vs_ = vs;
  return p;
}

Poly Poly::constant(const VarSet* vs, const Rational& c) {
  Poly p;
  p.vs_ = vs;
  if (c != 0) {
    Term t;
    t.m.e.assign(vs->size(), 0);
    t.c = c;
    p.terms_.push_back(std::move(t));
  }
  return p;
}

Poly Poly::symbol(const VarSet* vs, int id, int exp) {
  if (id < 0 || static_cast<std::size_t>(id) >= vs->size())
    fail(Errc::UnknownVariable, "symbol id out of range");
  if (exp < 0) fail(Errc::InvalidArgument, "negative exponent");
  if (exp == 0) return constant(vs, 1);
  Poly p;
  p.vs_ = vs;
  Term t;
  t.m.e.assign(vs->size(), 0);
  t.m.e[static_cast<std::size_t>(id)] = exp;
  t.c = 1;
  p.terms_.push_back(std::move(t));
  return p;
}

Poly Poly::from_terms(const VarSet* vs, std::vector<Term> terms) {
  std::map<Mono, Rational, MonoGreater> acc;
  for (auto& t : terms) {
    t.m.e.resize(vs->size(), 0);
    acc[t.m] += t.c;
  }
  Poly p;
  p.vs_ = vs;
  for (auto& [m, c] : acc)
    if (c != 0) p.terms_.push_back(Term{m, c});
  return p;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) fail(Errc::Internal, "constant_value of a non-constant polynomial");
  return terms_[0].c;
}

int32_t Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_[0].m.total_degree();  // graded order: leading term has max degree
}

int32_t Poly::degree_in(int id) const {
  int32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.e[static_cast<std::size_t>(id)]);
  return d;
}

bool Poly::depends_on(int id) const {
  for (const auto& t : terms_)
    if (t.m.e[static_cast<std::size_t>(id)] != 0) return true;
  return false;
}

const Term& Poly::leading() const {
  if (terms_.empty()) fail(Errc::Internal, "leading term of zero polynomial");
  return terms_[0];
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.c = -t.c;
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  check_same(a, b);
  std::vector<Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    int c = mono_cmp(a.terms_[i].m, b.terms_[j].m);
    if (c > 0) {
      out.push_back(a.terms_[i++]);
    } else if (c < 0) {
      out.push_back(b.terms_[j++]);
    } else {
      Rational s = a.terms_[i].c + b.terms_[j].c;
      if (s != 0) out.push_back(Term{a.terms_[i].m, s});
      ++i, ++j;
    }
  }
  while (i < a.terms_.size()) out.push_back(a.terms_[i++]);
  while (j < b.terms_.size()) out.push_back(b.terms_[j++]);
  Poly p;
  p.vs_ = a.vs_ ? a.vs_ : b.vs_;
  p.terms_ = std::move(out);
  return p;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  check_same(a, b);
  std::map<Mono, Rational, MonoGreater> acc;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) acc[mono_mul(ta.m, tb.m)] += ta.c * tb.c;
  Poly p;
  p.vs_ = a.vs_ ? a.vs_ : b.vs_;
  for (auto& [m, c] : acc)
    if (c != 0) p.terms_.push_back(Term{m, c});
  return p;
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return zero(vs_);
  Poly p = *this;
  for (auto& t : p.terms_) t.c *= c;
  return p;
}

Poly Poly::mono_scaled(const Mono& m, const Rational& c) const {
  if (c == 0) return zero(vs_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(Term{mono_mul(t.m, m), t.c * c});
  // multiplying by a fixed monomial preserves the order
  Poly p;
  p.vs_ = vs_;
  p.terms_ = std::move(out);
  return p;
}

Poly Poly::pow(int k) const {
  if (k < 0) fail(Errc::InvalidArgument, "negative power of a polynomial");
  Poly r = constant(vs_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (vs_ != o.vs_ && !(vs_ && o.vs_ && vs_->structurally_equal(*o.vs_))) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

Poly rate_poly(const VarSet* vs, const ExpGen& gen) {
  std::vector<Term> terms;
  for (const auto& rt : gen.rate) {
    Term t;
    t.m.e = rt.exponents;
    t.c = rt.coeff;
    terms.push_back(std::move(t));
  }
  return Poly::from_terms(vs, std::move(terms));
}

Poly Poly::derivative(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= vs_->size())
    fail(Errc::UnknownVariable, "derivative with respect to a symbol outside the registry");
  SymbolKind k = vs_->kind(id);
  if (k == SymbolKind::ExpGenerator)
    fail(Errc::Unsupported, "derivative with respect to an exponential generator");

  Poly out = Poly::zero(vs_);
  const std::size_t uid = static_cast<std::size_t>(id);
  for (const auto& t : terms_) {
    // power rule on the symbol itself
    if (t.m.e[uid] > 0) {
      Term d;
      d.m = t.m;
      d.m.e[uid] -= 1;
      d.c = t.c * t.m.e[uid];
      out = out + Poly::from_terms(vs_, {d});
    }
    // chain rules through exponential generators present in the monomial
    for (const auto& gen : vs_->exp_gens()) {
      int32_t ge = t.m.e[static_cast<std::size_t>(gen.symbol)];
      if (ge == 0) continue;
      if (id == gen.direction) {
        // d/dx E^k = k * rate * E^k
        Poly rt = rate_poly(vs_, gen);
        out = out + rt.mono_scaled(t.m, t.c * ge);
      } else if (k == SymbolKind::Parameter) {
        // d/dp E^k = k * (d rate/dp) * direction * E^k
        Poly rt = rate_poly(vs_, gen);
        if (rt.depends_on(id)) {
          Poly drt = rt.derivative(id);
          Mono shifted = t.m;
          shifted.e[static_cast<std::size_t>(gen.direction)] += 1;
          out = out + drt.mono_scaled(shifted, t.c * ge);
        }
      }
    }
  }
  return out;
}

Rational content(const Poly& p) {
  if (p.is_zero()) return Rational(0);
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& t : p.terms()) {
    num_gcd = boost::multiprecision::gcd(num_gcd, numerator(t.c));
    den_lcm = boost::multiprecision::lcm(den_lcm, denominator(t.c));
  }
  Rational c = Rational(num_gcd) / Rational(den_lcm);
  if (p.leading().c < 0) c = -c;
  return c;
}

Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(Rational(1) / content(p));
}

namespace {

// Coefficient of v^k in p, viewed as univariate in v (exponent of v cleared).
Poly coeff_in(const Poly& p, int v, int32_t k) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (t.m.e[static_cast<std::size_t>(v)] == k) {
      Term u = t;
      u.m.e[static_cast<std::size_t>(v)] = 0;
      out.push_back(std::move(u));
    }
  }
  return Poly::from_terms(p.varset(), std::move(out));
}

// gcd of the univariate-in-v coefficients of p.
Poly content_in(const Poly& p, int v) {
  Poly c = Poly::zero(p.varset());
  int32_t d = p.degree_in(v);
  for (int32_t k = 0; k <= d; ++k) {
    Poly ck = coeff_in(p, v, k);
    if (!ck.is_zero()) c = poly_gcd(c, ck);
    if (c.is_constant() && !c.is_zero()) break;
  }
  return c;
}

// Pseudo-remainder of a by b with respect to v.
Poly prem(Poly a, const Poly& b, int v) {
  const int32_t db = b.degree_in(v);
  Poly lb = coeff_in(b, v, db);
  while (!a.is_zero() && a.degree_in(v) >= db) {
    int32_t da = a.degree_in(v);
    Poly la = coeff_in(a, v, da);
    Mono shift;
    shift.e.assign(a.varset()->size(), 0);
    shift.e[static_cast<std::size_t>(v)] = da - db;
    a = a * lb - b * la.mono_scaled(shift, Rational(1));
  }
  return a;
}

// gcd of two primitive polynomials (positive leading coefficient).
Poly gcd_primitive(const Poly& a, const Poly& b) {
  const VarSet* vs = a.varset();
  if (a.is_constant() || b.is_constant()) return Poly::constant(vs, 1);

  int v = -1;
  for (std::size_t i = 0; i < vs->size(); ++i) {
    if (a.depends_on(static_cast<int>(i)) || b.depends_on(static_cast<int>(i))) {
      v = static_cast<int>(i);
      break;
    }
  }
  if (v < 0) return Poly::constant(vs, 1);

  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly c = poly_gcd(ca, cb);
  Poly pa = divexact(a, ca), pb = divexact(b, cb);

  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (true) {
    if (pb.degree_in(v) == 0) {
      // pb is v-free; primitive w.r.t. v means it is a unit here
      return c;
    }
    Poly r = prem(pa, pb, v);
    if (r.is_zero()) {
      Poly g = primitive_part(pb);
      return c * g;
    }
    if (r.degree_in(v) == 0) return c;
    pa = pb;
    pb = primitive_part(divexact(r, content_in(r, v)));
  }
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  Poly pa = primitive_part(a), pb = primitive_part(b);
  Poly g = gcd_primitive(pa, pb);
  return primitive_part(g);
}

std::optional<Poly> try_divexact(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  Poly r = a;
  std::vector<Term> q;
  const Term& lb = b.leading();
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    if (!mono_divides(lb.m, lr.m)) return std::nullopt;
    Term t;
    t.m = mono_quot(lr.m, lb.m);
    t.c = lr.c / lb.c;
    r = r - b.mono_scaled(t.m, t.c);
    q.push_back(std::move(t));
  }
  return Poly::from_terms(a.varset(), std::move(q));
}

Poly divexact(const Poly& a, const Poly& b) {
  auto q = try_divexact(a, b);
  if (!q) fail(Errc::Internal, "inexact polynomial division");
  return *q;
}

Poly squarefree_part(const Poly& p) {
  const VarSet* vs = p.varset();
  if (p.is_zero()) return p;
  if (p.is_constant()) return Poly::constant(vs, 1);
  Poly g = p;
  for (std::size_t i = 0; i < vs->size(); ++i) {
    int id = static_cast<int>(i);
    if (vs->kind(id) == SymbolKind::ExpGenerator) continue;
    if (!p.depends_on(id)) continue;
    g = poly_gcd(g, p.derivative(id));
    if (g.is_constant()) break;
  }
  if (g.is_constant()) return primitive_part(p);
  return primitive_part(divexact(primitive_part(p), g));
}

}  // namespace qhl::sym
