#include "sym/expr.hpp"

#include <algorithm>

#include "sym/errors.hpp"

namespace qhl::sym {

Expr::Expr(VarSetPtr vs, Poly num, Poly den)
    : vs_(std::move(vs)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Expr::normalize() {
  if (den_.is_zero()) fail(Errc::DivisionByZero, "division by the zero polynomial");
  if (num_.is_zero()) {
    den_ = Poly::constant(vs_.get(), 1);
    return;
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(Rational(1) / den_.constant_value());
    den_ = Poly::constant(vs_.get(), 1);
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = divexact(num_, g);
    den_ = divexact(den_, g);
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(Rational(1) / den_.constant_value());
    den_ = Poly::constant(vs_.get(), 1);
    return;
  }
  Rational lc = den_.leading().c;
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Expr Expr::zero(const VarSetPtr& vs) { return from_poly(vs, Poly::zero(vs.get())); }

Expr Expr::constant(const VarSetPtr& vs, const Rational& c) {
  return from_poly(vs, Poly::constant(vs.get(), c));
}

Expr Expr::symbol(const VarSetPtr& vs, const std::string& name) {
  auto id = vs->index_of(name);
  if (!id) fail(Errc::UnknownVariable, "unknown symbol: " + name);
  return symbol(vs, *id);
}

Expr Expr::symbol(const VarSetPtr& vs, int id) {
  return from_poly(vs, Poly::symbol(vs.get(), id));
}

Expr Expr::from_poly(const VarSetPtr& vs, Poly p) {
  return Expr(vs, std::move(p), Poly::constant(vs.get(), 1));
}

Expr Expr::fraction(const VarSetPtr& vs, Poly num, Poly den) {
  return Expr(vs, std::move(num), std::move(den));
}

bool Expr::is_polynomial() const { return den_.is_constant() && den_.constant_value() == 1; }

Rational Expr::rational_value() const {
  if (!is_rational()) fail(Errc::Internal, "rational_value of a non-constant expression");
  return num_.constant_value();
}

Expr Expr::operator-() const { return Expr(vs_, -num_, den_); }

namespace {
const VarSetPtr& common_varset(const Expr& a, const Expr& b) {
  if (a.varset().get() == b.varset().get()) return a.varset();
  if (a.varset() && b.varset() && a.varset()->structurally_equal(*b.varset())) return a.varset();
  fail(Errc::Internal, "expression arithmetic across different symbol registries");
}
}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  const VarSetPtr& vs = common_varset(a, b);
  return Expr::fraction(vs, a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  const VarSetPtr& vs = common_varset(a, b);
  return Expr::fraction(vs, a.num() * b.num(), a.den() * b.den());
}

Expr operator/(const Expr& a, const Expr& b) {
  const VarSetPtr& vs = common_varset(a, b);
  if (b.is_zero()) fail(Errc::DivisionByZero, "division by the identically zero expression");
  return Expr::fraction(vs, a.num() * b.den(), a.den() * b.num());
}

Expr Expr::pow(int k) const {
  if (k < 0) {
    if (is_zero()) fail(Errc::DivisionByZero, "negative power of zero");
    return constant(vs_, 1) / pow(-k);
  }
  Expr r = constant(vs_, 1);
  Expr base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

bool Expr::operator==(const Expr& o) const { return num_ == o.num_ && den_ == o.den_; }

Expr Expr::derivative(int id) const {
  if (is_polynomial()) return from_poly(vs_, num_.derivative(id));
  Poly dn = num_.derivative(id) * den_ - num_ * den_.derivative(id);
  return fraction(vs_, std::move(dn), den_ * den_);
}

Expr Expr::derivative(const std::string& name) const {
  auto id = vs_->index_of(name);
  if (!id) fail(Errc::UnknownVariable, "unknown symbol: " + name);
  return derivative(*id);
}

namespace {

Poly substitute_poly(const Poly& p, const VarSetPtr& target,
                     const std::map<int, Expr>& values, Poly& den_acc) {
  // Computes p with bindings applied, as num/den_acc over target. den_acc
  // accumulates the common denominator.
  Expr acc = Expr::zero(target);
  std::map<std::pair<int, int>, Expr> pow_cache;
  for (const auto& t : p.terms()) {
    Expr term = Expr::constant(target, t.c);
    for (std::size_t s = 0; s < t.m.e.size(); ++s) {
      int32_t e = t.m.e[s];
      if (e == 0) continue;
      auto key = std::make_pair(static_cast<int>(s), static_cast<int>(e));
      auto it = pow_cache.find(key);
      if (it == pow_cache.end()) {
        Expr base;
        auto vit = values.find(static_cast<int>(s));
        if (vit != values.end()) {
          base = vit->second;
        } else {
          base = Expr::symbol(target, static_cast<int>(s));
        }
        it = pow_cache.emplace(key, base.pow(e)).first;
      }
      term = term * it->second;
    }
    acc = acc + term;
  }
  den_acc = acc.den();
  return acc.num();
}

}  // namespace

Expr Expr::substituted(const std::map<std::string, Expr>& bindings) const {
  // Resolve names and vet the bindings.
  std::map<int, Expr> values;
  std::map<int, Rational> rate_params;
  for (const auto& [name, value] : bindings) {
    auto id = vs_->index_of(name);
    if (!id) fail(Errc::UnknownVariable, "unknown symbol in substitution: " + name);
    SymbolKind k = vs_->kind(*id);
    if (k == SymbolKind::ExpGenerator && !value.is_rational())
      fail(Errc::Unsupported, "exponential generator may only be bound to a rational value");
    if (k == SymbolKind::Parameter && value.is_rational()) rate_params[*id] = value.rational_value();
    values[*id] = value;
  }

  // Work out what happens to each generator: rational parameter bindings
  // specialize its rate; a rate that collapses to zero means the generator
  // itself collapses to exp(0) = 1, and it leaves the result's registry.
  std::vector<VarSet::ExpGenSpec> surviving;
  for (const auto& g : vs_->exp_gens()) {
    bool nonrational_touch = false;
    for (const auto& rt : g.rate)
      for (std::size_t s = 0; s < rt.exponents.size(); ++s) {
        if (rt.exponents[s] == 0) continue;
        auto it = values.find(static_cast<int>(s));
        if (it == values.end()) continue;
        if (!rate_params.count(static_cast<int>(s))) nonrational_touch = true;
      }
    if (nonrational_touch) {
      if (num_.depends_on(g.symbol) || den_.depends_on(g.symbol))
        fail(Errc::Unsupported,
             "parameter appearing in an exponential rate may only be bound to a rational value");
      continue;  // generator dropped; the value never mentions it
    }
    VarSet::ExpGenSpec spec;
    spec.name = g.name;
    spec.direction = vs_->name(g.direction);
    // substitute the bound parameters into the rate
    std::map<std::map<std::string, int>, Rational> acc;
    for (const auto& rt : g.rate) {
      Rational c = rt.coeff;
      std::map<std::string, int> mono;
      for (std::size_t s = 0; s < rt.exponents.size(); ++s) {
        if (rt.exponents[s] == 0) continue;
        auto it = rate_params.find(static_cast<int>(s));
        if (it != rate_params.end()) {
          for (int k = 0; k < rt.exponents[s]; ++k) c *= it->second;
        } else {
          mono[vs_->name(static_cast<int>(s))] = rt.exponents[s];
        }
      }
      acc[mono] += c;
    }
    for (auto& [mono, c] : acc)
      if (c != 0) spec.rate.emplace_back(c, mono);
    if (spec.rate.empty()) {
      if (!values.count(g.symbol)) values[g.symbol] = Expr::constant(vs_, 1);
      continue;  // degenerate: bound to 1 above, dropped from the registry
    }
    surviving.push_back(std::move(spec));
  }

  // A generator also collapses to 1 when its direction coordinate is sent
  // to 0; other direction values leave it formal.
  for (const auto& g : vs_->exp_gens()) {
    if (values.count(g.symbol)) continue;
    auto it = values.find(g.direction);
    if (it != values.end() && it->second.is_zero())
      values[g.symbol] = Expr::constant(vs_, 1);
  }

  // Evaluate over the original registry; rates play no role here.
  Poly dn, dd;
  Poly nn = substitute_poly(num_, vs_, values, dn);
  Poly nd = substitute_poly(den_, vs_, values, dd);
  if (nd.is_zero()) fail(Errc::EvaluationPole, "substitution produced a zero denominator");
  Expr result = fraction(vs_, nn * dd, dn * nd);

  // Re-home onto the registry with specialized rates when anything changed.
  const bool gens_changed = surviving.size() != vs_->exp_gens().size();
  bool rates_changed = false;
  if (!gens_changed) {
    for (std::size_t i = 0; i < surviving.size(); ++i) {
      const auto& old_gen = vs_->exp_gens()[i];
      std::map<std::map<std::string, int>, Rational> old_acc;
      for (const auto& rt : old_gen.rate) {
        std::map<std::string, int> mono;
        for (std::size_t s = 0; s < rt.exponents.size(); ++s)
          if (rt.exponents[s] != 0) mono[vs_->name(static_cast<int>(s))] = rt.exponents[s];
        old_acc[mono] += rt.coeff;
      }
      std::map<std::map<std::string, int>, Rational> new_acc;
      for (const auto& [coeff, mono] : surviving[i].rate) new_acc[mono] += coeff;
      if (old_acc != new_acc) rates_changed = true;
    }
  }
  if (!gens_changed && !rates_changed) return result;

  std::vector<std::string> coords, params, unknowns;
  for (std::size_t i = 0; i < vs_->size(); ++i) {
    int id = static_cast<int>(i);
    switch (vs_->kind(id)) {
      case SymbolKind::Coordinate: coords.push_back(vs_->name(id)); break;
      case SymbolKind::Parameter: params.push_back(vs_->name(id)); break;
      case SymbolKind::Unknown: unknowns.push_back(vs_->name(id)); break;
      case SymbolKind::ExpGenerator: break;
    }
  }
  VarSetPtr target = VarSet::create(coords, params, surviving, unknowns);
  return result.converted(target);
}

Expr Expr::converted(const VarSetPtr& target) const {
  if (target.get() == vs_.get()) return *this;
  auto convert_poly = [&](const Poly& p) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
      Term u;
      u.m.e.assign(target->size(), 0);
      u.c = t.c;
      for (std::size_t s = 0; s < t.m.e.size(); ++s) {
        if (t.m.e[s] == 0) continue;
        auto id = target->index_of(vs_->name(static_cast<int>(s)));
        if (!id)
          fail(Errc::UnknownVariable,
               "conversion target lacks symbol: " + vs_->name(static_cast<int>(s)));
        u.m.e[static_cast<std::size_t>(*id)] = t.m.e[s];
      }
      out.push_back(std::move(u));
    }
    return Poly::from_terms(target.get(), std::move(out));
  };
  return fraction(target, convert_poly(num_), convert_poly(den_));
}

}  // namespace qhl::sym
