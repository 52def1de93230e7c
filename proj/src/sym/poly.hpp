#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sym/varset.hpp"

namespace qhl::sym {

/// Dense exponent vector over a VarSet, compared graded-lex with symbol id 0
/// most significant (coordinates before parameters before generators).
struct Mono {
  std::vector<int32_t> e;

  int32_t total_degree() const {
    int32_t d = 0;
    for (auto v : e) d += v;
    return d;
  }
  bool is_one() const {
    for (auto v : e)
      if (v != 0) return false;
    return true;
  }
  bool operator==(const Mono& o) const { return e == o.e; }
};

/// -1, 0, +1 for a < b, a == b, a > b in graded lex order.
int mono_cmp(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b);  // a | b
Mono mono_quot(const Mono& b, const Mono& a);     // b / a, assumes divisibility

struct Term {
  Mono m;
  Rational c;
};

/// Sparse multivariate polynomial over the rationals in canonical form:
/// terms strictly descending in the monomial order, no zero coefficients.
/// Holds a non-owning pointer to its VarSet; ownership lives with Expr and
/// the module-level objects.
class Poly {
 public:
  Poly() = default;

  static Poly zero(const VarSet* vs);
  static Poly constant(const VarSet* vs, const Rational& c);
  static Poly symbol(const VarSet* vs, int id, int exp = 1);
  static Poly from_terms(const VarSet* vs, std::vector<Term> terms);

  const VarSet* varset() const { return vs_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  Rational constant_value() const;

  int32_t total_degree() const;  // -1 for the zero polynomial
  int32_t degree_in(int id) const;
  bool depends_on(int id) const;
  const Term& leading() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly mono_scaled(const Mono& m, const Rational& c) const;
  Poly pow(int k) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Exact partial derivative. Applies power rules plus the exponential
  /// generator rules; throws UnknownVariable / Unsupported.
  Poly derivative(int id) const;

 private:
  const VarSet* vs_ = nullptr;
  std::vector<Term> terms_;
};

/// Rate of an exponential generator as a Poly over the same VarSet.
Poly rate_poly(const VarSet* vs, const ExpGen& gen);

/// Signed rational content (gcd of numerators over lcm of denominators,
/// carrying the sign of the leading coefficient). content(0) = 0.
Rational content(const Poly& p);
/// p / content(p); the zero polynomial maps to itself.
Poly primitive_part(const Poly& p);

/// Primitive positive-leading gcd (primitive PRS). gcd(0,0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);
/// Exact quotient; nullopt when b does not divide a (or b == 0).
std::optional<Poly> try_divexact(const Poly& a, const Poly& b);
/// Exact quotient; throws Internal when division is not exact.
Poly divexact(const Poly& a, const Poly& b);
/// Product of the distinct irreducible factors, primitive with positive
/// leading coefficient. squarefree_part(constant) = 1.
Poly squarefree_part(const Poly& p);

}  // namespace qhl::sym
