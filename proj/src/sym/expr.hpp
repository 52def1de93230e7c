#pragma once

#include <map>
#include <memory>
#include <string>

#include "sym/poly.hpp"

namespace qhl::sym {

/// Exact rational function in canonical form: num/den with den monic in the
/// monomial order, gcd(num, den) constant, and den == 1 for polynomials.
/// Equal values always have identical representations. Immutable.
class Expr {
 public:
  Expr() = default;

  static Expr zero(const VarSetPtr& vs);
  static Expr constant(const VarSetPtr& vs, const Rational& c);
  static Expr symbol(const VarSetPtr& vs, const std::string& name);
  static Expr symbol(const VarSetPtr& vs, int id);
  static Expr from_poly(const VarSetPtr& vs, Poly p);
  static Expr fraction(const VarSetPtr& vs, Poly num, Poly den);

  const VarSetPtr& varset() const { return vs_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const;
  bool is_rational() const { return num_.is_constant() && is_polynomial(); }
  Rational rational_value() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr pow(int k) const;

  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }

  Expr derivative(int id) const;
  Expr derivative(const std::string& name) const;

  /// Simultaneous exact substitution. Rational parameter bindings
  /// specialize the exponential rates in the result's registry; a rate that
  /// collapses to zero collapses its generator to exp(0) = 1 and removes it
  /// from the registry. Binding a generator's direction coordinate to zero
  /// collapses the generator to 1; other direction values leave it formal.
  /// Throws EvaluationPole when a denominator vanishes, and Unsupported
  /// when a non-rational binding reaches the rate of a generator the value
  /// actually uses.
  Expr substituted(const std::map<std::string, Expr>& bindings) const;

  /// Rebuilds the value over another registry, matching symbols by name.
  Expr converted(const VarSetPtr& target) const;

 private:
  Expr(VarSetPtr vs, Poly num, Poly den);
  void normalize();

  VarSetPtr vs_;
  Poly num_, den_;
};

}  // namespace qhl::sym
