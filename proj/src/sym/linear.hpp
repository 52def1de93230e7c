#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sym/expr.hpp"

namespace qhl::sym {

/// One exact linear constraint  sum_i a[i]*u_i + rhs = 0  with entries in
/// Q[parameters], labeled by where it came from.
struct LinRow {
  std::vector<Poly> a;
  Poly rhs;
  std::string entry_provenance;
  std::string monomial_provenance;
};

struct LinearSystem {
  VarSetPtr vs;
  std::vector<int> unknown_ids;
  std::vector<LinRow> rows;
};

/// Matches coefficients of every coordinate monomial x generator power in an
/// identity e == 0, yielding exact constraints on the unknowns. Throws
/// NonlinearSystem when an unknown occurs with degree > 1 (or two unknowns
/// multiply), or when a denominator involves an unknown.
LinearSystem coefficient_system(const Expr& e, const std::vector<int>& unknowns,
                                const std::string& entry_provenance = "");
void append_coefficient_rows(LinearSystem& sys, const Expr& e,
                             const std::string& entry_provenance);

/// Splits a pivot polynomial into vanishing conditions: monomial symbol
/// factors and the remaining squarefree primitive part. Exponential
/// generator factors never vanish and are dropped.
std::vector<Poly> split_vanishing_conditions(const Poly& p);

struct NullspaceResult {
  std::vector<std::vector<Expr>> basis;  // RREF-normalized kernel vectors
  std::vector<Poly> pivot_conditions;    // deduplicated, canonical order
  int rank = 0;
};

/// Exact kernel of the homogeneous part. Fraction-free forward elimination
/// over Q[parameters] with a deterministic pivot rule; every non-constant
/// pivot is recorded as a genericity condition.
NullspaceResult nullspace(const LinearSystem& sys);

struct RankResult {
  int rank = 0;
  std::vector<Poly> conditions;
};

/// Generic rank of a matrix of expressions (pivots assumed nonzero off the
/// recorded loci).
RankResult exact_rank(const VarSetPtr& vs, const std::vector<std::vector<Expr>>& m);

/// Unique exact solution of A x = b over the expression field; nullopt when
/// inconsistent. Requires full column rank.
std::optional<std::vector<Expr>> linear_solve(const VarSetPtr& vs,
                                              std::vector<std::vector<Expr>> a,
                                              std::vector<Expr> b);

/// Dense rational matrix with exact elementary operations.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  int rref();  // in place, returns rank
  std::vector<std::vector<Rational>> nullspace() const;
  int rank() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Inertia (positive, negative, zero) of a symmetric rational matrix via
/// exact congruence diagonalization.
std::array<int, 3> symmetric_inertia(QMatrix s);

}  // namespace qhl::sym
