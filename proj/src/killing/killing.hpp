#pragma once

#include <string>
#include <vector>

#include "geom/geometry.hpp"
#include "sym/linear.hpp"

namespace qhl::killing {

using geom::Metric3;
using geom::VectorField;
using sym::Expr;
using sym::Poly;
using sym::Rational;
using sym::VarSetPtr;

/// Search space for Killing fields: all coordinate monomials of total degree
/// <= degree, optionally multiplied by the named exponential generators of
/// the metric's registry.
struct AnsatzSpace {
  int degree = 2;
  std::vector<std::string> exp_names;
};

/// The ansatz realized over an extended registry with one unknown
/// coefficient per (component, basis function).
struct AnsatzBasis {
  VarSetPtr ext;
  std::vector<sym::Mono> functions;
  std::vector<int> unknown_ids;  // component-major: u[c*N + k]

  std::size_t function_count() const { return functions.size(); }
  std::size_t dimension() const { return unknown_ids.size(); }
  VectorField generic_field() const;
};

AnsatzBasis realize_ansatz(const Metric3& g, const AnsatzSpace& space);

/// The linear system equivalent to L_T g == 0 over the ansatz, rows labeled
/// by metric index pair and coordinate monomial.
sym::LinearSystem killing_equations(const Metric3& g, const AnsatzBasis& basis);

struct KillingBasis {
  std::vector<VectorField> fields;              // RREF-normalized, over the metric registry
  std::vector<std::string> pivot_conditions;    // genericity assumptions (canonical strings)
  int system_rank = 0;
};

/// Exact kernel of the Killing equations over the ansatz. Every returned
/// field is re-checked against lie_derivative_metric.
KillingBasis solve_killing(const Metric3& g, const AnsatzSpace& space);

struct KillingVerdict {
  bool killing = false;
  geom::Mat3 residual;
};
KillingVerdict verify_killing(const Metric3& g, const VectorField& t);

/// Case tree for symbolic parameters: the generic leaf plus branches where a
/// recorded pivot condition with a parameter-linear factor is forced to
/// vanish. Branching substitutes the parameter and re-solves.
struct CaseNode {
  std::vector<std::string> constraints;   // path of substitutions, e.g. "D = 0"
  std::vector<std::string> conditions;    // remaining genericity assumptions
  int dimension = 0;
  std::vector<VectorField> basis;
  std::vector<std::string> unresolved;    // conditions that could not be branched on
  std::vector<CaseNode> children;
};
CaseNode solve_killing_cases(const Metric3& g, const AnsatzSpace& space, int max_depth = 3);

/// Proportionality between the engine's Lie-derivative components and the
/// reference first-order system for the metric family, checked on a generic
/// cubic ansatz. Throws PdeMismatch when a component is not an exact
/// rational multiple of its reference equation.
struct PdeProportionality {
  std::string pair;       // e.g. "(dz,dz)"
  std::string reference;  // canonical form of the reference equation
  Rational multiple;      // component == multiple * reference
};
std::vector<PdeProportionality> reference_pde_report();

}  // namespace qhl::killing
