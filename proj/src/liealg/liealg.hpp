#pragma once

#include <array>
#include <string>
#include <vector>

#include "geom/geometry.hpp"
#include "sym/linear.hpp"

namespace qhl::liealg {

using geom::Metric3;
using geom::VectorField;
using sym::Expr;
using sym::QMatrix;
using sym::Rational;
using sym::VarSetPtr;

/// [A,B] acting on coordinate functions: [A,B]^m = A^i d_i B^m - B^i d_i A^m.
VectorField bracket(const VectorField& a, const VectorField& b);

/// Finite-dimensional algebra of vector fields; the basis is validated to be
/// linearly independent over constants.
struct VectorFieldAlgebra {
  VarSetPtr vs;
  std::vector<VectorField> basis;

  std::size_t dim() const { return basis.size(); }
};
VectorFieldAlgebra make_algebra(const VarSetPtr& vs, std::vector<VectorField> basis);

/// Constant coefficients against a list of fields: solves f = sum c_i b_i by
/// coefficient matching; nullopt when f is outside the span.
std::optional<std::vector<Expr>> span_coordinates(const std::vector<VectorField>& basis,
                                                  const VectorField& f);
bool span_contains(const std::vector<VectorField>& basis, const VectorField& f);
bool spans_equal(const std::vector<VectorField>& a, const std::vector<VectorField>& b);

/// c[k](i,j) with [e_i, e_j] = sum_k c_k e_k; exact, antisymmetry and Jacobi
/// verified. Entries are rational for specialized parameters.
class StructureConstants {
 public:
  StructureConstants(std::size_t n, const VarSetPtr& vs);
  std::size_t dim() const { return n_; }
  const Expr& at(std::size_t k, std::size_t i, std::size_t j) const {
    return c_[(k * n_ + i) * n_ + j];
  }
  Expr& at(std::size_t k, std::size_t i, std::size_t j) { return c_[(k * n_ + i) * n_ + j]; }
  bool all_rational() const;
  Rational rat(std::size_t k, std::size_t i, std::size_t j) const;

 private:
  std::size_t n_;
  std::vector<Expr> c_;
};
StructureConstants structure_constants(const VectorFieldAlgebra& a);

struct AlgebraFingerprint {
  int dim = 0;
  std::vector<int> derived_dims;        // starts at dim, weakly decreasing
  int center_dim = 0;
  std::array<int, 3> killing_signature{0, 0, 0};  // inertia (pos, neg, zero)
  bool unimodular = false;

  bool solvable() const { return !derived_dims.empty() && derived_dims.back() == 0; }
};
/// Requires rational structure constants.
AlgebraFingerprint fingerprint(const StructureConstants& sc);
AlgebraFingerprint fingerprint(const VectorFieldAlgebra& a);

/// Catalog name when the fingerprint pins one of the known algebras, else
/// "unresolved". Names: abelian, R+aff(R), heisenberg, sl(2,R), so(3),
/// R+sl(2,R), solvable-dim-4, flat-lorentz-dim-6.
std::string classify_algebra(const AlgebraFingerprint& fp);

using Point = std::array<Rational, 3>;

std::array<Expr, 3> evaluate_field_at(const VectorField& f, const Point& p);
int evaluation_rank_at(const VectorFieldAlgebra& a, const Point& p);

/// det(basis components) times the metric volume density |det g|^(1/2);
/// throws IrrationalDensity when the density is not an exact rational
/// function, and requires a 3-dimensional algebra.
Expr volume_function(const VectorFieldAlgebra& a, const Metric3& g);

enum class IsotropyType { Trivial, SemiSimpleReal, Unipotent, Elliptic, HigherDimensional, Unresolved };
const char* isotropy_type_name(IsotropyType t);

struct IsotropyReport {
  Point point{};
  std::vector<VectorField> isotropy_basis;
  bool has_linearization = false;
  QMatrix linearization;  // Jacobian of the generator at the point
  IsotropyType type = IsotropyType::Trivial;
};
IsotropyReport isotropy_at(const VectorFieldAlgebra& a, const Point& p);

}  // namespace qhl::liealg
