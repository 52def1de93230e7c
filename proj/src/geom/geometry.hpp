#pragma once

#include <array>
#include <optional>
#include <vector>

#include "sym/expr.hpp"

namespace qhl::geom {

using sym::Expr;
using sym::Poly;
using sym::Rational;
using sym::VarSetPtr;

/// Vector field in the frame (d/dx, d/dh, d/dz).
struct VectorField {
  std::array<Expr, 3> comp;

  const VarSetPtr& varset() const { return comp[0].varset(); }
  VectorField converted(const VarSetPtr& target) const {
    return {{comp[0].converted(target), comp[1].converted(target), comp[2].converted(target)}};
  }
  bool is_zero() const { return comp[0].is_zero() && comp[1].is_zero() && comp[2].is_zero(); }
  bool operator==(const VectorField& o) const { return comp == o.comp; }
};

using Mat3 = std::array<std::array<Expr, 3>, 3>;

/// Symmetric 3x3 metric with exact entries and nonvanishing determinant.
class Metric3 {
 public:
  static Metric3 from_entries(const VarSetPtr& vs, const Mat3& g);
  /// The family [[1, D*z, 0], [D*z, C*z^2, 1], [0, 1, 0]].
  static Metric3 family(const VarSetPtr& vs, const Expr& c, const Expr& d);

  const VarSetPtr& varset() const { return vs_; }
  const Expr& at(int i, int j) const {
    return g_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  const Mat3& entries() const { return g_; }
  const Expr& det() const { return det_; }

  /// Inertia check of the value at the origin (coordinates at 0). nullopt
  /// when the entries do not evaluate to rationals there.
  std::optional<bool> lorentzian_at_origin() const;

 private:
  Metric3() = default;
  VarSetPtr vs_;
  Mat3 g_;
  Expr det_;
};

Expr det3(const Mat3& m);

/// Exact inverse; throws SingularMetric on identically singular input.
Mat3 invert_metric(const Metric3& g);
Mat3 invert_matrix(const Mat3& m);

/// Connection coefficients Gamma[m][i][j], symmetric in (i, j):
/// Gamma^m_ij = 1/2 sum_k (d_i g_jk + d_j g_ki - d_k g_ij) g^km.
struct Christoffel {
  std::array<std::array<std::array<Expr, 3>, 3>, 3> gamma;
  const Expr& at(int m, int i, int j) const {
    return gamma[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]
                [static_cast<std::size_t>(j)];
  }
};
Christoffel christoffel(const Metric3& g);

/// Curvature R[s][i][j][k] built as
/// R^s_ijk = sum_l G^l_ik G^s_jl - sum_l G^l_jk G^s_il + d_j G^s_ik - d_i G^s_jk.
struct Riemann {
  std::array<std::array<std::array<std::array<Expr, 3>, 3>, 3>, 3> r;
  const Expr& at(int s, int i, int j, int k) const {
    return r[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]
            [static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  }
};
Riemann riemann(const Metric3& g);

/// (L_T g)_ij = sum_m T^m d_m g_ij + (d_i T^m) g_mj + (d_j T^m) g_im.
Mat3 lie_derivative_metric(const VectorField& t, const Metric3& g);
/// Same formula on an arbitrary (possibly degenerate) symmetric tensor.
Mat3 lie_derivative_tensor(const VectorField& t, const Mat3& s, const VarSetPtr& vs);

struct FlatnessReport {
  bool flat = false;
  std::array<int, 4> witness_index{};  // (s,i,j,k), 0-based
  Expr witness;
};
FlatnessReport is_flat(const Metric3& g);

/// Common vanishing conditions of all curvature components as squarefree
/// coordinate polynomials (parameter factors treated as nonzero). The locus
/// is the set where every listed polynomial vanishes; empty_locus is set
/// when some component cannot vanish at all.
struct Locus {
  bool empty_locus = false;
  std::vector<Poly> conditions;
};
Locus curvature_vanishing_locus(const Metric3& g);

/// All Gamma^3_ij with i,j in the surface directions vanish on z=0.
bool totally_geodesic_z0(const Metric3& g);

/// nabla_Z Z = 0 symbolically.
bool geodesic_field_check(const Metric3& g, const VectorField& z);

}  // namespace qhl::geom
