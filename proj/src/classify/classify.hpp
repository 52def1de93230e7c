#pragma once

#include <optional>
#include <string>
#include <vector>

#include "killing/killing.hpp"
#include "liealg/liealg.hpp"

namespace qhl::classify {

using geom::Metric3;
using geom::VectorField;
using killing::AnsatzSpace;
using sym::Expr;
using sym::Rational;
using sym::VarSetPtr;

struct CertificationItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Full per-case record for the metric family: exact case split on the
/// vanishing of C and D, Killing basis within the default ansatz, algebra
/// identification, degeneracy locus and the per-case cross-checks.
struct CaseReport {
  std::string c_text, d_text;
  std::optional<Rational> c_value, d_value;
  std::string case_label;  // "i".."iv", or "symbolic"
  int killing_dim_within_ansatz = 0;
  std::string algebra_name;
  bool has_fingerprint = false;
  liealg::AlgebraFingerprint fingerprint;
  std::string homogeneity;  // locally-homogeneous | quasihomogeneous-evidence | flat
  bool locus_known = false;
  bool degeneracy_empty = false;
  std::vector<std::string> degeneracy_conditions;
  std::vector<VectorField> basis;
  std::vector<VectorField> extra_fields;
  std::vector<std::string> pivot_conditions;
  std::vector<std::string> caveats;
  std::vector<CertificationItem> certifications;
  bool certified = false;
  bool has_case_tree = false;
  killing::CaseNode case_tree;
  AnsatzSpace ansatz;
};

/// Default search space: degree 2, with e^{-Dx} adjoined in the C=0, D!=0
/// case (and in symbolic mode when requested).
AnsatzSpace default_ansatz_for(const std::optional<Rational>& c, const std::optional<Rational>& d);

/// Metric of the family over a fresh registry. Symbolic slots keep C,D as
/// parameters; rational slots are substituted. adjoin_exp attaches the
/// generator e^{-Dx} (name "E").
Metric3 family_metric(const std::optional<Rational>& c, const std::optional<Rational>& d,
                      bool adjoin_exp);

CaseReport classify_family(const std::optional<Rational>& c, const std::optional<Rational>& d);

/// T = a*h dx + 1/2*b*h^2 dh + (-b*z*h - a/D) dz with b = a(D - C/D).
/// Throws DivisionByZero when D == 0.
VectorField case_iii_field(const VarSetPtr& vs, const Rational& c, const Rational& d,
                           const Rational& a);

/// The D = 0 counterpart: 1/2*C*h^2 dh + (1 - C*z*h) dz, a Killing field of
/// g_{C,0} that completes <dx, dh, h dh - z dz> to R + sl(2,R).
VectorField case_i_field(const VarSetPtr& vs, const Rational& c);

/// e^{-Dx} dz over a registry carrying the generator; degenerate at D == 0.
VectorField case_ii_field(const Rational& d);
VectorField case_ii_field_over(const VarSetPtr& vs_with_gen);

/// Induced 2x2 form on span(dx, dh) at the slice z = z0 (default the
/// surface z = 0).
std::array<std::array<Expr, 2>, 2> restrict_metric_to_surface(const Metric3& g,
                                                              const Rational& z0 = Rational(0));

struct Certificate {
  bool pass = false;
  std::vector<CertificationItem> items;
};

/// Evidence bundle for the quasihomogeneous case g_{C,0}, C != 0: basis span,
/// algebra type, rank drop on z=0, curvature locus, volume function,
/// isotropy linearization, totally geodesic surface, induced form, and
/// preservation of the flat member g_0. Throws WrongCase when C == 0.
Certificate quasihomogeneous_certificate(const Rational& c);

/// Sample grid {-1,0,1}^3 used by homogeneity certifications.
std::vector<liealg::Point> sample_grid();

}  // namespace qhl::classify
