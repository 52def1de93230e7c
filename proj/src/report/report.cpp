#include "report/report.hpp"

#include <sstream>

#include "sym/expr_io.hpp"

namespace qhl::report {

using geom::Mat3;
using geom::Metric3;
using geom::VectorField;
using sym::Expr;
using sym::to_string;
using sym::VarSetPtr;

namespace {

ordered_json varset_json(const VarSetPtr& vs) {
  ordered_json j;
  ordered_json coords = ordered_json::array();
  for (int id : vs->ids_of_kind(sym::SymbolKind::Coordinate)) coords.push_back(vs->name(id));
  j["coordinates"] = coords;
  ordered_json params = ordered_json::array();
  for (int id : vs->ids_of_kind(sym::SymbolKind::Parameter)) params.push_back(vs->name(id));
  j["parameters"] = params;
  ordered_json gens = ordered_json::array();
  for (const auto& gen : vs->exp_gens()) {
    ordered_json gj;
    gj["name"] = gen.name;
    gj["direction"] = vs->name(gen.direction);
    gj["rate"] = to_string(sym::rate_poly(vs.get(), gen));
    gens.push_back(gj);
  }
  j["exp_generators"] = gens;
  return j;
}

}  // namespace

ordered_json matrix3_json(const Mat3& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 3; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < 3; ++j)
      row.push_back(to_string(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    rows.push_back(row);
  }
  return rows;
}

ordered_json metric_json(const Metric3& g) {
  ordered_json j;
  j["object"] = "metric";
  j["registry"] = varset_json(g.varset());
  j["matrix"] = matrix3_json(g.entries());
  j["det"] = to_string(g.det());
  return j;
}

ordered_json inverse_json(const Metric3& g) {
  ordered_json j;
  j["object"] = "inverse_metric";
  j["metric"] = matrix3_json(g.entries());
  j["inverse"] = matrix3_json(geom::invert_metric(g));
  return j;
}

ordered_json christoffel_json(const Metric3& g) {
  geom::Christoffel ch = geom::christoffel(g);
  ordered_json j;
  j["object"] = "christoffel";
  j["index_order"] = "Gamma[m][i][j]: upper index first, arrays 0-based";
  ordered_json arr = ordered_json::array();
  for (int m = 0; m < 3; ++m) {
    ordered_json mi = ordered_json::array();
    for (int i = 0; i < 3; ++i) {
      ordered_json mij = ordered_json::array();
      for (int jj = 0; jj < 3; ++jj) mij.push_back(to_string(ch.at(m, i, jj)));
      mi.push_back(mij);
    }
    arr.push_back(mi);
  }
  j["Gamma"] = arr;
  return j;
}

ordered_json curvature_json(const Metric3& g) {
  geom::Riemann rm = geom::riemann(g);
  ordered_json j;
  j["object"] = "curvature";
  j["index_order"] = "R[s][i][j][k]: upper index first, arrays 0-based";
  ordered_json arr = ordered_json::array();
  for (int s = 0; s < 3; ++s) {
    ordered_json si = ordered_json::array();
    for (int i = 0; i < 3; ++i) {
      ordered_json sij = ordered_json::array();
      for (int jj = 0; jj < 3; ++jj) {
        ordered_json sijk = ordered_json::array();
        for (int k = 0; k < 3; ++k) sijk.push_back(to_string(rm.at(s, i, jj, k)));
        sij.push_back(sijk);
      }
      si.push_back(sij);
    }
    arr.push_back(si);
  }
  j["R"] = arr;
  return j;
}

ordered_json field_json(const VectorField& f) {
  return ordered_json::array({to_string(f.comp[0]), to_string(f.comp[1]), to_string(f.comp[2])});
}

ordered_json ansatz_json(const VarSetPtr& vs, const killing::AnsatzSpace& space) {
  ordered_json j;
  j["degree"] = space.degree;
  ordered_json gens = ordered_json::array();
  for (const auto& name : space.exp_names) {
    auto id = vs->index_of(name);
    ordered_json gj;
    gj["name"] = name;
    if (id && vs->exp_gen_of(*id)) {
      const auto* gen = vs->exp_gen_of(*id);
      gj["direction"] = vs->name(gen->direction);
      gj["rate"] = to_string(sym::rate_poly(vs.get(), *gen));
    }
    gens.push_back(gj);
  }
  j["exp_generators"] = gens;
  return j;
}

ordered_json killing_json(const Metric3& g, const killing::AnsatzSpace& space,
                          const killing::KillingBasis& basis) {
  ordered_json j;
  j["object"] = "killing_basis";
  j["metric"] = matrix3_json(g.entries());
  j["registry"] = varset_json(g.varset());
  j["ansatz"] = ansatz_json(g.varset(), space);
  j["dimension"] = basis.fields.size();
  ordered_json fields = ordered_json::array();
  for (const auto& f : basis.fields) fields.push_back(field_json(f));
  j["basis"] = fields;
  j["pivot_conditions"] = basis.pivot_conditions;
  return j;
}

ordered_json case_node_json(const killing::CaseNode& node) {
  ordered_json j;
  j["constraints"] = node.constraints;
  j["dimension"] = node.dimension;
  ordered_json fields = ordered_json::array();
  for (const auto& f : node.basis) fields.push_back(field_json(f));
  j["basis"] = fields;
  j["pivot_conditions"] = node.conditions;
  j["unresolved_conditions"] = node.unresolved;
  ordered_json children = ordered_json::array();
  for (const auto& ch : node.children) children.push_back(case_node_json(ch));
  j["cases"] = children;
  return j;
}

ordered_json algebra_json(const Metric3& g, const killing::AnsatzSpace& space,
                          const liealg::VectorFieldAlgebra& alg) {
  ordered_json j;
  j["object"] = "killing_algebra";
  j["metric"] = matrix3_json(g.entries());
  j["ansatz"] = ansatz_json(g.varset(), space);
  j["dimension"] = alg.dim();
  ordered_json fields = ordered_json::array();
  for (const auto& f : alg.basis) fields.push_back(field_json(f));
  j["basis"] = fields;

  auto sc = liealg::structure_constants(alg);
  ordered_json entries = ordered_json::array();
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t jj = i + 1; jj < alg.dim(); ++jj)
      for (std::size_t k = 0; k < alg.dim(); ++k) {
        if (sc.at(k, i, jj).is_zero()) continue;
        ordered_json e;
        e["i"] = i + 1;
        e["j"] = jj + 1;
        e["k"] = k + 1;
        e["c"] = to_string(sc.at(k, i, jj));
        entries.push_back(e);
      }
  j["structure_constants"] = entries;

  if (sc.all_rational()) {
    auto fp = liealg::fingerprint(sc);
    ordered_json fj;
    fj["dim"] = fp.dim;
    fj["derived_dims"] = fp.derived_dims;
    fj["center_dim"] = fp.center_dim;
    fj["killing_signature"] = fp.killing_signature;
    fj["unimodular"] = fp.unimodular;
    j["fingerprint"] = fj;
    j["algebra_name"] = liealg::classify_algebra(fp);
  } else {
    j["fingerprint"] = nullptr;
    j["algebra_name"] = "unresolved";
    j["note"] = "fingerprint requires rational structure constants; specialize the parameters";
  }
  return j;
}

ordered_json case_report_json(const classify::CaseReport& rep) {
  ordered_json j;
  j["object"] = "case_report";
  j["C"] = rep.c_text;
  j["D"] = rep.d_text;
  j["case_label"] = rep.case_label;
  j["killing_dim_within_ansatz"] = rep.killing_dim_within_ansatz;
  j["algebra_name"] = rep.algebra_name;
  if (rep.has_fingerprint) {
    ordered_json fj;
    fj["dim"] = rep.fingerprint.dim;
    fj["derived_dims"] = rep.fingerprint.derived_dims;
    fj["center_dim"] = rep.fingerprint.center_dim;
    fj["killing_signature"] = rep.fingerprint.killing_signature;
    fj["unimodular"] = rep.fingerprint.unimodular;
    j["fingerprint"] = fj;
  } else {
    j["fingerprint"] = nullptr;
  }
  j["homogeneity"] = rep.homogeneity;
  ordered_json locus;
  locus["empty"] = rep.degeneracy_empty;
  locus["conditions"] = rep.degeneracy_conditions;
  j["degeneracy_locus"] = locus;
  ordered_json basis = ordered_json::array();
  for (const auto& f : rep.basis) basis.push_back(field_json(f));
  j["basis"] = basis;
  ordered_json extras = ordered_json::array();
  for (const auto& f : rep.extra_fields) extras.push_back(field_json(f));
  j["extra_fields"] = extras;
  j["pivot_conditions"] = rep.pivot_conditions;
  ordered_json certs = ordered_json::array();
  for (const auto& c : rep.certifications) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["detail"] = c.detail;
    certs.push_back(cj);
  }
  j["certifications"] = certs;
  j["certified"] = rep.certified;
  if (rep.has_case_tree) j["case_tree"] = case_node_json(rep.case_tree);
  j["caveats"] = rep.caveats;
  return j;
}

ordered_json pde_json(const std::vector<killing::PdeProportionality>& rows) {
  ordered_json j;
  j["object"] = "pde_proportionality";
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json rj;
    rj["pair"] = r.pair;
    rj["multiple"] = sym::to_string(r.multiple);
    rj["reference"] = r.reference;
    arr.push_back(rj);
  }
  j["components"] = arr;
  return j;
}

std::string matrix3_text(const Mat3& m) {
  std::ostringstream os;
  for (int i = 0; i < 3; ++i) {
    os << "[ ";
    for (int j = 0; j < 3; ++j) {
      os << to_string(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      if (j < 2) os << ", ";
    }
    os << " ]\n";
  }
  return os.str();
}

std::string christoffel_text(const Metric3& g) {
  geom::Christoffel ch = geom::christoffel(g);
  std::ostringstream os;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        os << "Gamma^" << (m + 1) << "_" << (i + 1) << (j + 1) << " = "
           << to_string(ch.at(m, i, j)) << "\n";
  return os.str();
}

std::string curvature_text(const Metric3& g) {
  geom::Riemann rm = geom::riemann(g);
  std::ostringstream os;
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          if (rm.at(s, i, j, k).is_zero()) continue;
          os << "R^" << (s + 1) << "_" << (i + 1) << (j + 1) << (k + 1) << " = "
             << to_string(rm.at(s, i, j, k)) << "\n";
        }
  return os.str();
}

std::string killing_text(const Metric3& g, const killing::KillingBasis& basis) {
  (void)g;
  std::ostringstream os;
  os << "dimension " << basis.fields.size() << "\n";
  for (const auto& f : basis.fields)
    os << "  (" << to_string(f.comp[0]) << ", " << to_string(f.comp[1]) << ", "
       << to_string(f.comp[2]) << ")\n";
  if (!basis.pivot_conditions.empty()) {
    os << "pivot conditions:";
    for (const auto& c : basis.pivot_conditions) os << " " << c;
    os << "\n";
  }
  return os.str();
}

std::string case_node_text(const killing::CaseNode& node, int indent) {
  std::ostringstream os;
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad;
  if (node.constraints.empty()) {
    os << "generic:";
  } else {
    os << "case";
    for (const auto& c : node.constraints) os << " [" << c << "]";
    os << ":";
  }
  os << " dimension " << node.dimension;
  if (!node.conditions.empty()) {
    os << " assuming nonzero:";
    for (const auto& c : node.conditions) os << " " << c;
  }
  os << "\n";
  for (const auto& f : node.basis)
    os << pad << "  (" << to_string(f.comp[0]) << ", " << to_string(f.comp[1]) << ", "
       << to_string(f.comp[2]) << ")\n";
  for (const auto& ch : node.children) os << case_node_text(ch, indent + 1);
  return os.str();
}

std::string case_report_text(const classify::CaseReport& rep) {
  std::ostringstream os;
  os << "C = " << rep.c_text << ", D = " << rep.d_text << "\n";
  os << "case: " << rep.case_label << "\n";
  os << "killing dimension within ansatz: " << rep.killing_dim_within_ansatz << "\n";
  os << "algebra: " << rep.algebra_name << "\n";
  os << "homogeneity: " << rep.homogeneity << "\n";
  os << "degeneracy locus: ";
  if (rep.degeneracy_empty) {
    os << "empty\n";
  } else if (rep.degeneracy_conditions.empty()) {
    os << "none reported\n";
  } else {
    for (const auto& c : rep.degeneracy_conditions) os << "{" << c << " = 0} ";
    os << "\n";
  }
  os << "basis:\n";
  for (const auto& f : rep.basis)
    os << "  (" << to_string(f.comp[0]) << ", " << to_string(f.comp[1]) << ", "
       << to_string(f.comp[2]) << ")\n";
  if (!rep.extra_fields.empty()) {
    os << "exhibited fields:\n";
    for (const auto& f : rep.extra_fields)
      os << "  (" << to_string(f.comp[0]) << ", " << to_string(f.comp[1]) << ", "
         << to_string(f.comp[2]) << ")\n";
  }
  os << "certifications:\n";
  for (const auto& c : rep.certifications)
    os << "  " << (c.pass ? "pass" : "FAIL") << " " << c.name
       << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  os << (rep.certified ? "certified" : "NOT certified") << "\n";
  if (rep.has_case_tree) os << "case tree:\n" << case_node_text(rep.case_tree, 1);
  for (const auto& c : rep.caveats) os << "note: " << c << "\n";
  return os.str();
}

}  // namespace qhl::report
