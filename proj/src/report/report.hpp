#pragma once

#include <string>

#include <json.hpp>

#include "classify/classify.hpp"

namespace qhl::report {

using ordered_json = nlohmann::ordered_json;

// JSON shapes are documented in the README; all numeric values are exact
// canonical strings, never floats.
ordered_json metric_json(const geom::Metric3& g);
ordered_json matrix3_json(const geom::Mat3& m);
ordered_json inverse_json(const geom::Metric3& g);
ordered_json christoffel_json(const geom::Metric3& g);
ordered_json curvature_json(const geom::Metric3& g);
ordered_json field_json(const geom::VectorField& f);
ordered_json ansatz_json(const sym::VarSetPtr& vs, const killing::AnsatzSpace& space);
ordered_json killing_json(const geom::Metric3& g, const killing::AnsatzSpace& space,
                          const killing::KillingBasis& basis);
ordered_json case_node_json(const killing::CaseNode& node);
ordered_json algebra_json(const geom::Metric3& g, const killing::AnsatzSpace& space,
                          const liealg::VectorFieldAlgebra& alg);
ordered_json case_report_json(const classify::CaseReport& rep);
ordered_json pde_json(const std::vector<killing::PdeProportionality>& rows);

std::string matrix3_text(const geom::Mat3& m);
std::string christoffel_text(const geom::Metric3& g);
std::string curvature_text(const geom::Metric3& g);
std::string killing_text(const geom::Metric3& g, const killing::KillingBasis& basis);
std::string case_node_text(const killing::CaseNode& node, int indent = 0);
std::string case_report_text(const classify::CaseReport& rep);

}  // namespace qhl::report
