#include "qhlorentz/qhl.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>

#include "classify/classify.hpp"
#include "report/report.hpp"
#include "sym/errors.hpp"
#include "sym/expr_io.hpp"
#include "verify/verify.hpp"

using qhl::Errc;
using qhl::classify::CaseReport;
using qhl::geom::Metric3;
using qhl::sym::Expr;
using qhl::sym::Rational;
using qhl::sym::VarSet;
using qhl::sym::VarSetPtr;

struct qhl_ring {
  VarSetPtr vs;
};
struct qhl_expr {
  Expr e;
};
struct qhl_metric {
  Metric3 g;
  std::optional<Rational> c, d;
};

namespace {

thread_local std::string t_last_error;

qhl_status status_of(Errc c) {
  switch (c) {
    case Errc::Parse: return QHL_ERR_PARSE;
    case Errc::DivisionByZero: return QHL_ERR_DIVISION_BY_ZERO;
    case Errc::UnknownVariable: return QHL_ERR_UNKNOWN_VARIABLE;
    case Errc::EvaluationPole: return QHL_ERR_EVALUATION_POLE;
    case Errc::NonlinearSystem: return QHL_ERR_NONLINEAR_SYSTEM;
    case Errc::SingularMetric: return QHL_ERR_SINGULAR_METRIC;
    case Errc::FlatMetric: return QHL_ERR_FLAT_METRIC;
    case Errc::Unsupported: return QHL_ERR_UNSUPPORTED;
    case Errc::NotAnAlgebra: return QHL_ERR_NOT_AN_ALGEBRA;
    case Errc::WrongCase: return QHL_ERR_WRONG_CASE;
    case Errc::PdeMismatch: return QHL_ERR_PDE_MISMATCH;
    case Errc::IrrationalDensity: return QHL_ERR_IRRATIONAL_DENSITY;
    case Errc::InvalidArgument: return QHL_ERR_INVALID_ARGUMENT;
    case Errc::Internal: return QHL_ERR_INTERNAL;
  }
  return QHL_ERR_INTERNAL;
}

template <typename Fn>
qhl_status guarded(Fn&& fn) {
  try {
    fn();
    return QHL_OK;
  } catch (const qhl::Error& err) {
    t_last_error = err.what();
    return status_of(err.code());
  } catch (const std::exception& err) {
    t_last_error = err.what();
    return QHL_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return QHL_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::optional<Rational> parse_c_or_d(const char* text, const char* which) {
  std::string t = text ? text : "sym";
  if (t == "sym") return std::nullopt;
  auto r = qhl::sym::parse_rational(t);
  if (!r)
    qhl::fail(Errc::Parse, std::string(which) + " must be an exact rational (p or p/q) or \"sym\"");
  return *r;
}

std::string render(const nlohmann::ordered_json& j, int as_json, const std::string& text) {
  return as_json ? j.dump(2) + "\n" : text;
}

}  // namespace

extern "C" {

const char* qhl_version(void) { return "1.0.0"; }

const char* qhl_status_name(qhl_status status) {
  switch (status) {
    case QHL_OK: return "ok";
    case QHL_ERR_PARSE: return "parse-error";
    case QHL_ERR_DIVISION_BY_ZERO: return "division-by-zero";
    case QHL_ERR_UNKNOWN_VARIABLE: return "unknown-variable";
    case QHL_ERR_EVALUATION_POLE: return "evaluation-pole";
    case QHL_ERR_NONLINEAR_SYSTEM: return "nonlinear-system";
    case QHL_ERR_SINGULAR_METRIC: return "singular-metric";
    case QHL_ERR_FLAT_METRIC: return "flat-metric";
    case QHL_ERR_UNSUPPORTED: return "unsupported";
    case QHL_ERR_NOT_AN_ALGEBRA: return "not-an-algebra";
    case QHL_ERR_WRONG_CASE: return "wrong-case";
    case QHL_ERR_PDE_MISMATCH: return "pde-mismatch";
    case QHL_ERR_IRRATIONAL_DENSITY: return "irrational-density";
    case QHL_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case QHL_ERR_VERIFY_FAILED: return "verify-failed";
    case QHL_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* qhl_last_error(void) { return t_last_error.c_str(); }

void qhl_string_free(char* s) { std::free(s); }

qhl_status qhl_ring_create(int with_parameters, qhl_ring** out) {
  return guarded([&] { *out = new qhl_ring{VarSet::chart(with_parameters != 0)}; });
}

qhl_status qhl_ring_add_exp_generator(qhl_ring* ring, const char* name, const char* direction,
                                      const char* rate, qhl_ring** out) {
  return guarded([&] {
    Expr r = qhl::sym::parse_expr(ring->vs, rate);
    if (!r.is_polynomial())
      qhl::fail(Errc::InvalidArgument, "generator rate must be a polynomial in the parameters");
    VarSet::ExpGenSpec spec;
    spec.name = name;
    spec.direction = direction;
    for (const auto& t : r.num().terms()) {
      std::map<std::string, int> mono;
      for (std::size_t s = 0; s < t.m.e.size(); ++s)
        if (t.m.e[s] != 0) mono[ring->vs->name(static_cast<int>(s))] = t.m.e[s];
      spec.rate.emplace_back(t.c, std::move(mono));
    }
    *out = new qhl_ring{ring->vs->with_exp_generator(spec)};
  });
}

void qhl_ring_free(qhl_ring* ring) { delete ring; }

qhl_status qhl_expr_parse(const qhl_ring* ring, const char* text, qhl_expr** out) {
  return guarded([&] { *out = new qhl_expr{qhl::sym::parse_expr(ring->vs, text)}; });
}

qhl_status qhl_expr_print(const qhl_expr* e, char** out) {
  return guarded([&] { *out = dup_string(qhl::sym::to_string(e->e)); });
}

qhl_status qhl_expr_arith(const qhl_expr* a, const qhl_expr* b, char op, qhl_expr** out) {
  return guarded([&] {
    switch (op) {
      case '+': *out = new qhl_expr{a->e + b->e}; return;
      case '-': *out = new qhl_expr{a->e - b->e}; return;
      case '*': *out = new qhl_expr{a->e * b->e}; return;
      case '/': *out = new qhl_expr{a->e / b->e}; return;
      default: qhl::fail(Errc::InvalidArgument, "op must be one of + - * /");
    }
  });
}

qhl_status qhl_expr_differentiate(const qhl_expr* e, const char* symbol, qhl_expr** out) {
  return guarded([&] { *out = new qhl_expr{e->e.derivative(symbol)}; });
}

qhl_status qhl_expr_substitute(const qhl_expr* e, const char* const* symbols,
                               const char* const* values, size_t n, qhl_expr** out) {
  return guarded([&] {
    std::map<std::string, Expr> bind;
    for (size_t i = 0; i < n; ++i)
      bind.emplace(symbols[i], qhl::sym::parse_expr(e->e.varset(), values[i]));
    *out = new qhl_expr{e->e.substituted(bind)};
  });
}

int qhl_expr_is_zero(const qhl_expr* e) { return e->e.is_zero() ? 1 : 0; }

int qhl_expr_equal(const qhl_expr* a, const qhl_expr* b) { return a->e == b->e ? 1 : 0; }

void qhl_expr_free(qhl_expr* e) { delete e; }

qhl_status qhl_metric_family(const char* c, const char* d, int adjoin_exp, qhl_metric** out) {
  return guarded([&] {
    auto cv = parse_c_or_d(c, "C");
    auto dv = parse_c_or_d(d, "D");
    *out = new qhl_metric{qhl::classify::family_metric(cv, dv, adjoin_exp != 0), cv, dv};
  });
}

qhl_status qhl_metric_entry(const qhl_metric* g, int i, int j, char** out) {
  return guarded([&] {
    if (i < 0 || i > 2 || j < 0 || j > 2)
      qhl::fail(Errc::InvalidArgument, "metric indices must be 0..2");
    *out = dup_string(qhl::sym::to_string(g->g.at(i, j)));
  });
}

void qhl_metric_free(qhl_metric* g) { delete g; }

qhl_status qhl_invert_report(const char* c, const char* d, int as_json, char** out) {
  return guarded([&] {
    Metric3 g = qhl::classify::family_metric(parse_c_or_d(c, "C"), parse_c_or_d(d, "D"), false);
    *out = dup_string(render(qhl::report::inverse_json(g), as_json,
                             qhl::report::matrix3_text(qhl::geom::invert_metric(g))));
  });
}

qhl_status qhl_christoffel_report(const char* c, const char* d, int as_json, char** out) {
  return guarded([&] {
    Metric3 g = qhl::classify::family_metric(parse_c_or_d(c, "C"), parse_c_or_d(d, "D"), false);
    *out = dup_string(
        render(qhl::report::christoffel_json(g), as_json, qhl::report::christoffel_text(g)));
  });
}

qhl_status qhl_curvature_report(const char* c, const char* d, int as_json, char** out) {
  return guarded([&] {
    Metric3 g = qhl::classify::family_metric(parse_c_or_d(c, "C"), parse_c_or_d(d, "D"), false);
    *out = dup_string(
        render(qhl::report::curvature_json(g), as_json, qhl::report::curvature_text(g)));
  });
}

qhl_status qhl_killing_report(const char* c, const char* d, int degree, int adjoin_exp,
                              int as_json, char** out) {
  return guarded([&] {
    auto cv = parse_c_or_d(c, "C");
    auto dv = parse_c_or_d(d, "D");
    Metric3 g = qhl::classify::family_metric(cv, dv, adjoin_exp != 0);
    qhl::killing::AnsatzSpace space;
    space.degree = degree;
    if (adjoin_exp) space.exp_names = {"E"};
    auto basis = qhl::killing::solve_killing(g, space);
    auto j = qhl::report::killing_json(g, space, basis);
    std::string text = qhl::report::killing_text(g, basis);
    if (!cv || !dv) {
      auto tree = qhl::killing::solve_killing_cases(g, space);
      j["case_tree"] = qhl::report::case_node_json(tree);
      text += "case tree:\n" + qhl::report::case_node_text(tree, 1);
    }
    *out = dup_string(render(j, as_json, text));
  });
}

qhl_status qhl_algebra_report(const char* c, const char* d, int degree, int adjoin_exp,
                              int as_json, char** out) {
  return guarded([&] {
    auto cv = parse_c_or_d(c, "C");
    auto dv = parse_c_or_d(d, "D");
    Metric3 g = qhl::classify::family_metric(cv, dv, adjoin_exp != 0);
    qhl::killing::AnsatzSpace space;
    space.degree = degree;
    if (adjoin_exp) space.exp_names = {"E"};
    auto basis = qhl::killing::solve_killing(g, space);
    auto alg = qhl::liealg::make_algebra(g.varset(), basis.fields);
    auto j = qhl::report::algebra_json(g, space, alg);
    *out = dup_string(render(j, as_json, j.dump(2) + "\n"));
  });
}

qhl_status qhl_classify_report(const char* c, const char* d, int as_json, char** out) {
  bool certified = false;
  qhl_status rc = guarded([&] {
    CaseReport rep = qhl::classify::classify_family(parse_c_or_d(c, "C"), parse_c_or_d(d, "D"));
    certified = rep.certified;
    if (!certified) {
      for (const auto& item : rep.certifications)
        if (!item.pass) {
          t_last_error = "certification failed: " + item.name +
                         (item.detail.empty() ? "" : " (" + item.detail + ")");
          break;
        }
    }
    *out = dup_string(
        render(qhl::report::case_report_json(rep), as_json, qhl::report::case_report_text(rep)));
  });
  if (rc != QHL_OK) return rc;
  return certified ? QHL_OK : QHL_ERR_VERIFY_FAILED;
}

qhl_status qhl_verify_paper(int as_json, char** out) {
  bool pass = false;
  qhl_status rc = guarded([&] {
    auto rep = qhl::verify::run_suite();
    pass = rep.pass;
    nlohmann::ordered_json j;
    j["object"] = "verify_report";
    j["pass"] = rep.pass;
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    std::ostringstream text;
    for (const auto& item : rep.items) {
      nlohmann::ordered_json ij;
      ij["name"] = item.name;
      ij["pass"] = item.pass;
      ij["detail"] = item.detail;
      items.push_back(ij);
      text << (item.pass ? "PASS " : "FAIL ") << item.name
           << (item.detail.empty() ? "" : "  [" + item.detail + "]") << "\n";
    }
    j["items"] = items;
    text << (rep.pass ? "all items passed" : "verification FAILED") << "\n";
    *out = dup_string(render(j, as_json, text.str()));
    if (!rep.pass) {
      for (const auto& item : rep.items)
        if (!item.pass) {
          t_last_error = "verification mismatch: " + item.name +
                         (item.detail.empty() ? "" : " (" + item.detail + ")");
          break;
        }
    }
  });
  if (rc != QHL_OK) return rc;
  return pass ? QHL_OK : QHL_ERR_VERIFY_FAILED;
}

} /* extern "C" */
