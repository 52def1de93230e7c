// Command-line driver; talks to the engine exclusively through the C API in
// qhlorentz/qhl.h. Exit codes: 0 success, 1 verification mismatch, 2 bad
// usage or parse errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qhlorentz/qhl.h"

namespace {

struct CommonOpts {
  std::string c = "sym";
  std::string d = "sym";
  int degree = 2;
  bool adjoin_exp = false;
  std::string format = "text";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_ansatz) {
  cmd->add_option("--C", o.c, "parameter C: exact rational (p or p/q) or \"sym\"")
      ->capture_default_str();
  cmd->add_option("--D", o.d, "parameter D: exact rational (p or p/q) or \"sym\"")
      ->capture_default_str();
  if (with_ansatz) {
    cmd->add_option("--degree", o.degree, "ansatz degree bound")->capture_default_str();
    cmd->add_flag("--exp", o.adjoin_exp, "adjoin the generator E = exp(-D*x)");
  }
  cmd->add_option("--format", o.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out_path, "write the report to a file instead of stdout");
}

int emit(const CommonOpts& o, qhl_status rc, char* text) {
  if (rc != QHL_OK && text == nullptr) {
    std::cerr << "error (" << qhl_status_name(rc) << "): " << qhl_last_error() << "\n";
    return rc == QHL_ERR_VERIFY_FAILED ? 1 : 2;
  }
  if (o.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << o.out_path << "\n";
      qhl_string_free(text);
      return 2;
    }
    f << text;
  }
  qhl_string_free(text);
  if (rc == QHL_ERR_VERIFY_FAILED) {
    std::cerr << "error (" << qhl_status_name(rc) << "): " << qhl_last_error() << "\n";
    return 1;
  }
  return rc == QHL_OK ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact curvature, Killing-field and Lie-algebra computations for the metric "
               "family g = dx^2 + dh dz + C z^2 dh^2 + D z dx dh"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  CommonOpts o;
  auto* cmd_christoffel = app.add_subcommand("christoffel", "connection coefficients");
  add_common(cmd_christoffel, o, false);
  auto* cmd_curvature = app.add_subcommand("curvature", "curvature components");
  add_common(cmd_curvature, o, false);
  auto* cmd_invert = app.add_subcommand("invert", "inverse metric");
  add_common(cmd_invert, o, false);
  auto* cmd_killing = app.add_subcommand("killing", "solve the Killing equations over the ansatz");
  add_common(cmd_killing, o, true);
  auto* cmd_algebra = app.add_subcommand("algebra", "structure constants and fingerprint of the "
                                                    "solved Killing algebra");
  add_common(cmd_algebra, o, true);
  auto* cmd_classify = app.add_subcommand("classify", "case report for exact (C, D), or the case "
                                                      "tree in symbolic mode");
  add_common(cmd_classify, o, false);
  auto* cmd_verify = app.add_subcommand("verify-paper", "run the full reference suite");
  add_common(cmd_verify, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const int as_json = (o.format == "json") ? 1 : 0;
  char* text = nullptr;
  qhl_status rc = QHL_OK;
  if (cmd_christoffel->parsed()) {
    rc = qhl_christoffel_report(o.c.c_str(), o.d.c_str(), as_json, &text);
  } else if (cmd_curvature->parsed()) {
    rc = qhl_curvature_report(o.c.c_str(), o.d.c_str(), as_json, &text);
  } else if (cmd_invert->parsed()) {
    rc = qhl_invert_report(o.c.c_str(), o.d.c_str(), as_json, &text);
  } else if (cmd_killing->parsed()) {
    rc = qhl_killing_report(o.c.c_str(), o.d.c_str(), o.degree, o.adjoin_exp ? 1 : 0, as_json,
                            &text);
  } else if (cmd_algebra->parsed()) {
    rc = qhl_algebra_report(o.c.c_str(), o.d.c_str(), o.degree, o.adjoin_exp ? 1 : 0, as_json,
                            &text);
  } else if (cmd_classify->parsed()) {
    rc = qhl_classify_report(o.c.c_str(), o.d.c_str(), as_json, &text);
  } else if (cmd_verify->parsed()) {
    rc = qhl_verify_paper(as_json, &text);
  }
  return emit(o, rc, text);
}
