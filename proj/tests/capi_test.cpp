#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>
#include <thread>
#include <vector>

#include "qhlorentz/qhl.h"

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out = s;
  qhl_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("ring and expression lifecycle") {
  qhl_ring* ring = nullptr;
  REQUIRE(qhl_ring_create(1, &ring) == QHL_OK);

  qhl_expr* a = nullptr;
  REQUIRE(qhl_expr_parse(ring, "C*z^2 - 1/4*D^2", &a) == QHL_OK);
  char* text = nullptr;
  REQUIRE(qhl_expr_print(a, &text) == QHL_OK);
  CHECK(take(text) == "C*z^2 - 1/4*D^2");

  qhl_expr* b = nullptr;
  REQUIRE(qhl_expr_parse(ring, "z^2", &b) == QHL_OK);
  qhl_expr* q = nullptr;
  REQUIRE(qhl_expr_arith(a, b, '/', &q) == QHL_OK);
  qhl_expr* back = nullptr;
  REQUIRE(qhl_expr_arith(q, b, '*', &back) == QHL_OK);
  CHECK(qhl_expr_equal(back, a) == 1);

  qhl_expr* da = nullptr;
  REQUIRE(qhl_expr_differentiate(a, "z", &da) == QHL_OK);
  REQUIRE(qhl_expr_print(da, &text) == QHL_OK);
  CHECK(take(text) == "2*C*z");

  const char* syms[] = {"C", "D", "z"};
  const char* vals[] = {"1", "1", "2"};
  qhl_expr* sub = nullptr;
  qhl_expr* diff2 = nullptr;
  REQUIRE(qhl_expr_parse(ring, "(D^2 - C)*z^2", &diff2) == QHL_OK);
  REQUIRE(qhl_expr_substitute(diff2, syms, vals, 3, &sub) == QHL_OK);
  CHECK(qhl_expr_is_zero(sub) == 1);

  // error paths surface codes and messages
  qhl_expr* bad = nullptr;
  CHECK(qhl_expr_parse(ring, "nope", &bad) == QHL_ERR_UNKNOWN_VARIABLE);
  CHECK(std::string(qhl_last_error()).find("nope") != std::string::npos);
  CHECK(qhl_expr_parse(ring, "x + ", &bad) == QHL_ERR_PARSE);
  qhl_expr* zero = nullptr;
  REQUIRE(qhl_expr_parse(ring, "0", &zero) == QHL_OK);
  qhl_expr* div = nullptr;
  CHECK(qhl_expr_arith(a, zero, '/', &div) == QHL_ERR_DIVISION_BY_ZERO);

  qhl_expr_free(zero);
  qhl_expr_free(diff2);
  qhl_expr_free(sub);
  qhl_expr_free(da);
  qhl_expr_free(back);
  qhl_expr_free(q);
  qhl_expr_free(b);
  qhl_expr_free(a);
  qhl_ring_free(ring);
}

TEST_CASE("exponential generators through the C surface") {
  qhl_ring* base = nullptr;
  REQUIRE(qhl_ring_create(1, &base) == QHL_OK);
  qhl_ring* ring = nullptr;
  REQUIRE(qhl_ring_add_exp_generator(base, "E", "x", "-D", &ring) == QHL_OK);

  qhl_expr* e = nullptr;
  REQUIRE(qhl_expr_parse(ring, "E", &e) == QHL_OK);
  qhl_expr* de = nullptr;
  REQUIRE(qhl_expr_differentiate(e, "x", &de) == QHL_OK);
  char* text = nullptr;
  REQUIRE(qhl_expr_print(de, &text) == QHL_OK);
  CHECK(take(text) == "-D*E");

  qhl_expr_free(de);
  qhl_expr_free(e);
  qhl_ring_free(ring);
  qhl_ring_free(base);
}

TEST_CASE("metric handles") {
  qhl_metric* g = nullptr;
  REQUIRE(qhl_metric_family("sym", "sym", 0, &g) == QHL_OK);
  char* text = nullptr;
  REQUIRE(qhl_metric_entry(g, 1, 1, &text) == QHL_OK);
  CHECK(take(text) == "C*z^2");
  CHECK(qhl_metric_entry(g, 3, 0, &text) == QHL_ERR_INVALID_ARGUMENT);
  qhl_metric_free(g);

  qhl_metric* bad = nullptr;
  CHECK(qhl_metric_family("x", "0", 0, &bad) == QHL_ERR_PARSE);
  CHECK(qhl_metric_family("0", "0", 1, &bad) == QHL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("reports") {
  char* text = nullptr;
  REQUIRE(qhl_invert_report("sym", "sym", 1, &text) == QHL_OK);
  auto inv = nlohmann::json::parse(take(text));
  CHECK(inv["inverse"][0][2] == "-D*z");
  CHECK(inv["inverse"][2][2] == "D^2*z^2 - C*z^2");

  REQUIRE(qhl_curvature_report("1", "0", 1, &text) == QHL_OK);
  auto curv = nlohmann::json::parse(take(text));
  CHECK(curv["R"][2][1][2][1] == "z^2");

  REQUIRE(qhl_killing_report("1", "0", 2, 0, 1, &text) == QHL_OK);
  auto kil = nlohmann::json::parse(take(text));
  CHECK(kil["dimension"] == 4);

  REQUIRE(qhl_killing_report("0", "2", 2, 1, 1, &text) == QHL_OK);
  auto kil2 = nlohmann::json::parse(take(text));
  CHECK(kil2["dimension"] == 5);

  REQUIRE(qhl_algebra_report("2", "1", 2, 0, 1, &text) == QHL_OK);
  auto alg = nlohmann::json::parse(take(text));
  CHECK(alg["algebra_name"] == "R+sl(2,R)");
  CHECK(alg["fingerprint"]["killing_signature"] == nlohmann::json::array({2, 1, 1}));

  REQUIRE(qhl_classify_report("0", "0", 1, &text) == QHL_OK);
  auto rep = nlohmann::json::parse(take(text));
  CHECK(rep["case_label"] == "iv");
  CHECK(rep["killing_dim_within_ansatz"] == 6);
  CHECK(rep["algebra_name"] == "flat-lorentz-dim-6");
  CHECK(rep["certified"] == true);

  // symbolic classify carries the case tree
  REQUIRE(qhl_classify_report("sym", "sym", 1, &text) == QHL_OK);
  auto symrep = nlohmann::json::parse(take(text));
  CHECK(symrep["case_label"] == "symbolic");
  CHECK(symrep["case_tree"]["dimension"] == 4);
}

TEST_CASE("verify suite passes end to end") {
  char* text = nullptr;
  qhl_status rc = qhl_verify_paper(1, &text);
  auto rep = nlohmann::json::parse(take(text));
  CHECK(rc == QHL_OK);
  CHECK(rep["pass"] == true);
  for (const auto& item : rep["items"]) CHECK(item["pass"] == true);
}

TEST_CASE("json values round-trip through the expression parser") {
  char* text = nullptr;
  REQUIRE(qhl_killing_report("2", "1", 2, 0, 1, &text) == QHL_OK);
  auto rep = nlohmann::json::parse(take(text));
  qhl_ring* ring = nullptr;
  REQUIRE(qhl_ring_create(0, &ring) == QHL_OK);
  for (const auto& f : rep["basis"])
    for (const auto& comp : f) {
      qhl_expr* e = nullptr;
      REQUIRE(qhl_expr_parse(ring, comp.get<std::string>().c_str(), &e) == QHL_OK);
      char* printed = nullptr;
      REQUIRE(qhl_expr_print(e, &printed) == QHL_OK);
      CHECK(take(printed) == comp.get<std::string>());
      qhl_expr_free(e);
    }
  qhl_ring_free(ring);
}

TEST_CASE("deterministic output, including across threads") {
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(qhl_christoffel_report("sym", "sym", 1, &a) == QHL_OK);
  REQUIRE(qhl_christoffel_report("sym", "sym", 1, &b) == QHL_OK);
  std::string sa = take(a), sb = take(b);
  CHECK(sa == sb);

  std::vector<std::string> results(4);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i)
    threads.emplace_back([&results, i] {
      char* out = nullptr;
      if (qhl_classify_report("2", "1", 1, &out) == QHL_OK) {
        results[static_cast<std::size_t>(i)] = out;
        qhl_string_free(out);
      }
    });
  for (auto& t : threads) t.join();
  for (int i = 1; i < 4; ++i) {
    CHECK_FALSE(results[static_cast<std::size_t>(i)].empty());
    CHECK(results[static_cast<std::size_t>(i)] == results[0]);
  }
}
