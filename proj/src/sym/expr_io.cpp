#include "sym/expr_io.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "sym/errors.hpp"

namespace qhl::sym {

namespace {

int print_rank(SymbolKind k) {
  switch (k) {
    case SymbolKind::Unknown: return 0;
    case SymbolKind::Parameter: return 1;
    case SymbolKind::Coordinate: return 2;
    case SymbolKind::ExpGenerator: return 3;
  }
  return 4;
}

std::string monomial_string(const VarSet& vs, const Mono& m) {
  std::vector<int> ids;
  for (std::size_t s = 0; s < m.e.size(); ++s)
    if (m.e[s] != 0) ids.push_back(static_cast<int>(s));
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    int ra = print_rank(vs.kind(a)), rb = print_rank(vs.kind(b));
    if (ra != rb) return ra < rb;
    return a < b;
  });
  std::string out;
  for (int id : ids) {
    if (!out.empty()) out += "*";
    out += vs.name(id);
    if (m.e[static_cast<std::size_t>(id)] > 1)
      out += "^" + std::to_string(m.e[static_cast<std::size_t>(id)]);
  }
  return out;
}

}  // namespace

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational a = t.c;
    if (first) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    std::string mono = monomial_string(*p.varset(), t.m);
    if (mono.empty()) {
      out += to_string(a);
    } else if (a == 1) {
      out += mono;
    } else {
      out += to_string(a) + "*" + mono;
    }
    first = false;
  }
  return out;
}

std::string to_string(const Expr& e) {
  if (e.is_polynomial()) return to_string(e.num());
  return "(" + to_string(e.num()) + ")/(" + to_string(e.den()) + ")";
}

namespace {

struct Parser {
  const VarSetPtr& vs;
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(Errc::Parse, what + " at position " + std::to_string(pos) + " in \"" + text + "\"");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Expr parse() {
    Expr e = parse_sum();
    if (peek() != '\0') error("trailing input");
    return e;
  }

  Expr parse_sum() {
    Expr e = parse_product();
    while (true) {
      if (accept('+')) {
        e = e + parse_product();
      } else if (accept('-')) {
        e = e - parse_product();
      } else {
        return e;
      }
    }
  }

  Expr parse_product() {
    Expr e = parse_unary();
    while (true) {
      if (accept('*')) {
        e = e * parse_unary();
      } else if (accept('/')) {
        e = e / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) {
      skip_ws();
      bool neg = false;
      if (accept('-')) neg = true;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) error("expected integer exponent");
      int exp = std::stoi(text.substr(start, pos - start));
      return base.pow(neg ? -exp : exp);
    }
    return base;
  }

  Expr parse_primary() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Expr e = parse_sum();
      if (!accept(')')) error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      return Expr::constant(vs, Rational(Integer(text.substr(start, pos - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      auto id = vs->index_of(name);
      if (!id) fail(Errc::UnknownVariable, "unknown symbol: " + name);
      return Expr::symbol(vs, *id);
    }
    error("unexpected character");
  }
};

}  // namespace

Expr parse_expr(const VarSetPtr& vs, const std::string& text) {
  Parser p{vs, text};
  return p.parse();
}

}  // namespace qhl::sym
