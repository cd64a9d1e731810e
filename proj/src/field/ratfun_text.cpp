// Canonical rendering and a recursive-descent parser for rational functions.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := integer | identifier | '(' expr ')'

#include <cctype>

#include "diffalg/field.hpp"

namespace diffalg {

namespace {

std::string render_monomial(const Exponents& exp, const FieldSpec& field) {
  std::string out;
  for (std::size_t v = 0; v < exp.size(); ++v) {
    if (exp[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += field.name(v);
    if (exp[v] > 1) out += '^' + std::to_string(exp[v]);
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const FieldSpec& field) : text_(text), field_(field) {}

  RatFun parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty expression", "expression");
    RatFun r = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'", "operator or end of input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what, const std::string& expected) const {
    throw ParseError(what, pos_, expected);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFun expr() {
    RatFun acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFun term() {
    RatFun acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RatFun d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero", "nonzero divisor");
        }
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFun unary() {
    if (accept('-')) return -unary();
    return power();
  }

  RatFun power() {
    RatFun base = atom();
    if (!accept('^')) return base;
    bool negative = accept('-');
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("missing exponent", "integer exponent");
    if (pos_ - start > 6) fail("exponent too large", "exponent below 10^6");
    int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (negative && base.is_zero()) fail("zero to a negative power", "nonzero base");
    return base.pow(negative ? -e : e);
  }

  RatFun atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input", "number, variable or '('");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFun inner = expr();
      if (!accept(')')) fail("unbalanced parenthesis", "')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Rational v(std::string(text_.substr(start, pos_ - start)), 10);
      return RatFun::constant(field_.size(), v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = field_.find(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'", "a field variable");
      }
      return RatFun::variable(field_.size(), *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'", "number, variable or '('");
  }

  std::string_view text_;
  const FieldSpec& field_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const MultiPoly& p, const FieldSpec& field) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const std::string mono = render_monomial(t.exp, field);
    const bool negative = t.coeff < 0;
    const Rational mag = negative ? Rational(-t.coeff) : t.coeff;
    std::string body;
    if (mono.empty()) {
      body = mag.get_str();
    } else if (mag == 1 && !negative) {
      body = mono;
    } else {
      body = mag.get_str() + "*" + mono;
    }
    if (negative) {
      out += "-";
    } else if (!first) {
      out += "+";
    }
    out += body;
    first = false;
  }
  return out;
}

std::string to_string(const RatFun& x, const FieldSpec& field) {
  if (x.nvars() != 0 && x.nvars() != field.size()) throw FieldMismatch("rendering over the wrong field");
  return "(" + to_string(x.num(), field) + ")/(" + to_string(x.den(), field) + ")";
}

RatFun parse_ratfun(std::string_view text, const FieldSpec& field) {
  return Parser(text, field).parse().promoted(field.size());
}

}  // namespace diffalg
