#include "excmap/text.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace excmap {

PrimePower factor_prime_power(std::uint64_t q) {
  if (q < 2) fail(ErrorKind::ParseError, "GF size must be at least 2");
  std::uint64_t p = 2;
  while (q % p != 0) {
    ++p;
    if (p * p > q) {
      p = q;
      break;
    }
  }
  std::uint64_t rest = q;
  unsigned n = 0;
  while (rest % p == 0) {
    rest /= p;
    ++n;
  }
  if (rest != 1) {
    fail(ErrorKind::ParseError, std::to_string(q) + " is not a prime power");
  }
  return {q, p, n};
}

namespace {

struct Token {
  enum Kind { Int, Sym, Word, End } kind = End;
  std::uint64_t value = 0;   // Int
  char sym = 0;              // Sym: + - * / ^ ( ) [ ]
  std::string word;          // Word: x t over GF prec
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ >= text_.size()) {
      cur_ = Token{};
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        ++pos_;
      }
      cur_ = Token{Token::Int, v, 0, {}};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string w;
      while (pos_ < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        w.push_back(text_[pos_]);
        ++pos_;
      }
      cur_ = Token{Token::Word, 0, 0, std::move(w)};
      return;
    }
    if (std::string("+-*/^()[]").find(c) != std::string::npos) {
      ++pos_;
      cur_ = Token{Token::Sym, 0, c, {}};
      return;
    }
    fail(ErrorKind::ParseError, std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token cur_;
};

bool is_sym(const Token& t, char c) { return t.kind == Token::Sym && t.sym == c; }
bool is_word(const Token& t, const char* w) {
  return t.kind == Token::Word && t.word == w;
}

// Rational-function expression parser. All arithmetic happens on RatFunc so
// division is unrestricted.
class FuncParser {
 public:
  FuncParser(Lexer& lex, FieldPtr field) : lex_(lex), field_(std::move(field)) {}

  RatFunc parse_expr() {
    RatFunc acc = parse_term();
    while (is_sym(lex_.peek(), '+') || is_sym(lex_.peek(), '-')) {
      char op = lex_.take().sym;
      RatFunc rhs = parse_term();
      acc = op == '+' ? add(acc, rhs) : sub(acc, rhs);
    }
    return acc;
  }

 private:
  RatFunc parse_term() {
    RatFunc acc = parse_unary();
    while (is_sym(lex_.peek(), '*') || is_sym(lex_.peek(), '/')) {
      char op = lex_.take().sym;
      RatFunc rhs = parse_unary();
      acc = op == '*' ? mul(acc, rhs) : div(acc, rhs);
    }
    return acc;
  }

  RatFunc parse_unary() {
    if (is_sym(lex_.peek(), '-')) {
      lex_.take();
      RatFunc inner = parse_unary();
      return RatFunc::make(-inner.num(), inner.den());
    }
    return parse_power();
  }

  RatFunc parse_power() {
    RatFunc base = parse_atom();
    if (is_sym(lex_.peek(), '^')) {
      lex_.take();
      Token e = lex_.take();
      bool neg = false;
      if (e.kind == Token::Sym && e.sym == '-') {
        neg = true;
        e = lex_.take();
      }
      if (e.kind != Token::Int) fail(ErrorKind::ParseError, "exponent expected");
      RatFunc powed = pow(base, e.value);
      if (neg) powed = div(constant(field_->one()), powed);
      return powed;
    }
    return base;
  }

  RatFunc parse_atom() {
    Token t = lex_.take();
    if (t.kind == Token::Int) return constant(field_->from_int(t.value));
    if (t.kind == Token::Word && t.word == "x") {
      return RatFunc::from_poly(Poly::x(field_));
    }
    if (t.kind == Token::Word && t.word == "t") {
      if (field_->n() == 1) {
        fail(ErrorKind::ParseError, "t is not defined over a prime field");
      }
      return constant(field_->from_index(field_->p()));
    }
    if (t.kind == Token::Sym && t.sym == '(') {
      RatFunc inner = parse_expr();
      if (!is_sym(lex_.peek(), ')')) fail(ErrorKind::ParseError, "')' expected");
      lex_.take();
      return inner;
    }
    if (t.kind == Token::Sym && t.sym == '[') {
      Token idx = lex_.take();
      if (idx.kind != Token::Int || !is_sym(lex_.peek(), ']')) {
        fail(ErrorKind::ParseError, "element index literal expected");
      }
      lex_.take();
      if (idx.value >= field_->q()) {
        fail(ErrorKind::ParseError, "element index out of range");
      }
      return constant(field_->from_index(idx.value));
    }
    fail(ErrorKind::ParseError, "unexpected token in expression");
  }

  RatFunc constant(const FFElem& c) {
    return RatFunc::make(Poly::constant(c), Poly::one(field_));
  }
  static RatFunc add(const RatFunc& a, const RatFunc& b) {
    return RatFunc::make(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
  }
  static RatFunc sub(const RatFunc& a, const RatFunc& b) {
    return RatFunc::make(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
  }
  static RatFunc mul(const RatFunc& a, const RatFunc& b) {
    return RatFunc::make(a.num() * b.num(), a.den() * b.den());
  }
  static RatFunc div(const RatFunc& a, const RatFunc& b) {
    if (b.num().is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
    return RatFunc::make(a.num() * b.den(), a.den() * b.num());
  }
  RatFunc pow(const RatFunc& base, std::uint64_t e) {
    RatFunc acc = constant(field_->one());
    RatFunc b = base;
    while (e) {
      if (e & 1) acc = mul(acc, b);
      b = mul(b, b);
      e >>= 1;
    }
    return acc;
  }

  Lexer& lex_;
  FieldPtr field_;
};

FieldPtr parse_field_clause(Lexer& lex) {
  if (!is_word(lex.peek(), "over")) fail(ErrorKind::ParseError, "'over' expected");
  lex.take();
  if (!is_word(lex.peek(), "GF")) fail(ErrorKind::ParseError, "'GF' expected");
  lex.take();
  if (!is_sym(lex.peek(), '(')) fail(ErrorKind::ParseError, "'(' expected after GF");
  lex.take();
  Token q = lex.take();
  if (q.kind != Token::Int) fail(ErrorKind::ParseError, "field size expected");
  if (!is_sym(lex.peek(), ')')) fail(ErrorKind::ParseError, "')' expected");
  lex.take();
  PrimePower pp = factor_prime_power(q.value);
  return Field::make(pp.p, pp.n);
}

std::string gf_clause(const FieldPtr& field) {
  return "GF(" + std::to_string(field->q()) + ")";
}

// True when the element lies in the prime subfield.
bool is_prime_subfield(const FFElem& a) {
  for (unsigned i = 1; i < a.field()->n(); ++i) {
    if (a.coeffs()[i] != 0) return false;
  }
  return true;
}

std::string print_coeff_factor(const FFElem& a) {
  if (is_prime_subfield(a)) return std::to_string(a.coeffs()[0]);
  return "(" + print_elem(a) + ")";
}

std::string print_poly_in_var(const Poly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = f.degree(); i >= 0; --i) {
    FFElem c = f.coeff(static_cast<unsigned>(i));
    if (c.is_zero()) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      // The trailing summand needs no parentheses: its monomials in t join
      // the top-level sum with the same value.
      out += print_elem(c);
      continue;
    }
    std::string xpow = i == 1 ? var : var + "^" + std::to_string(i);
    if (c.is_one()) {
      out += xpow;
    } else {
      out += print_coeff_factor(c) + "*" + xpow;
    }
  }
  return out;
}

}  // namespace

FunctionLiteral parse_function_literal(const std::string& text) {
  // The field clause is parsed first so the expression knows its field: split
  // at the keyword 'over'.
  std::size_t pos = text.rfind(" over ");
  if (pos == std::string::npos) {
    fail(ErrorKind::ParseError, "missing 'over GF(q)' clause");
  }
  std::string expr = text.substr(0, pos);
  std::string clause = text.substr(pos + 1);
  Lexer clause_lex(clause);
  FieldPtr field = parse_field_clause(clause_lex);
  if (clause_lex.peek().kind != Token::End) {
    fail(ErrorKind::ParseError, "trailing input after field clause");
  }
  FunctionLiteral lit;
  lit.field = field;
  lit.f = parse_function_expr(expr, field);
  return lit;
}

RatFunc parse_function_expr(const std::string& expr, const FieldPtr& field) {
  Lexer lex(expr);
  FuncParser parser(lex, field);
  RatFunc f = parser.parse_expr();
  if (lex.peek().kind != Token::End) {
    fail(ErrorKind::ParseError, "trailing input after expression");
  }
  return f;
}

std::string print_poly(const Poly& f) { return print_poly_in_var(f, "x"); }

std::string print_ratfunc(const RatFunc& f) {
  if (f.is_polynomial()) return print_poly(f.num());
  return "(" + print_poly(f.num()) + ")/(" + print_poly(f.den()) + ")";
}

std::string print_function_literal(const RatFunc& f) {
  return print_ratfunc(f) + " over " + gf_clause(f.field());
}

std::string print_elem(const FFElem& a) {
  const auto& c = a.coeffs();
  std::string out;
  for (unsigned i = a.field()->n(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[0]);
    } else {
      std::string tpow = i == 1 ? "t" : "t^" + std::to_string(i);
      out += c[i] == 1 ? tpow : std::to_string(c[i]) + "*" + tpow;
    }
  }
  return out.empty() ? "0" : out;
}

std::string print_point(const ProjPoint& pt) {
  return pt.infinite ? "inf" : print_elem(pt.value);
}

LaurentSeries parse_series_literal(const std::string& text) {
  std::size_t pos = text.rfind(" over ");
  if (pos == std::string::npos) {
    fail(ErrorKind::ParseError, "missing 'over GF(q)' clause");
  }
  std::string expr = text.substr(0, pos);
  std::string clause = text.substr(pos + 1);

  Lexer clause_lex(clause);
  FieldPtr field = parse_field_clause(clause_lex);
  unsigned prec = kDefaultSeriesPrecision;
  if (is_word(clause_lex.peek(), "prec")) {
    clause_lex.take();
    Token t = clause_lex.take();
    if (t.kind != Token::Int || t.value == 0) {
      fail(ErrorKind::ParseError, "positive precision expected after 'prec'");
    }
    prec = static_cast<unsigned>(t.value);
  }
  if (clause_lex.peek().kind != Token::End) {
    fail(ErrorKind::ParseError, "trailing input after field clause");
  }

  // Terms: [+-] factor (* factor)*, each factor an integer, an element
  // index, or t[^exp].
  Lexer lex(expr);
  std::map<int, FFElem> terms;
  bool first = true;
  while (lex.peek().kind != Token::End) {
    int sign = 1;
    if (is_sym(lex.peek(), '+') || is_sym(lex.peek(), '-')) {
      sign = lex.take().sym == '-' ? -1 : 1;
    } else if (!first) {
      fail(ErrorKind::ParseError, "'+' or '-' expected between series terms");
    }
    first = false;

    FFElem coeff = field->one();
    long long exponent = 0;
    bool saw_factor = false;
    while (true) {
      Token t = lex.peek();
      if (t.kind == Token::Int) {
        lex.take();
        coeff = coeff * field->from_int(t.value);
        saw_factor = true;
      } else if (t.kind == Token::Sym && t.sym == '[') {
        lex.take();
        Token idx = lex.take();
        if (idx.kind != Token::Int || !is_sym(lex.peek(), ']')) {
          fail(ErrorKind::ParseError, "element index literal expected");
        }
        lex.take();
        if (idx.value >= field->q()) {
          fail(ErrorKind::ParseError, "element index out of range");
        }
        coeff = coeff * field->from_index(idx.value);
        saw_factor = true;
      } else if (t.kind == Token::Word && t.word == "t") {
        lex.take();
        long long e = 1;
        if (is_sym(lex.peek(), '^')) {
          lex.take();
          long long s = 1;
          if (is_sym(lex.peek(), '-')) {
            lex.take();
            s = -1;
          }
          Token et = lex.take();
          if (et.kind != Token::Int) fail(ErrorKind::ParseError, "exponent expected");
          e = s * static_cast<long long>(et.value);
        }
        exponent += e;
        saw_factor = true;
      } else {
        break;
      }
      if (is_sym(lex.peek(), '*')) {
        lex.take();
        continue;
      }
      break;
    }
    if (!saw_factor) fail(ErrorKind::ParseError, "series term expected");
    if (sign < 0) coeff = -coeff;
    int e = static_cast<int>(exponent);
    auto it = terms.find(e);
    if (it == terms.end()) {
      terms.emplace(e, coeff);
    } else {
      it->second = it->second + coeff;
    }
  }

  if (terms.empty()) return LaurentSeries::zero_to(field, static_cast<int>(prec));
  int lo = terms.begin()->first;
  int hi = terms.rbegin()->first;
  if (hi >= lo + static_cast<int>(prec)) {
    fail(ErrorKind::ParseError, "series terms exceed the stated precision");
  }
  std::vector<FFElem> coeffs(prec, field->zero());
  for (const auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e - lo)] = c;
  return LaurentSeries::from_terms(field, lo, std::move(coeffs));
}

std::string print_series_literal(const LaurentSeries& s) {
  std::ostringstream out;
  if (s.is_zero_to_precision()) {
    out << "0 over " << gf_clause(s.field()) << " prec " << s.order_bound();
    return out.str();
  }
  bool first = true;
  for (int e = s.valuation(); e < s.order_bound(); ++e) {
    FFElem c = s.coeff(e);
    if (c.is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    std::string coeff_str = is_prime_subfield(c)
                                ? std::to_string(c.coeffs()[0])
                                : "[" + std::to_string(c.index()) + "]";
    if (e == 0) {
      out << coeff_str;
    } else {
      std::string tpow = e == 1 ? "t" : "t^" + std::to_string(e);
      if (c.is_one()) {
        out << tpow;
      } else {
        out << coeff_str << "*" << tpow;
      }
    }
  }
  out << " over " << gf_clause(s.field()) << " prec " << s.precision();
  return out.str();
}

}  // namespace excmap
