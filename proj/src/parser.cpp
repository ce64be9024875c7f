#include "uplogic/parser.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace uplogic {

ParseError::ParseError(std::size_t offset, std::size_t line, std::size_t column, std::string expected,
                       std::string found)
    : InputError(std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected + ", found " +
                 found),
      offset_(offset),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
  Ident, Int, Slash, LParen, RParen, Bang, Tilde, Amp, Pipe, Arrow, DArrow,
  Ge, Le, Gt, Lt, Eq, Plus, Minus, True, False, L, End
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
};

// Nesting beyond this is rejected rather than risking the stack.
constexpr int kMaxDepth = 256;

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) { tokenize(); }

  LikelihoodFormula likelihood_formula() {
    auto f = ldisj();
    expect_end();
    return f;
  }

  PropFormula prop_formula() {
    auto p = prop();
    expect_end();
    return p;
  }

  Term bare_term() {
    auto t = term();
    expect_end();
    return t;
  }

private:
  // -- lexing --------------------------------------------------------------

  [[noreturn]] void fail_at(std::size_t offset, std::string expected, std::string found) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(offset, line, column, std::move(expected), std::move(found));
  }

  static std::string describe_byte(unsigned char c) {
    if (std::isprint(c)) return std::string("'") + static_cast<char>(c) + "'";
    static const char* hex = "0123456789abcdef";
    return std::string("byte 0x") + hex[c >> 4] + hex[c & 15];
  }

  void tokenize() {
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t len) {
      tokens_.push_back({k, i, text_.substr(i, len)});
      i += len;
    };
    auto starts = [&](std::string_view s) { return text_.substr(i, s.size()) == s; };
    while (i < text_.size()) {
      const auto c = static_cast<unsigned char>(text_[i]);
      if (std::isspace(c)) {
        ++i;
      } else if (std::isdigit(c)) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        push(Tok::Int, j - i);
      } else if (std::isalpha(c) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
          ++j;
        const auto word = text_.substr(i, j - i);
        Tok k = word == "true" ? Tok::True : word == "false" ? Tok::False : word == "l" ? Tok::L : Tok::Ident;
        push(k, j - i);
      } else if (starts("<->")) {
        push(Tok::DArrow, 3);
      } else if (starts("->")) {
        push(Tok::Arrow, 2);
      } else if (starts(">=")) {
        push(Tok::Ge, 2);
      } else if (starts("<=")) {
        push(Tok::Le, 2);
      } else {
        switch (c) {
          case '/': push(Tok::Slash, 1); break;
          case '(': push(Tok::LParen, 1); break;
          case ')': push(Tok::RParen, 1); break;
          case '!': push(Tok::Bang, 1); break;
          case '~': push(Tok::Tilde, 1); break;
          case '&': push(Tok::Amp, 1); break;
          case '|': push(Tok::Pipe, 1); break;
          case '>': push(Tok::Gt, 1); break;
          case '<': push(Tok::Lt, 1); break;
          case '=': push(Tok::Eq, 1); break;
          case '+': push(Tok::Plus, 1); break;
          case '-': push(Tok::Minus, 1); break;
          default: fail_at(i, "a token", describe_byte(c));
        }
      }
    }
    tokens_.push_back({Tok::End, text_.size(), {}});
  }

  // -- token cursor --------------------------------------------------------

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool accept(Tok k) {
    if (!at(k)) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(std::string expected) const {
    const auto& t = peek();
    fail_at(t.offset, std::move(expected), t.kind == Tok::End ? "end of input" : "'" + std::string(t.text) + "'");
  }

  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(what);
  }

  void expect_end() {
    if (!at(Tok::End)) fail("end of input");
  }

  struct DepthGuard {
    DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) parser.fail("shallower nesting");
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  // -- likelihood level ----------------------------------------------------

  LikelihoodFormula ldisj() {
    auto f = lconj();
    while (accept(Tok::Pipe)) f = LikelihoodFormula::disj(std::move(f), lconj());
    return f;
  }

  LikelihoodFormula lconj() {
    auto f = lneg();
    while (accept(Tok::Amp)) f = LikelihoodFormula::conj(std::move(f), lneg());
    return f;
  }

  LikelihoodFormula lneg() {
    DepthGuard guard(*this);
    if (accept(Tok::Tilde)) return LikelihoodFormula::negation(lneg());
    if (accept(Tok::LParen)) {
      auto f = ldisj();
      expect(Tok::RParen, "')'");
      return f;
    }
    return basic();
  }

  LikelihoodFormula basic() {
    auto t = term();
    Relation rel;
    switch (peek().kind) {
      case Tok::Ge: rel = Relation::GreaterEq; break;
      case Tok::Gt: rel = Relation::Greater; break;
      case Tok::Le: rel = Relation::LessEq; break;
      case Tok::Lt: rel = Relation::Less; break;
      case Tok::Eq: rel = Relation::Equal; break;
      default: fail("a relation (>=, >, <=, <, =)");
    }
    advance();
    bool negative = false;
    if (at(Tok::Minus) || at(Tok::Plus)) negative = advance().kind == Tok::Minus;
    if (!at(Tok::Int)) fail("a rational bound");
    Rational bound = rational();
    return LikelihoodFormula::basic(std::move(t), rel, negative ? Rational(-bound) : bound);
  }

  Term term() {
    std::vector<Addend> addends;
    bool negative = false;
    if (at(Tok::Minus) || at(Tok::Plus)) negative = advance().kind == Tok::Minus;
    addends.push_back(addend(negative));
    while (at(Tok::Plus) || at(Tok::Minus)) {
      negative = advance().kind == Tok::Minus;
      addends.push_back(addend(negative));
    }
    return Term(std::move(addends));
  }

  Addend addend(bool negative) {
    Rational coefficient(1);
    if (at(Tok::Int)) coefficient = rational();
    if (!accept(Tok::L)) fail("'l('");
    expect(Tok::LParen, "'('");
    auto phi = prop();
    expect(Tok::RParen, "')'");
    return Addend{negative ? Rational(-coefficient) : coefficient, std::move(phi)};
  }

  Rational rational() {
    const auto& num = advance();
    Integer n = parse_decimal(num.text);
    if (!accept(Tok::Slash)) return Rational(n);
    if (!at(Tok::Int)) fail("a positive denominator");
    const auto& den = advance();
    Integer d = parse_decimal(den.text);
    if (d.is_zero()) fail_at(den.offset, "a positive denominator", "0");
    return Rational(n, d);
  }

  // -- propositional level -------------------------------------------------

  PropFormula prop() {
    DepthGuard guard(*this);
    auto p = pimp();
    while (accept(Tok::DArrow)) p = PropFormula::iff(std::move(p), pimp());
    return p;
  }

  PropFormula pimp() {
    DepthGuard guard(*this);
    auto p = pdisj();
    if (accept(Tok::Arrow)) return PropFormula::implies(std::move(p), pimp());
    return p;
  }

  PropFormula pdisj() {
    auto p = pconj();
    while (accept(Tok::Pipe)) p = PropFormula::disj(std::move(p), pconj());
    return p;
  }

  PropFormula pconj() {
    auto p = pneg();
    while (accept(Tok::Amp)) p = PropFormula::conj(std::move(p), pneg());
    return p;
  }

  PropFormula pneg() {
    DepthGuard guard(*this);
    if (accept(Tok::Bang)) return PropFormula::negation(pneg());
    if (accept(Tok::True)) return PropFormula::truth();
    if (accept(Tok::False)) return PropFormula::falsity();
    if (at(Tok::Ident)) return PropFormula::var(std::string(advance().text));
    if (accept(Tok::LParen)) {
      auto p = prop();
      expect(Tok::RParen, "')'");
      return p;
    }
    fail("a propositional formula");
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// -- printing -------------------------------------------------------------

int precedence(const PropFormula& phi) {
  switch (phi.kind()) {
    case PropFormula::Kind::Or: return 1;
    case PropFormula::Kind::And: return 2;
    case PropFormula::Kind::Not: return 3;
    default: return 4;
  }
}

int precedence(const LikelihoodFormula& f) {
  switch (f.kind()) {
    case LikelihoodFormula::Kind::Or: return 1;
    case LikelihoodFormula::Kind::And: return 2;
    case LikelihoodFormula::Kind::Not: return 3;
    default: return 4;
  }
}

// Binary connectives parse left-associatively, so a right operand of the
// same precedence needs parentheses and a left one does not.
template <class F, class Emit>
void emit_child(std::string& out, const F& child, int min_prec, Emit&& emit) {
  if (precedence(child) < min_prec) {
    out += '(';
    emit(out, child);
    out += ')';
  } else {
    emit(out, child);
  }
}

void emit(std::string& out, const PropFormula& phi) {
  using K = PropFormula::Kind;
  auto recurse = [](std::string& o, const PropFormula& p) { emit(o, p); };
  switch (phi.kind()) {
    case K::Var: out += phi.name(); break;
    case K::True: out += "true"; break;
    case K::False: out += "false"; break;
    case K::Not:
      out += '!';
      emit_child(out, phi.lhs(), 3, recurse);
      break;
    case K::And:
    case K::Or: {
      const int p = precedence(phi);
      emit_child(out, phi.lhs(), p, recurse);
      out += phi.kind() == K::And ? " & " : " | ";
      emit_child(out, phi.rhs(), p + 1, recurse);
      break;
    }
  }
}

void emit(std::string& out, const Term& t) {
  bool first = true;
  for (const auto& a : t.addends()) {
    const bool negative = sign(a.coefficient) < 0;
    const Rational magnitude = negative ? Rational(-a.coefficient) : a.coefficient;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    if (magnitude != 1) {
      out += to_string(magnitude);
      out += ' ';
    }
    out += "l(";
    emit(out, a.argument);
    out += ')';
    first = false;
  }
}

void emit(std::string& out, const Basic& b) {
  emit(out, b.term);
  out += ' ';
  out += print(b.relation);
  out += ' ';
  out += to_string(b.bound);
}

void emit(std::string& out, const LikelihoodFormula& f) {
  using K = LikelihoodFormula::Kind;
  auto recurse = [](std::string& o, const LikelihoodFormula& g) { emit(o, g); };
  switch (f.kind()) {
    case K::Basic: emit(out, f.as_basic()); break;
    case K::Not:
      out += '~';
      emit_child(out, f.lhs(), 3, recurse);
      break;
    case K::And:
    case K::Or: {
      const int p = precedence(f);
      emit_child(out, f.lhs(), p, recurse);
      out += f.kind() == K::And ? " & " : " | ";
      emit_child(out, f.rhs(), p + 1, recurse);
      break;
    }
  }
}

}  // namespace

LikelihoodFormula parse_likelihood(std::string_view text) { return Parser(text).likelihood_formula(); }
PropFormula parse_prop(std::string_view text) { return Parser(text).prop_formula(); }
Term parse_term(std::string_view text) { return Parser(text).bare_term(); }

std::string print(const PropFormula& phi) {
  std::string out;
  emit(out, phi);
  return out;
}

std::string print(const Term& t) {
  std::string out;
  emit(out, t);
  return out;
}

std::string print(const Basic& b) {
  std::string out;
  emit(out, b);
  return out;
}

std::string print(const LikelihoodFormula& f) {
  std::string out;
  emit(out, f);
  return out;
}

std::string print(Relation rel) {
  switch (rel) {
    case Relation::GreaterEq: return ">=";
    case Relation::Greater: return ">";
    case Relation::LessEq: return "<=";
    case Relation::Less: return "<";
    case Relation::Equal: return "=";
  }
  return "?";
}

}  // namespace uplogic
