#ifndef UPLOGIC_PARSER_HPP
#define UPLOGIC_PARSER_HPP

#include "uplogic/errors.hpp"
#include "uplogic/formula.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace uplogic {

/// Syntax error with a position inside the parsed text.
class ParseError : public InputError {
public:
  ParseError(std::size_t offset, std::size_t line, std::size_t column, std::string expected, std::string found);

  /// Byte offset into the input (equal to the input size at end of input).
  std::size_t offset() const { return offset_; }
  /// 1-based line and byte column.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
  std::string found_;
};

// Concrete syntax (ASCII, whitespace-insensitive):
//
//   lform  := ldisj
//   ldisj  := lconj ("|" lconj)*
//   lconj  := lneg ("&" lneg)*
//   lneg   := "~" lneg | "(" lform ")" | basic
//   basic  := term rel ["+"|"-"] rational
//   rel    := ">=" | "<=" | ">" | "<" | "="
//   term   := ["+"|"-"] addend (("+"|"-") addend)*
//   addend := [rational] "l" "(" prop ")"
//   prop   := pimp ("<->" pimp)*
//   pimp   := pdisj ["->" pimp]
//   pdisj  := pconj ("|" pconj)*
//   pconj  := pneg ("&" pneg)*
//   pneg   := "!" pneg | "true" | "false" | ident | "(" prop ")"
//   rational := digits ["/" digits]        (nonzero denominator)
//   ident  := [A-Za-z_][A-Za-z0-9_]* other than true, false, l

LikelihoodFormula parse_likelihood(std::string_view text);
PropFormula parse_prop(std::string_view text);
/// A bare term, e.g. "l(p) - 2 l(q)".
Term parse_term(std::string_view text);

/// Canonical text with minimal parentheses; parsing it back yields a
/// structurally equal AST.
std::string print(const PropFormula& phi);
std::string print(const Term& t);
std::string print(const Basic& b);
std::string print(const LikelihoodFormula& f);
std::string print(Relation rel);

}  // namespace uplogic

#endif
