#include "uplogic/semantics.hpp"

#include "uplogic/errors.hpp"

#include <algorithm>

namespace uplogic {

namespace {

bool holds_at(const World& w, const PropFormula& phi) {
  switch (phi.kind()) {
    case PropFormula::Kind::Var: return w.holds(phi.name());
    case PropFormula::Kind::True: return true;
    case PropFormula::Kind::False: return false;
    case PropFormula::Kind::Not: return !holds_at(w, phi.lhs());
    case PropFormula::Kind::And: return holds_at(w, phi.lhs()) && holds_at(w, phi.rhs());
    case PropFormula::Kind::Or: return holds_at(w, phi.lhs()) || holds_at(w, phi.rhs());
  }
  return false;
}

bool compare(const Rational& value, Relation rel, const Rational& bound) {
  switch (rel) {
    case Relation::GreaterEq: return value >= bound;
    case Relation::Greater: return value > bound;
    case Relation::LessEq: return value <= bound;
    case Relation::Less: return value < bound;
    case Relation::Equal: return value == bound;
  }
  throw InternalError("unhandled relation");
}

void collect_arguments(const LikelihoodFormula& f, std::vector<PropFormula>& out) {
  switch (f.kind()) {
    case LikelihoodFormula::Kind::Basic:
      for (const auto& a : f.as_basic().term.addends())
        if (std::find(out.begin(), out.end(), a.argument) == out.end()) out.push_back(a.argument);
      break;
    case LikelihoodFormula::Kind::Not: collect_arguments(f.lhs(), out); break;
    case LikelihoodFormula::Kind::And:
    case LikelihoodFormula::Kind::Or:
      collect_arguments(f.lhs(), out);
      collect_arguments(f.rhs(), out);
      break;
  }
}

}  // namespace

WorldSet extension(const UpperProbStructure& m, const PropFormula& phi) {
  WorldSet s(m.world_count());
  for (std::size_t i = 0; i < m.world_count(); ++i)
    if (holds_at(m.worlds()[i], phi)) s.set(i);
  return s;
}

Rational eval_term(const UpperProbStructure& m, const Term& t) {
  Rational total(0);
  for (const auto& a : t.addends()) total += a.coefficient * m.upper_of(extension(m, a.argument));
  return total;
}

bool eval(const UpperProbStructure& m, const Basic& b) { return compare(eval_term(m, b.term), b.relation, b.bound); }

bool eval(const UpperProbStructure& m, const LikelihoodFormula& f) {
  switch (f.kind()) {
    case LikelihoodFormula::Kind::Basic: return eval(m, f.as_basic());
    case LikelihoodFormula::Kind::Not: return !eval(m, f.lhs());
    case LikelihoodFormula::Kind::And: return eval(m, f.lhs()) && eval(m, f.rhs());
    case LikelihoodFormula::Kind::Or: return eval(m, f.lhs()) || eval(m, f.rhs());
  }
  throw InternalError("unhandled formula kind");
}

std::vector<std::pair<PropFormula, Rational>> likelihood_values(const UpperProbStructure& m,
                                                                const LikelihoodFormula& f) {
  std::vector<PropFormula> args;
  collect_arguments(f, args);
  std::vector<std::pair<PropFormula, Rational>> out;
  for (auto& phi : args) {
    Rational value = m.upper_of(extension(m, phi));
    out.emplace_back(std::move(phi), std::move(value));
  }
  return out;
}

}  // namespace uplogic
