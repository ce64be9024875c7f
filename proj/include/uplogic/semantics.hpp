#ifndef UPLOGIC_SEMANTICS_HPP
#define UPLOGIC_SEMANTICS_HPP

#include "uplogic/formula.hpp"
#include "uplogic/structure.hpp"

#include <utility>
#include <vector>

namespace uplogic {

/// [[phi]]_M: the worlds whose assignment satisfies phi. Propositions the
/// structure does not declare are false everywhere.
WorldSet extension(const UpperProbStructure& m, const PropFormula& phi);

/// sum_i theta_i * P*([[phi_i]]_M), exact.
Rational eval_term(const UpperProbStructure& m, const Term& t);

/// M |= f.
bool eval(const UpperProbStructure& m, const LikelihoodFormula& f);
bool eval(const UpperProbStructure& m, const Basic& b);

/// Upper probability of every distinct l(...) argument of f, in order of
/// first occurrence.
std::vector<std::pair<PropFormula, Rational>> likelihood_values(const UpperProbStructure& m,
                                                                const LikelihoodFormula& f);

}  // namespace uplogic

#endif
