#ifndef UPLOGIC_ENVELOPE_HPP
#define UPLOGIC_ENVELOPE_HPP

#include "uplogic/structure.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace uplogic {

inline constexpr std::size_t kDefaultEnvelopeCap = 12;

struct DominatedMax {
  /// False when no probability measure lies below v.
  bool feasible = false;
  Rational value;
  /// Optimal measure, one weight per ground element.
  std::vector<Rational> measure;
};

/// max { mu(A) : mu a probability measure on the ground set, mu(X) <= v(X)
/// for every X }. Constraints are generated lazily: the LP starts from the
/// singleton rows and adds the most violated set until the optimum respects
/// all of them. ResourceError when the ground set exceeds `cap`.
DominatedMax dominated_max(const SetFunction& v, Subset a, std::size_t cap = kDefaultEnvelopeCap);

enum class EnvelopeFailure {
  None,
  EmptySet,   // v(empty) != 0
  WholeSet,   // v(ground) != 1
  EmptyCore,  // no measure lies below v
  Shortfall,  // dominated_max(v, A) < v(A)
};

struct EnvelopeResult {
  bool upper = false;
  EnvelopeFailure failure = EnvelopeFailure::None;
  /// The set at which recognition failed (smallest mask for a shortfall).
  Subset failing_set = 0;
  /// dominated_max at failing_set for a shortfall.
  Rational achieved;
  /// On success: worlds = ground elements, no propositions, one measure per
  /// distinct optimal vertex. set_function_of(*witness) == v.
  std::optional<UpperProbStructure> witness;
};

/// Decides whether v = P* for some set P of probability measures.
EnvelopeResult is_upper_probability(const SetFunction& v, std::size_t cap = kDefaultEnvelopeCap);

}  // namespace uplogic

#endif
