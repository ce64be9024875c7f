#ifndef UPLOGIC_LP_HPP
#define UPLOGIC_LP_HPP

#include "uplogic/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace uplogic::lp {

/// coefficients . x  (>= | > | =)  bound
enum class Sense { AtLeast, Above, Exactly };

struct Constraint {
  std::vector<Rational> coefficients;
  Sense sense;
  Rational bound;
};

enum class Direction { Minimize, Maximize };

struct Objective {
  std::vector<Rational> coefficients;
  Direction direction;
};

/// Exact linear system over named real variables.
///
/// Variables are free unless flagged in `nonnegative` (an empty vector means
/// all free); a flag is equivalent to an explicit x >= 0 row but cheaper.
struct LinearSystem {
  std::vector<std::string> variables;
  std::vector<bool> nonnegative;
  std::vector<Constraint> constraints;
  std::optional<Objective> objective;

  std::size_t size() const { return variables.size(); }
  /// Appends a variable and returns its index.
  std::size_t add_variable(std::string name, bool is_nonnegative = false);
  void add(std::vector<Rational> coefficients, Sense sense, Rational bound);
  bool is_nonnegative(std::size_t j) const { return !nonnegative.empty() && nonnegative[j]; }
  bool has_strict() const;

  /// Throws InputError when shapes disagree or there are no variables.
  void validate() const;
};

enum class Verdict { Feasible, Infeasible, Optimal, Unbounded };

struct Outcome {
  Verdict verdict = Verdict::Infeasible;
  /// Feasible/Optimal: a point satisfying weak rows exactly and strict rows
  /// strictly. For an Optimal outcome that is not attained this is a
  /// feasible point, not an optimizer.
  std::vector<Rational> point;
  /// Optimal: optimum over the closure of the feasible region.
  Rational value;
  /// Optimal: whether some point of the (strict) region reaches `value`.
  bool attained = false;
  /// Unbounded: a recession direction improving the objective.
  std::vector<Rational> direction;
};

struct Stats {
  std::size_t pivots = 0;
  std::size_t rows = 0;
  std::size_t columns = 0;
};

/// Decides (strict) feasibility exactly. Strict rows are handled with one
/// shared slack d: each c.x > b becomes c.x - d >= b, and d in [0,1] is
/// maximized; the system is feasible iff the optimum has d > 0.
Outcome feasible(const LinearSystem& sys, Stats* stats = nullptr);

/// Optimizes sys.objective. The value is the optimum over the closure of the
/// region; `attained` is decided by re-solving {objective = value} together
/// with the original strict rows.
Outcome optimize(const LinearSystem& sys, Stats* stats = nullptr);

/// Exact check of a point against every row with the correct strictness.
bool satisfies(const LinearSystem& sys, const std::vector<Rational>& point);

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

}  // namespace uplogic::lp

#endif
