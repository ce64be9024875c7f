#ifndef UPLOGIC_SOLVER_HPP
#define UPLOGIC_SOLVER_HPP

#include "uplogic/formula.hpp"
#include "uplogic/structure.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace uplogic {

struct SolverOptions {
  /// Maximum number of distinct primitive propositions (at most
  /// kMaxTruthTableProps).
  std::size_t atom_cap = 12;
  std::size_t max_disjuncts = std::size_t{1} << 16;
};

struct SolverStats {
  std::size_t disjuncts = 0;
  /// Disjunct LPs actually solved (sat stops at the first satisfiable one).
  std::size_t disjuncts_solved = 0;
  std::size_t lp_rows = 0;
  std::size_t lp_columns = 0;
  std::size_t pivots = 0;
  std::size_t propositions = 0;
  /// Shape of the returned model, if any.
  std::size_t model_worlds = 0;
  std::size_t model_measures = 0;
};

struct SatResult {
  bool satisfiable = false;
  /// Present iff satisfiable; verified with the model checker.
  std::optional<UpperProbStructure> model;
  SolverStats stats;
};

struct ValidResult {
  bool valid = false;
  /// A structure falsifying the formula when !valid.
  std::optional<UpperProbStructure> countermodel;
  SolverStats stats;
};

struct Endpoint {
  Rational value;
  bool attained = false;
};

struct DisjunctBounds {
  std::size_t disjunct = 0;
  Endpoint lower;
  Endpoint upper;
};

struct BoundsResult {
  bool satisfiable = false;
  Endpoint lower;
  Endpoint upper;
  /// One entry per satisfiable disjunct of the DNF.
  std::vector<DisjunctBounds> provenance;
  SolverStats stats;
};

/// Decides satisfiability over upper probability structures.
///
/// The formula is normalized and put in DNF. For each disjunct with distinct
/// likelihood arguments phi_1..phi_T (identified up to equivalence) a linear
/// program is solved over T measures on the atoms of the formula's
/// propositions, with measure i designated to attain the upper probability
/// y_i of phi_i:
///
///   sum_w x_iw = 1,  y_i = sum_{w |= phi_i} x_iw,  sum_{w |= phi_i} x_jw <= y_i,
///
/// plus one row per basic formula over the y_i. Atoms agreeing on every
/// phi_i are merged into one world. A satisfiable answer carries the
/// resulting structure, re-checked with eval before it is returned.
/// ResourceError past the proposition cap or the DNF limit.
SatResult sat(const LikelihoodFormula& f, const SolverOptions& options = {});

/// f is valid iff ~f is unsatisfiable; otherwise ~f's model is returned.
ValidResult valid(const LikelihoodFormula& f, const SolverOptions& options = {});

/// Exact infimum and supremum of eval_term(M, t) over all M |= f, with
/// attainment flags. `satisfiable` is false (and no bounds are set) when f
/// is unsatisfiable.
BoundsResult bounds(const LikelihoodFormula& f, const Term& t, const SolverOptions& options = {});

}  // namespace uplogic

#endif
