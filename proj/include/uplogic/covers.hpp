#ifndef UPLOGIC_COVERS_HPP
#define UPLOGIC_COVERS_HPP

#include "uplogic/formula.hpp"
#include "uplogic/structure.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uplogic {

using NamedSet = std::set<std::string>;

/// A multiset {{A_1..A_m}} of subsets of a ground set with a target A and
/// (n, k): an (n,k)-cover of (A, ground) covers the ground k times and A
/// n + k times. Repeated sets are meaningful.
struct CoverInstance {
  std::vector<NamedSet> sets;
  NamedSet target;
  std::size_t n = 0;
  std::size_t k = 0;

  std::size_t m() const { return sets.size(); }
  std::map<NamedSet, std::size_t> multiplicities() const;
  friend bool operator==(const CoverInstance&, const CoverInstance&) = default;
};

/// Membership counting: true iff every ground element lies in >= k sets and
/// every target element in >= n + k sets. InputError when a set leaves the
/// ground, when m = 0 or when n + k = 0.
bool verify_cover(const CoverInstance& c, std::span<const std::string> ground);

/// k + n v(A) <= sum_i v(A_i). InputError unless c is a valid cover of v's
/// ground set.
bool up3_check(const SetFunction& v, const CoverInstance& c);

struct CoverSearchOptions {
  std::size_t m_max = 4;
  /// Maximum number of multisets examined before giving up.
  std::size_t budget = 50'000'000;
};

/// Looks for an (n,k)-cover violating UP3. Multisets of distinct non-empty
/// proper subsets are enumerated by non-decreasing size m <= m_max; for each
/// the largest admissible k and, per target, the largest n are tried, so a
/// returned certificate has the smallest possible m. Returns nothing when no
/// violation with m <= m_max exists. ResourceError past the budget.
std::optional<CoverInstance> search_violation(const SetFunction& v, const CoverSearchOptions& options);
inline std::optional<CoverInstance> search_violation(const SetFunction& v, std::size_t m_max) {
  return search_violation(v, CoverSearchOptions{m_max});
}

/// Certificate JSON: {"sets":[["a"],["a","b"]],"target":["a"],"n":1,"k":1}.
std::string save_certificate(const CoverInstance& c);
CoverInstance load_certificate(std::string_view json_text);

/// One instance of the likelihood axiom
///   l(phi_1) + ... + l(phi_m) - n l(phi) >= k
/// whose two side conditions are tautologies.
struct L4Instance {
  std::vector<std::size_t> members;  // indices into the pool, non-decreasing
  std::optional<std::size_t> target; // absent when n = 0
  std::size_t n = 0;
  std::size_t k = 0;
  LikelihoodFormula formula;
};

/// Side conditions of an L4 instance:
///   phi -> OR_{|J|=n+k} AND_{j in J} phi_j   and   OR_{|J|=k} AND_{j in J} phi_j.
std::pair<PropFormula, PropFormula> l4_side_conditions(std::span<const PropFormula> members,
                                                       const PropFormula& target, std::size_t n, std::size_t k);

/// Streams every L4 instance over multisets of `pool` with 1 <= m <= m_max
/// and 1 <= n + k <= m, keeping those whose side conditions pass
/// is_tautology. With n = 0 the target is irrelevant and is emitted once.
/// The callback may return false to stop early.
void for_each_l4_instance(std::span<const PropFormula> pool, std::size_t m_max,
                          const std::function<bool(const L4Instance&)>& fn);
std::vector<L4Instance> l4_instances(std::span<const PropFormula> pool, std::size_t m_max);

/// Outcome of one of the inclusion-exclusion style properties (1)-(6).
struct PropertyResult {
  int property = 0;
  bool pass = true;
  /// A violating tuple of subsets (A_1..A_n, or A, B) when !pass.
  std::vector<Subset> witness;
};

/// Checks properties (1)-(6) for an upper function and its lower companion
/// over the same ground set. (1) and (2) are checked for every n <= max_sets.
std::vector<PropertyResult> check_properties(const SetFunction& upper, const SetFunction& lower,
                                             std::size_t max_sets);
/// Lower function taken as the dual u(X) = 1 - v(complement X).
std::vector<PropertyResult> check_properties(const SetFunction& v, std::size_t max_sets);
/// Upper and lower envelopes of the structure's measures.
std::vector<PropertyResult> check_properties(const UpperProbStructure& m, std::size_t max_sets);

}  // namespace uplogic

#endif
