#ifndef UPLOGIC_FORMULA_HPP
#define UPLOGIC_FORMULA_HPP

#include "uplogic/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace uplogic {

/// Truth tables are materialized as bitsets of 2^N entries; N is capped here.
inline constexpr std::size_t kMaxTruthTableProps = 16;

/// Propositional formula over primitive propositions, TRUE/FALSE, !, &, |.
///
/// Implication and equivalence are sugar (see implies/iff) and never appear
/// as nodes. Values are immutable and share subtrees.
class PropFormula {
public:
  enum class Kind { Var, True, False, Not, And, Or };

  static PropFormula var(std::string name);
  static PropFormula truth();
  static PropFormula falsity();
  static PropFormula negation(PropFormula operand);
  static PropFormula conj(PropFormula lhs, PropFormula rhs);
  static PropFormula disj(PropFormula lhs, PropFormula rhs);
  /// a -> b, desugared to !a | b.
  static PropFormula implies(PropFormula lhs, PropFormula rhs);
  /// a <-> b, desugared to (!a | b) & (!b | a).
  static PropFormula iff(PropFormula lhs, PropFormula rhs);

  Kind kind() const;
  /// Proposition name; only meaningful for Kind::Var.
  const std::string& name() const;
  /// Operand of Not, or left operand of And/Or.
  const PropFormula& lhs() const;
  const PropFormula& rhs() const;

  /// Sorted, duplicate-free list of the primitive propositions occurring here.
  std::vector<std::string> propositions() const;

  friend bool operator==(const PropFormula& a, const PropFormula& b);

private:
  struct Node;
  explicit PropFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Truth table of `phi` over `props`: bit i is set iff atom i satisfies phi.
/// Atom i assigns props[j] the value of bit (N-1-j) of i, so the first
/// proposition is the most significant sign. Unknown propositions raise
/// InputError; N above kMaxTruthTableProps raises ResourceError.
boost::dynamic_bitset<> truth_table(const PropFormula& phi, std::span<const std::string> props);

/// One complete conjunction q1 & ... & qN over an ordered proposition list.
struct Atom {
  std::vector<std::string> props;
  std::vector<bool> signs;

  /// Position of this atom in atoms_of(props).
  std::size_t index() const;
  PropFormula formula() const;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// All 2^N atoms over `props` in lexicographic sign order (false < true,
/// first proposition most significant). Throws InputError on empty or
/// duplicated proposition lists.
std::vector<Atom> atoms_of(std::span<const std::string> props);

/// A set of atoms over a fixed proposition list, stored as a truth table.
class AtomSet {
public:
  AtomSet(std::vector<std::string> props, boost::dynamic_bitset<> members);

  const std::vector<std::string>& props() const { return props_; }
  const boost::dynamic_bitset<>& members() const { return members_; }
  std::size_t size() const { return members_.count(); }
  std::size_t universe_size() const { return members_.size(); }
  bool contains(std::size_t atom_index) const { return members_.test(atom_index); }
  std::vector<Atom> atoms() const;

  AtomSet complement() const;
  AtomSet intersect(const AtomSet& other) const;
  AtomSet unite(const AtomSet& other) const;

  friend bool operator==(const AtomSet&, const AtomSet&) = default;

private:
  std::vector<std::string> props_;
  boost::dynamic_bitset<> members_;
};

/// The atoms over `props` that make `phi` true. Every proposition of phi
/// must appear in props (InputError otherwise).
AtomSet atom_set(const PropFormula& phi, std::span<const std::string> props);

bool is_tautology(const PropFormula& phi);
bool is_satisfiable(const PropFormula& phi);
/// phi <-> psi is a tautology.
bool equivalent(const PropFormula& phi, const PropFormula& psi);

enum class Relation { GreaterEq, Greater, LessEq, Less, Equal };

struct Addend {
  Rational coefficient;
  PropFormula argument;
  friend bool operator==(const Addend&, const Addend&) = default;
};

/// theta_1 l(phi_1) + ... + theta_k l(phi_k), k >= 1.
class Term {
public:
  explicit Term(std::vector<Addend> addends);
  /// 1 * l(phi).
  static Term likelihood(PropFormula phi);

  std::span<const Addend> addends() const { return addends_; }
  std::size_t length() const { return addends_.size(); }
  /// Every coefficient negated.
  Term negated() const;

  friend bool operator==(const Term&, const Term&) = default;

private:
  std::vector<Addend> addends_;
};

struct Basic {
  Term term;
  Relation relation;
  Rational bound;
  friend bool operator==(const Basic&, const Basic&) = default;
};

/// Boolean combination of basic likelihood formulas.
class LikelihoodFormula {
public:
  enum class Kind { Basic, Not, And, Or };

  static LikelihoodFormula basic(Basic b);
  static LikelihoodFormula basic(Term t, Relation rel, Rational bound);
  static LikelihoodFormula negation(LikelihoodFormula operand);
  static LikelihoodFormula conj(LikelihoodFormula lhs, LikelihoodFormula rhs);
  static LikelihoodFormula disj(LikelihoodFormula lhs, LikelihoodFormula rhs);

  Kind kind() const;
  const Basic& as_basic() const;
  const LikelihoodFormula& lhs() const;
  const LikelihoodFormula& rhs() const;

  /// Sorted primitive propositions occurring in any l(...) argument.
  std::vector<std::string> propositions() const;

  friend bool operator==(const LikelihoodFormula& a, const LikelihoodFormula& b);

private:
  struct Node;
  explicit LikelihoodFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Rewrites f so that only >= and > occur and no negation remains:
///   t <= a  =>  -t >= -a          t < a   =>  -t > -a
///   t = a   =>  t >= a & -t >= -a
///   ~(t >= a) => -t > -a          ~(t > a) => -t >= -a
/// with De Morgan pushing negations down to the basic formulas.
LikelihoodFormula normalize(const LikelihoodFormula& f);

using Conjunction = std::vector<Basic>;

/// Disjunctive normal form of a normalized formula, treating basic formulas
/// as opaque literals. Throws InputError if f still contains a negation and
/// ResourceError past `max_disjuncts`.
std::vector<Conjunction> dnf(const LikelihoodFormula& f, std::size_t max_disjuncts = std::size_t{1} << 16);

/// Rebuilds a formula from DNF clauses (left-nested & and |).
LikelihoodFormula from_dnf(const std::vector<Conjunction>& clauses);

/// Symbol count |f| in fully parenthesized notation. Each primitive
/// proposition, constant, connective, relation and parenthesis is one symbol;
/// a written coefficient (any coefficient other than 1) is one symbol, and
/// so is the bound. Binary connectives contribute their operator plus a pair
/// of parentheses, l(phi) contributes "l", "(", ")", and the k-1 joins
/// between addends are one symbol each. Thus |l(p) >= 1| = 6 and
/// |~~f| = |f| + 2.
std::size_t size(const PropFormula& phi);
std::size_t size(const LikelihoodFormula& f);

}  // namespace uplogic

#endif
