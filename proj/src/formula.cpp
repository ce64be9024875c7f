#include "uplogic/formula.hpp"

#include "uplogic/errors.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>

namespace uplogic {

// ---------------------------------------------------------------------------
// PropFormula

struct PropFormula::Node {
  Kind kind;
  std::string name;
  std::vector<PropFormula> children;
};

PropFormula PropFormula::var(std::string name) {
  if (name.empty()) throw InputError("proposition name must be non-empty");
  return PropFormula(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}}));
}

PropFormula PropFormula::truth() {
  static const auto leaf = std::make_shared<const Node>(Node{Kind::True, {}, {}});
  return PropFormula(leaf);
}

PropFormula PropFormula::falsity() {
  static const auto leaf = std::make_shared<const Node>(Node{Kind::False, {}, {}});
  return PropFormula(leaf);
}

PropFormula PropFormula::negation(PropFormula operand) {
  return PropFormula(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(operand)}}));
}

PropFormula PropFormula::conj(PropFormula lhs, PropFormula rhs) {
  return PropFormula(std::make_shared<const Node>(Node{Kind::And, {}, {std::move(lhs), std::move(rhs)}}));
}

PropFormula PropFormula::disj(PropFormula lhs, PropFormula rhs) {
  return PropFormula(std::make_shared<const Node>(Node{Kind::Or, {}, {std::move(lhs), std::move(rhs)}}));
}

PropFormula PropFormula::implies(PropFormula lhs, PropFormula rhs) {
  return disj(negation(std::move(lhs)), std::move(rhs));
}

PropFormula PropFormula::iff(PropFormula lhs, PropFormula rhs) {
  return conj(implies(lhs, rhs), implies(rhs, lhs));
}

PropFormula::Kind PropFormula::kind() const { return node_->kind; }
const std::string& PropFormula::name() const { return node_->name; }

const PropFormula& PropFormula::lhs() const { return node_->children.at(0); }
const PropFormula& PropFormula::rhs() const { return node_->children.at(1); }

bool operator==(const PropFormula& a, const PropFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case PropFormula::Kind::Var: return a.name() == b.name();
    case PropFormula::Kind::True:
    case PropFormula::Kind::False: return true;
    case PropFormula::Kind::Not: return a.lhs() == b.lhs();
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

namespace {

void collect_props(const PropFormula& phi, std::set<std::string>& out) {
  switch (phi.kind()) {
    case PropFormula::Kind::Var: out.insert(phi.name()); break;
    case PropFormula::Kind::True:
    case PropFormula::Kind::False: break;
    case PropFormula::Kind::Not: collect_props(phi.lhs(), out); break;
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or:
      collect_props(phi.lhs(), out);
      collect_props(phi.rhs(), out);
      break;
  }
}

}  // namespace

std::vector<std::string> PropFormula::propositions() const {
  std::set<std::string> names;
  collect_props(*this, names);
  return {names.begin(), names.end()};
}

// ---------------------------------------------------------------------------
// Truth tables and atoms

namespace {

void check_prop_list(std::span<const std::string> props) {
  if (props.size() > kMaxTruthTableProps)
    throw ResourceError("truth table over " + std::to_string(props.size()) +
                        " propositions exceeds the cap of " + std::to_string(kMaxTruthTableProps));
  std::set<std::string> seen;
  for (const auto& p : props)
    if (!seen.insert(p).second) throw InputError("duplicate proposition '" + p + "'");
}

class TableBuilder {
public:
  explicit TableBuilder(std::span<const std::string> props) : n_(props.size()), rows_(std::size_t{1} << n_) {
    for (std::size_t j = 0; j < n_; ++j) index_.emplace(props[j], j);
  }

  boost::dynamic_bitset<> build(const PropFormula& phi) {
    switch (phi.kind()) {
      case PropFormula::Kind::True: return boost::dynamic_bitset<>(rows_).set();
      case PropFormula::Kind::False: return boost::dynamic_bitset<>(rows_);
      case PropFormula::Kind::Var: return column(phi.name());
      case PropFormula::Kind::Not: return ~build(phi.lhs());
      case PropFormula::Kind::And: return build(phi.lhs()) & build(phi.rhs());
      case PropFormula::Kind::Or: return build(phi.lhs()) | build(phi.rhs());
    }
    return {};
  }

private:
  boost::dynamic_bitset<> column(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) throw InputError("unknown proposition '" + name + "'");
    auto cached = columns_.find(it->second);
    if (cached != columns_.end()) return cached->second;
    const std::size_t shift = n_ - 1 - it->second;
    boost::dynamic_bitset<> col(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      if ((i >> shift) & 1U) col.set(i);
    columns_.emplace(it->second, col);
    return col;
  }

  std::size_t n_;
  std::size_t rows_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::size_t, boost::dynamic_bitset<>> columns_;
};

}  // namespace

boost::dynamic_bitset<> truth_table(const PropFormula& phi, std::span<const std::string> props) {
  check_prop_list(props);
  return TableBuilder(props).build(phi);
}

std::size_t Atom::index() const {
  std::size_t i = 0;
  for (bool s : signs) i = (i << 1) | (s ? 1U : 0U);
  return i;
}

PropFormula Atom::formula() const {
  if (props.empty()) return PropFormula::truth();
  auto literal = [&](std::size_t j) {
    auto v = PropFormula::var(props[j]);
    return signs[j] ? v : PropFormula::negation(v);
  };
  PropFormula out = literal(0);
  for (std::size_t j = 1; j < props.size(); ++j) out = PropFormula::conj(out, literal(j));
  return out;
}

std::vector<Atom> atoms_of(std::span<const std::string> props) {
  if (props.empty()) throw InputError("atoms_of needs at least one proposition");
  check_prop_list(props);
  const std::size_t n = props.size();
  std::vector<Atom> out;
  out.reserve(std::size_t{1} << n);
  std::vector<std::string> names(props.begin(), props.end());
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
    Atom a{names, std::vector<bool>(n)};
    for (std::size_t j = 0; j < n; ++j) a.signs[j] = (i >> (n - 1 - j)) & 1U;
    out.push_back(std::move(a));
  }
  return out;
}

AtomSet::AtomSet(std::vector<std::string> props, boost::dynamic_bitset<> members)
    : props_(std::move(props)), members_(std::move(members)) {
  if (members_.size() != (std::size_t{1} << props_.size()))
    throw InputError("atom set size does not match its proposition list");
}

std::vector<Atom> AtomSet::atoms() const {
  std::vector<Atom> out;
  const std::size_t n = props_.size();
  for (auto i = members_.find_first(); i != boost::dynamic_bitset<>::npos; i = members_.find_next(i)) {
    Atom a{props_, std::vector<bool>(n)};
    for (std::size_t j = 0; j < n; ++j) a.signs[j] = (i >> (n - 1 - j)) & 1U;
    out.push_back(std::move(a));
  }
  return out;
}

AtomSet AtomSet::complement() const { return AtomSet(props_, ~members_); }

AtomSet AtomSet::intersect(const AtomSet& other) const {
  if (props_ != other.props_) throw InputError("atom sets over different proposition lists");
  return AtomSet(props_, members_ & other.members_);
}

AtomSet AtomSet::unite(const AtomSet& other) const {
  if (props_ != other.props_) throw InputError("atom sets over different proposition lists");
  return AtomSet(props_, members_ | other.members_);
}

AtomSet atom_set(const PropFormula& phi, std::span<const std::string> props) {
  return AtomSet({props.begin(), props.end()}, truth_table(phi, props));
}

bool is_tautology(const PropFormula& phi) {
  const auto props = phi.propositions();
  return truth_table(phi, props).all();
}

bool is_satisfiable(const PropFormula& phi) {
  const auto props = phi.propositions();
  return truth_table(phi, props).any();
}

bool equivalent(const PropFormula& phi, const PropFormula& psi) {
  return is_tautology(PropFormula::iff(phi, psi));
}

// ---------------------------------------------------------------------------
// Terms and likelihood formulas

Term::Term(std::vector<Addend> addends) : addends_(std::move(addends)) {
  if (addends_.empty()) throw InputError("a term needs at least one l(...) addend");
}

Term Term::likelihood(PropFormula phi) { return Term({Addend{Rational(1), std::move(phi)}}); }

Term Term::negated() const {
  std::vector<Addend> out(addends_);
  for (auto& a : out) a.coefficient = -a.coefficient;
  return Term(std::move(out));
}

struct LikelihoodFormula::Node {
  Kind kind;
  std::optional<Basic> basic;
  std::vector<LikelihoodFormula> children;
};

LikelihoodFormula LikelihoodFormula::basic(Basic b) {
  return LikelihoodFormula(std::make_shared<const Node>(Node{Kind::Basic, std::move(b), {}}));
}

LikelihoodFormula LikelihoodFormula::basic(Term t, Relation rel, Rational bound) {
  return basic(Basic{std::move(t), rel, std::move(bound)});
}

LikelihoodFormula LikelihoodFormula::negation(LikelihoodFormula operand) {
  return LikelihoodFormula(std::make_shared<const Node>(Node{Kind::Not, std::nullopt, {std::move(operand)}}));
}

LikelihoodFormula LikelihoodFormula::conj(LikelihoodFormula lhs, LikelihoodFormula rhs) {
  return LikelihoodFormula(
      std::make_shared<const Node>(Node{Kind::And, std::nullopt, {std::move(lhs), std::move(rhs)}}));
}

LikelihoodFormula LikelihoodFormula::disj(LikelihoodFormula lhs, LikelihoodFormula rhs) {
  return LikelihoodFormula(
      std::make_shared<const Node>(Node{Kind::Or, std::nullopt, {std::move(lhs), std::move(rhs)}}));
}

LikelihoodFormula::Kind LikelihoodFormula::kind() const { return node_->kind; }

const Basic& LikelihoodFormula::as_basic() const {
  if (node_->kind != Kind::Basic) throw InputError("formula is not a basic likelihood formula");
  return *node_->basic;
}

const LikelihoodFormula& LikelihoodFormula::lhs() const { return node_->children.at(0); }
const LikelihoodFormula& LikelihoodFormula::rhs() const { return node_->children.at(1); }

bool operator==(const LikelihoodFormula& a, const LikelihoodFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case LikelihoodFormula::Kind::Basic: return a.as_basic() == b.as_basic();
    case LikelihoodFormula::Kind::Not: return a.lhs() == b.lhs();
    case LikelihoodFormula::Kind::And:
    case LikelihoodFormula::Kind::Or: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

namespace {

void collect_props(const LikelihoodFormula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case LikelihoodFormula::Kind::Basic:
      for (const auto& a : f.as_basic().term.addends()) collect_props(a.argument, out);
      break;
    case LikelihoodFormula::Kind::Not: collect_props(f.lhs(), out); break;
    case LikelihoodFormula::Kind::And:
    case LikelihoodFormula::Kind::Or:
      collect_props(f.lhs(), out);
      collect_props(f.rhs(), out);
      break;
  }
}

LikelihoodFormula normalize_basic(const Basic& b, bool negated) {
  using LF = LikelihoodFormula;
  const Term& t = b.term;
  const Rational& a = b.bound;
  switch (b.relation) {
    case Relation::GreaterEq:
      return negated ? LF::basic(t.negated(), Relation::Greater, -a) : LF::basic(t, Relation::GreaterEq, a);
    case Relation::Greater:
      return negated ? LF::basic(t.negated(), Relation::GreaterEq, -a) : LF::basic(t, Relation::Greater, a);
    case Relation::LessEq:
      return negated ? LF::basic(t, Relation::Greater, a) : LF::basic(t.negated(), Relation::GreaterEq, -a);
    case Relation::Less:
      return negated ? LF::basic(t, Relation::GreaterEq, a) : LF::basic(t.negated(), Relation::Greater, -a);
    case Relation::Equal:
      if (negated)
        return LF::disj(LF::basic(t.negated(), Relation::Greater, -a), LF::basic(t, Relation::Greater, a));
      return LF::conj(LF::basic(t, Relation::GreaterEq, a), LF::basic(t.negated(), Relation::GreaterEq, -a));
  }
  throw InternalError("unhandled relation");
}

LikelihoodFormula push_negations(const LikelihoodFormula& f, bool negated) {
  using LF = LikelihoodFormula;
  switch (f.kind()) {
    case LF::Kind::Basic: return normalize_basic(f.as_basic(), negated);
    case LF::Kind::Not: return push_negations(f.lhs(), !negated);
    case LF::Kind::And: {
      auto l = push_negations(f.lhs(), negated);
      auto r = push_negations(f.rhs(), negated);
      return negated ? LF::disj(std::move(l), std::move(r)) : LF::conj(std::move(l), std::move(r));
    }
    case LF::Kind::Or: {
      auto l = push_negations(f.lhs(), negated);
      auto r = push_negations(f.rhs(), negated);
      return negated ? LF::conj(std::move(l), std::move(r)) : LF::disj(std::move(l), std::move(r));
    }
  }
  throw InternalError("unhandled formula kind");
}

std::vector<Conjunction> dnf_rec(const LikelihoodFormula& f, std::size_t max_disjuncts) {
  using LF = LikelihoodFormula;
  switch (f.kind()) {
    case LF::Kind::Basic: return {{f.as_basic()}};
    case LF::Kind::Not: throw InputError("dnf expects a normalized formula (negation found)");
    case LF::Kind::Or: {
      auto out = dnf_rec(f.lhs(), max_disjuncts);
      auto r = dnf_rec(f.rhs(), max_disjuncts);
      if (out.size() + r.size() > max_disjuncts)
        throw ResourceError("DNF exceeds " + std::to_string(max_disjuncts) + " disjuncts");
      out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
      return out;
    }
    case LF::Kind::And: {
      auto l = dnf_rec(f.lhs(), max_disjuncts);
      auto r = dnf_rec(f.rhs(), max_disjuncts);
      if (l.size() * r.size() > max_disjuncts)
        throw ResourceError("DNF exceeds " + std::to_string(max_disjuncts) + " disjuncts");
      std::vector<Conjunction> out;
      out.reserve(l.size() * r.size());
      for (const auto& a : l)
        for (const auto& b : r) {
          Conjunction c(a);
          c.insert(c.end(), b.begin(), b.end());
          out.push_back(std::move(c));
        }
      return out;
    }
  }
  throw InternalError("unhandled formula kind");
}

}  // namespace

std::vector<std::string> LikelihoodFormula::propositions() const {
  std::set<std::string> names;
  collect_props(*this, names);
  return {names.begin(), names.end()};
}

LikelihoodFormula normalize(const LikelihoodFormula& f) { return push_negations(f, false); }

std::vector<Conjunction> dnf(const LikelihoodFormula& f, std::size_t max_disjuncts) {
  return dnf_rec(f, max_disjuncts);
}

LikelihoodFormula from_dnf(const std::vector<Conjunction>& clauses) {
  using LF = LikelihoodFormula;
  if (clauses.empty() || clauses.front().empty()) throw InputError("from_dnf needs non-empty clauses");
  auto clause = [](const Conjunction& c) {
    if (c.empty()) throw InputError("from_dnf needs non-empty clauses");
    LF out = LF::basic(c.front());
    for (std::size_t i = 1; i < c.size(); ++i) out = LF::conj(out, LF::basic(c[i]));
    return out;
  };
  LF out = clause(clauses.front());
  for (std::size_t i = 1; i < clauses.size(); ++i) out = LF::disj(out, clause(clauses[i]));
  return out;
}

std::size_t size(const PropFormula& phi) {
  switch (phi.kind()) {
    case PropFormula::Kind::Var:
    case PropFormula::Kind::True:
    case PropFormula::Kind::False: return 1;
    case PropFormula::Kind::Not: return 1 + size(phi.lhs());
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or: return 3 + size(phi.lhs()) + size(phi.rhs());
  }
  return 0;
}

std::size_t size(const LikelihoodFormula& f) {
  switch (f.kind()) {
    case LikelihoodFormula::Kind::Basic: {
      const auto& b = f.as_basic();
      std::size_t n = b.term.length() - 1;  // joins
      for (const auto& a : b.term.addends()) n += 3 + size(a.argument) + (a.coefficient == 1 ? 0 : 1);
      return n + 2;  // relation and bound
    }
    case LikelihoodFormula::Kind::Not: return 1 + size(f.lhs());
    case LikelihoodFormula::Kind::And:
    case LikelihoodFormula::Kind::Or: return 3 + size(f.lhs()) + size(f.rhs());
  }
  return 0;
}

}  // namespace uplogic
