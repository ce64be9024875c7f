#include "uplogic/solver.hpp"

#include "uplogic/errors.hpp"
#include "uplogic/lp.hpp"
#include "uplogic/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace uplogic {

namespace {

std::vector<std::string> checked_props(std::vector<std::string> props, const SolverOptions& options) {
  const std::size_t cap = std::min(options.atom_cap, kMaxTruthTableProps);
  if (props.size() > cap)
    throw ResourceError("formula mentions " + std::to_string(props.size()) + " propositions, above the cap of " +
                        std::to_string(cap));
  return props;
}

std::vector<std::string> merge_props(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

/// Witness LP for one conjunction of normalized basic formulas.
class WitnessProgram {
public:
  WitnessProgram(const std::vector<std::string>& props, const Conjunction& clause, const Term* objective)
      : props_(props), atoms_(std::size_t{1} << props.size()) {
    for (const auto& b : clause) register_term(b.term);
    if (objective) register_term(*objective);
    group_atoms();
    build_core();
    for (const auto& b : clause) add_basic(b);
    if (objective) sys_.objective = lp::Objective{term_row(*objective), lp::Direction::Maximize};
  }

  lp::LinearSystem& system() { return sys_; }

  UpperProbStructure model(const std::vector<Rational>& point) const {
    std::vector<World> worlds;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      const std::size_t atom = classes_[c];
      World w;
      std::string id;
      for (std::size_t j = 0; j < props_.size(); ++j) {
        const bool value = (atom >> (props_.size() - 1 - j)) & 1U;
        w.assignment[props_[j]] = value;
        if (j) id += '&';
        if (!value) id += '!';
        id += props_[j];
      }
      w.id = props_.empty() ? "true" : id;
      worlds.push_back(std::move(w));
    }
    std::vector<Measure> measures;
    for (std::size_t i = 0; i < args_.size(); ++i) {
      Measure m;
      m.id = "m" + std::to_string(i + 1);
      for (std::size_t c = 0; c < classes_.size(); ++c) m.weights.push_back(point[x(i, c)]);
      measures.push_back(std::move(m));
    }
    return UpperProbStructure(props_, std::move(worlds), std::move(measures));
  }

private:
  std::size_t x(std::size_t measure, std::size_t cls) const { return measure * classes_.size() + cls; }
  std::size_t y(std::size_t arg) const { return args_.size() * classes_.size() + arg; }

  void register_term(const Term& t) {
    for (const auto& a : t.addends()) {
      auto table = truth_table(a.argument, props_);
      auto it = std::find(tables_.begin(), tables_.end(), table);
      if (it == tables_.end()) {
        args_.push_back(a.argument);
        tables_.push_back(std::move(table));
      }
    }
  }

  std::size_t arg_index(const PropFormula& phi) const {
    const auto table = truth_table(phi, props_);
    return static_cast<std::size_t>(std::find(tables_.begin(), tables_.end(), table) - tables_.begin());
  }

  // Atoms with the same truth values on every argument are interchangeable;
  // each class is represented by its smallest atom.
  void group_atoms() {
    std::map<std::vector<bool>, std::size_t> seen;
    for (std::size_t a = 0; a < atoms_; ++a) {
      std::vector<bool> signature(args_.size());
      for (std::size_t i = 0; i < args_.size(); ++i) signature[i] = tables_[i].test(a);
      if (seen.emplace(std::move(signature), classes_.size()).second) classes_.push_back(a);
    }
    satisfied_.assign(args_.size(), {});
    for (std::size_t i = 0; i < args_.size(); ++i)
      for (std::size_t c = 0; c < classes_.size(); ++c)
        if (tables_[i].test(classes_[c])) satisfied_[i].push_back(c);
  }

  void build_core() {
    const std::size_t t = args_.size();
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t c = 0; c < classes_.size(); ++c)
        sys_.add_variable("x" + std::to_string(i) + "_" + std::to_string(c), true);
    for (std::size_t i = 0; i < t; ++i) sys_.add_variable("y" + std::to_string(i), true);
    const std::size_t n = sys_.size();

    for (std::size_t i = 0; i < t; ++i) {
      std::vector<Rational> row(n);
      for (std::size_t c = 0; c < classes_.size(); ++c) row[x(i, c)] = 1;
      sys_.add(std::move(row), lp::Sense::Exactly, Rational(1));
    }
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = 0; j < t; ++j) {
        std::vector<Rational> row(n);
        row[y(i)] = 1;
        for (std::size_t c : satisfied_[i]) row[x(j, c)] = -1;
        sys_.add(std::move(row), i == j ? lp::Sense::Exactly : lp::Sense::AtLeast, Rational(0));
      }
    }
  }

  std::vector<Rational> term_row(const Term& t) const {
    std::vector<Rational> row(sys_.size());
    for (const auto& a : t.addends()) row[y(arg_index(a.argument))] += a.coefficient;
    return row;
  }

  void add_basic(const Basic& b) {
    lp::Sense sense;
    switch (b.relation) {
      case Relation::GreaterEq: sense = lp::Sense::AtLeast; break;
      case Relation::Greater: sense = lp::Sense::Above; break;
      default: throw InternalError("solver expects normalized basic formulas");
    }
    sys_.add(term_row(b.term), sense, b.bound);
  }

  std::vector<std::string> props_;
  std::size_t atoms_;
  std::vector<PropFormula> args_;
  std::vector<boost::dynamic_bitset<>> tables_;
  std::vector<std::size_t> classes_;
  std::vector<std::vector<std::size_t>> satisfied_;
  lp::LinearSystem sys_;
};

void absorb(SolverStats& stats, const lp::Stats& lp_stats) {
  stats.lp_rows = std::max(stats.lp_rows, lp_stats.rows);
  stats.lp_columns = std::max(stats.lp_columns, lp_stats.columns);
  stats.pivots += lp_stats.pivots;
}

}  // namespace

SatResult sat(const LikelihoodFormula& f, const SolverOptions& options) {
  const auto props = checked_props(f.propositions(), options);
  const auto clauses = dnf(normalize(f), options.max_disjuncts);
  SatResult res;
  res.stats.disjuncts = clauses.size();
  res.stats.propositions = props.size();
  for (const auto& clause : clauses) {
    WitnessProgram program(props, clause, nullptr);
    lp::Stats lp_stats;
    auto outcome = lp::feasible(program.system(), &lp_stats);
    ++res.stats.disjuncts_solved;
    absorb(res.stats, lp_stats);
    if (outcome.verdict != lp::Verdict::Feasible) continue;
    auto model = program.model(outcome.point);
    if (!eval(model, f)) throw InternalError("extracted model does not satisfy the formula");
    res.satisfiable = true;
    res.stats.model_worlds = model.world_count();
    res.stats.model_measures = model.measures().size();
    res.model = std::move(model);
    return res;
  }
  return res;
}

ValidResult valid(const LikelihoodFormula& f, const SolverOptions& options) {
  auto s = sat(LikelihoodFormula::negation(f), options);
  ValidResult res;
  res.valid = !s.satisfiable;
  res.countermodel = std::move(s.model);
  res.stats = s.stats;
  return res;
}

BoundsResult bounds(const LikelihoodFormula& f, const Term& t, const SolverOptions& options) {
  std::vector<std::string> term_props;
  for (const auto& a : t.addends()) term_props = merge_props(std::move(term_props), a.argument.propositions());
  const auto props = checked_props(merge_props(f.propositions(), term_props), options);
  const auto clauses = dnf(normalize(f), options.max_disjuncts);

  BoundsResult res;
  res.stats.disjuncts = clauses.size();
  res.stats.propositions = props.size();
  Term negated = t.negated();
  for (std::size_t d = 0; d < clauses.size(); ++d) {
    lp::Stats lp_stats;
    WitnessProgram up(props, clauses[d], &t);
    auto hi = lp::optimize(up.system(), &lp_stats);
    ++res.stats.disjuncts_solved;
    if (hi.verdict == lp::Verdict::Infeasible) {
      absorb(res.stats, lp_stats);
      continue;
    }
    WitnessProgram down(props, clauses[d], &negated);
    auto lo = lp::optimize(down.system(), &lp_stats);
    absorb(res.stats, lp_stats);
    if (hi.verdict != lp::Verdict::Optimal || lo.verdict != lp::Verdict::Optimal)
      throw InternalError("bounded term reported unbounded or infeasible");
    if (!eval(up.model(hi.point), f) || !eval(down.model(lo.point), f))
      throw InternalError("bounds witness does not satisfy the formula");

    DisjunctBounds db{d, {-lo.value, lo.attained}, {hi.value, hi.attained}};
    if (!res.satisfiable) {
      res.lower = db.lower;
      res.upper = db.upper;
    } else {
      if (db.upper.value > res.upper.value)
        res.upper = db.upper;
      else if (db.upper.value == res.upper.value)
        res.upper.attained = res.upper.attained || db.upper.attained;
      if (db.lower.value < res.lower.value)
        res.lower = db.lower;
      else if (db.lower.value == res.lower.value)
        res.lower.attained = res.lower.attained || db.lower.attained;
    }
    res.satisfiable = true;
    res.provenance.push_back(std::move(db));
  }
  return res;
}

}  // namespace uplogic
