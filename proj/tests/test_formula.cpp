#include "support.hpp"

#include "uplogic/errors.hpp"
#include "uplogic/formula.hpp"
#include "uplogic/parser.hpp"
#include "uplogic/semantics.hpp"

#include <gtest/gtest.h>

using namespace uplogic;
using namespace testing_support;

namespace {

PropFormula P(const char* text) { return parse_prop(text); }
LikelihoodFormula L(const char* text) { return parse_likelihood(text); }

std::map<std::string, bool> assignment_of(const Atom& a) {
  std::map<std::string, bool> out;
  for (std::size_t j = 0; j < a.props.size(); ++j) out[a.props[j]] = a.signs[j];
  return out;
}

}  // namespace

TEST(Atoms, SinglePropositionFalseFirst) {
  const std::vector<std::string> props{"p"};
  auto atoms = atoms_of(props);
  ASSERT_EQ(atoms.size(), 2u);
  EXPECT_EQ(atoms[0].signs, std::vector<bool>{false});
  EXPECT_EQ(atoms[1].signs, std::vector<bool>{true});
  EXPECT_EQ(print(atoms[0].formula()), "!p");
}

TEST(Atoms, CountsAndDistinctAssignments) {
  const std::vector<std::string> two{"p", "q"}, three{"p", "q", "r"};
  EXPECT_EQ(atoms_of(two).size(), 4u);
  auto atoms = atoms_of(three);
  ASSERT_EQ(atoms.size(), 8u);
  std::set<std::vector<bool>> seen;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    EXPECT_EQ(atoms[i].index(), i);
    seen.insert(atoms[i].signs);
    // The atom formula holds under its own assignment and no other.
    for (const auto& other : atoms)
      EXPECT_EQ(holds(atoms[i].formula(), assignment_of(other)), other.signs == atoms[i].signs);
  }
  EXPECT_EQ(seen.size(), 8u);
}

TEST(Atoms, DeterministicLexicographicOrder) {
  const std::vector<std::string> props{"a", "b"};
  auto atoms = atoms_of(props);
  EXPECT_EQ(atoms[1].signs, (std::vector<bool>{false, true}));
  EXPECT_EQ(atoms[2].signs, (std::vector<bool>{true, false}));
  EXPECT_EQ(atoms_of(props), atoms);
}

TEST(Atoms, RejectsDuplicatesAndEmptyLists) {
  const std::vector<std::string> dup{"p", "p"}, none;
  EXPECT_THROW(atoms_of(dup), InputError);
  EXPECT_THROW(atoms_of(none), InputError);
}

TEST(AtomSet, Examples) {
  const std::vector<std::string> props{"p", "q"};
  EXPECT_EQ(atom_set(PropFormula::truth(), props).size(), 4u);
  EXPECT_EQ(atom_set(PropFormula::falsity(), props).size(), 0u);
  EXPECT_EQ(atom_set(P("p | q"), props).size(), 3u);
  EXPECT_THROW(atom_set(P("r"), props), InputError);
}

TEST(AtomSet, MatchesDirectEvaluation) {
  Rng rng(11);
  const std::vector<std::string> props{"p", "q", "r"};
  const auto atoms = atoms_of(props);
  for (int trial = 0; trial < 300; ++trial) {
    auto phi = random_prop(rng, props, 4);
    auto set = atom_set(phi, props);
    for (const auto& a : atoms) EXPECT_EQ(set.contains(a.index()), holds(phi, assignment_of(a)));
  }
}

TEST(AtomSet, BooleanAlgebraLaws) {
  Rng rng(12);
  const std::vector<std::string> props{"p", "q", "r", "s"};
  for (int trial = 0; trial < 300; ++trial) {
    auto phi = random_prop(rng, props, 3);
    auto psi = random_prop(rng, props, 3);
    auto a = atom_set(phi, props);
    auto na = atom_set(PropFormula::negation(phi), props);
    EXPECT_EQ(a.size() + na.size(), 16u);
    EXPECT_EQ(na, a.complement());
    EXPECT_EQ(atom_set(PropFormula::conj(phi, psi), props), a.intersect(atom_set(psi, props)));
    EXPECT_EQ(atom_set(PropFormula::disj(phi, psi), props), a.unite(atom_set(psi, props)));
    EXPECT_EQ(is_tautology(PropFormula::iff(phi, psi)), a == atom_set(psi, props));
  }
}

TEST(Tautology, Examples) {
  EXPECT_TRUE(is_tautology(P("p | !p")));
  EXPECT_FALSE(is_tautology(P("p")));
  EXPECT_TRUE(is_tautology(P("(p -> q) & p -> q")));
  EXPECT_TRUE(is_tautology(P("true")));
  EXPECT_FALSE(is_satisfiable(P("p & !p")));
  EXPECT_TRUE(equivalent(P("p -> q"), P("!p | q")));
}

TEST(TruthTable, Caps) {
  std::vector<std::string> many;
  for (int i = 0; i < 17; ++i) many.push_back("p" + std::to_string(i));
  EXPECT_THROW(truth_table(P("p0"), many), ResourceError);
  const std::vector<std::string> dup{"p", "p"};
  EXPECT_THROW(truth_table(P("p"), dup), InputError);
}

TEST(Term, RejectsEmpty) { EXPECT_THROW(Term(std::vector<Addend>{}), InputError); }

TEST(Normalize, NegatedGreaterEq) {
  auto n = normalize(L("~(l(p) >= 1/2)"));
  auto expected = LikelihoodFormula::basic(Term({{Rational(-1), PropFormula::var("p")}}), Relation::Greater,
                                           Rational(-1, 2));
  EXPECT_EQ(n, expected);
}

TEST(Normalize, EqualityExpands) {
  auto n = normalize(L("l(p) = 1"));
  auto expected = LikelihoodFormula::conj(
      LikelihoodFormula::basic(Term::likelihood(PropFormula::var("p")), Relation::GreaterEq, Rational(1)),
      LikelihoodFormula::basic(Term({{Rational(-1), PropFormula::var("p")}}), Relation::GreaterEq, Rational(-1)));
  EXPECT_EQ(n, expected);
}

TEST(Normalize, LessBecomesNegatedGreater) {
  auto n = normalize(L("l(p) < 1/3"));
  EXPECT_EQ(n, L("-l(p) > -1/3"));
  // Both forms agree on a two-measure structure.
  const auto m = load_structure(read_file(fixture("marble.json")));
  for (const char* text : {"l(red) < 1/3", "l(blue) < 1/3", "l(yellow) < 1/3"}) {
    auto f = L(text);
    EXPECT_EQ(eval(m, f), eval(m, normalize(f))) << text;
  }
}

TEST(Normalize, OnlyWeakAndStrictGreaterRemain) {
  Rng rng(13);
  const std::vector<std::string> props{"p", "q"};
  std::function<void(const LikelihoodFormula&)> check = [&](const LikelihoodFormula& f) {
    switch (f.kind()) {
      case LikelihoodFormula::Kind::Basic: {
        auto r = f.as_basic().relation;
        EXPECT_TRUE(r == Relation::GreaterEq || r == Relation::Greater);
        break;
      }
      case LikelihoodFormula::Kind::Not: ADD_FAILURE() << "negation survived"; break;
      default:
        check(f.lhs());
        check(f.rhs());
    }
  };
  for (int trial = 0; trial < 200; ++trial) check(normalize(random_formula(rng, props, pick(rng, 1, 5))));
}

TEST(Dnf, Examples) {
  auto a = L("l(a) >= 1/2"), b = L("l(b) >= 1/2"), c = L("l(c) >= 1/2");
  const Basic& ba = a.as_basic();
  const Basic& bb = b.as_basic();
  const Basic& bc = c.as_basic();
  EXPECT_EQ(dnf(a), (std::vector<Conjunction>{{ba}}));
  EXPECT_EQ(dnf(LikelihoodFormula::conj(LikelihoodFormula::disj(a, b), c)),
            (std::vector<Conjunction>{{ba, bc}, {bb, bc}}));
  EXPECT_EQ(dnf(LikelihoodFormula::disj(a, LikelihoodFormula::conj(b, c))),
            (std::vector<Conjunction>{{ba}, {bb, bc}}));
  EXPECT_THROW(dnf(LikelihoodFormula::negation(a)), InputError);
}

TEST(Dnf, DistributionOverLiteralValuations) {
  // (a | b) & c against its DNF on all 8 valuations of the three literals,
  // realised by structures where each literal is independently true.
  auto f = L("(l(a) >= 1/2 | l(b) >= 1/2) & l(c) >= 1/2");
  auto clauses = dnf(normalize(f));
  for (int v = 0; v < 8; ++v) {
    std::vector<World> worlds{{"w", {{"a", bool(v & 1)}, {"b", bool(v & 2)}, {"c", bool(v & 4)}}}};
    UpperProbStructure m({"a", "b", "c"}, worlds, {{"m", {Rational(1)}}});
    bool any = false;
    for (const auto& clause : clauses) {
      bool all = true;
      for (const auto& b : clause) all = all && eval(m, b);
      any = any || all;
    }
    EXPECT_EQ(any, eval(m, f));
  }
}

TEST(Dnf, ResourceLimit) {
  // (x1 | y1) & ... & (x17 | y17) has 2^17 disjuncts.
  std::string text;
  for (int i = 0; i < 17; ++i) {
    if (i) text += " & ";
    text += "(l(p) >= " + std::to_string(i) + " | l(q) >= " + std::to_string(i) + ")";
  }
  EXPECT_THROW(dnf(normalize(parse_likelihood(text))), ResourceError);
}

TEST(NormalizeDnf, PreserveSatisfaction) {
  Rng rng(14);
  const std::vector<std::string> props{"p", "q", "r"};
  for (int trial = 0; trial < 300; ++trial) {
    auto f = random_formula(rng, props, pick(rng, 1, 4));
    auto m = random_structure(rng, props, 5, 3);
    auto n = normalize(f);
    const bool expected = eval(m, f);
    EXPECT_EQ(eval(m, n), expected);
    EXPECT_EQ(eval(m, from_dnf(dnf(n))), expected);
  }
}

TEST(Size, Examples) {
  EXPECT_EQ(size(L("l(p) >= 1")), 6u);
  auto f = L("2 l(p) - l(q & r) > 1/2 | l(s) <= 1");
  EXPECT_EQ(size(LikelihoodFormula::negation(LikelihoodFormula::negation(f))), size(f) + 2);
  auto g = L("l(t) >= 0");
  EXPECT_GT(size(LikelihoodFormula::conj(f, g)), size(f));
  // l(p & q) >= 1: l ( ( p & q ) ) >= 1
  EXPECT_EQ(size(L("l(p & q) >= 1")), 10u);
  // 2 l(p) + l(q) >= 1: 2 l ( p ) + l ( q ) >= 1
  EXPECT_EQ(size(L("2 l(p) + l(q) >= 1")), 12u);
  EXPECT_EQ(size(P("!p")), 2u);
}

TEST(Size, MonotoneUnderConjunction) {
  Rng rng(15);
  const std::vector<std::string> props{"p", "q"};
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_formula(rng, props, pick(rng, 1, 3));
    auto g = random_formula(rng, props, 1);
    EXPECT_GT(size(LikelihoodFormula::conj(f, g)), size(f));
  }
}
