#include "support.hpp"

#include "uplogic/errors.hpp"
#include "uplogic/parser.hpp"

#include <gtest/gtest.h>

using namespace uplogic;
using namespace testing_support;

TEST(ParseLikelihood, ConjunctionOfTwoBasics) {
  auto f = parse_likelihood("l(p) >= 1/2 & l(!p) = 0");
  ASSERT_EQ(f.kind(), LikelihoodFormula::Kind::And);
  EXPECT_EQ(f.lhs().as_basic().relation, Relation::GreaterEq);
  EXPECT_EQ(f.lhs().as_basic().bound, Rational(1, 2));
  EXPECT_EQ(f.rhs().as_basic().relation, Relation::Equal);
  EXPECT_EQ(f.rhs().as_basic().term.addends()[0].argument, PropFormula::negation(PropFormula::var("p")));
}

TEST(ParseLikelihood, LinearTerm) {
  auto f = parse_likelihood("2 l(p) - 3 l(q & r) > -1");
  ASSERT_EQ(f.kind(), LikelihoodFormula::Kind::Basic);
  const auto& b = f.as_basic();
  Term expected({{Rational(2), PropFormula::var("p")},
                 {Rational(-3), PropFormula::conj(PropFormula::var("q"), PropFormula::var("r"))}});
  EXPECT_EQ(b.term, expected);
  EXPECT_EQ(b.relation, Relation::Greater);
  EXPECT_EQ(b.bound, Rational(-1));
}

TEST(ParseLikelihood, SignsAndDefaults) {
  auto b = parse_likelihood("-l(p) + 1/2 l(q) <= +3").as_basic();
  EXPECT_EQ(b.term.addends()[0].coefficient, Rational(-1));
  EXPECT_EQ(b.term.addends()[1].coefficient, Rational(1, 2));
  EXPECT_EQ(b.relation, Relation::LessEq);
  EXPECT_EQ(b.bound, Rational(3));
}

TEST(ParseLikelihood, PrecedenceAndNegation) {
  auto f = parse_likelihood("~l(a) >= 0 | l(b) >= 0 & l(c) >= 0");
  ASSERT_EQ(f.kind(), LikelihoodFormula::Kind::Or);
  EXPECT_EQ(f.lhs().kind(), LikelihoodFormula::Kind::Not);
  EXPECT_EQ(f.rhs().kind(), LikelihoodFormula::Kind::And);
  auto g = parse_likelihood("~(l(a) >= 0 | l(b) >= 0)");
  EXPECT_EQ(g.kind(), LikelihoodFormula::Kind::Not);
}

TEST(ParseLikelihood, WhitespaceInsensitive) {
  EXPECT_EQ(parse_likelihood("l(p)>=1/2&l(q)<1"), parse_likelihood("  l ( p )  >=  1 / 2\n & l(q) < 1 "));
}

TEST(ParseProp, Examples) {
  EXPECT_EQ(parse_prop("true"), PropFormula::truth());
  EXPECT_EQ(parse_prop("false"), PropFormula::falsity());
  auto f = parse_prop("!(p & q) | r");
  ASSERT_EQ(f.kind(), PropFormula::Kind::Or);
  EXPECT_EQ(f.lhs().kind(), PropFormula::Kind::Not);
  EXPECT_EQ(f.lhs().lhs().kind(), PropFormula::Kind::And);
  EXPECT_EQ(f.rhs(), PropFormula::var("r"));
  EXPECT_TRUE(equivalent(parse_prop("p -> q"), parse_prop("!p | q")));
  EXPECT_TRUE(equivalent(parse_prop("p <-> q"), parse_prop("(p & q) | (!p & !q)")));
  // -> is right associative and binds looser than |.
  EXPECT_TRUE(equivalent(parse_prop("p -> q -> r"), parse_prop("p -> (q -> r)")));
  EXPECT_TRUE(equivalent(parse_prop("p | q -> r"), parse_prop("(p | q) -> r")));
}

TEST(Print, Examples) {
  EXPECT_EQ(print(PropFormula::truth()), "true");
  EXPECT_EQ(print(LikelihoodFormula::basic(Term::likelihood(PropFormula::var("p")), Relation::GreaterEq,
                                           Rational(1, 2))),
            "l(p) >= 1/2");
  EXPECT_EQ(print(parse_likelihood("2 l(p) - 3 l(q & r) > -1")), "2 l(p) - 3 l(q & r) > -1");
  EXPECT_EQ(print(parse_prop("(p | q) & r")), "(p | q) & r");
  EXPECT_EQ(print(parse_prop("p & (q & r)")), "p & (q & r)");
  EXPECT_EQ(print(parse_prop("(p & q) & r")), "p & q & r");
}

TEST(Print, RoundTripOnGeneratedFormulas) {
  Rng rng(21);
  const std::vector<std::string> props{"p", "q", "r", "long_name2"};
  for (int trial = 0; trial < 1000; ++trial) {
    auto f = random_formula(rng, props, pick(rng, 1, 4), 3);
    auto text = print(f);
    EXPECT_EQ(parse_likelihood(text), f) << text;
    auto phi = random_prop(rng, props, 4);
    EXPECT_EQ(parse_prop(print(phi)), phi) << print(phi);
  }
}

TEST(ParseErrors, Positions) {
  try {
    parse_likelihood("l(p) >= 1/2 &\n l(q) >> 1");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 8u);
    EXPECT_EQ(e.offset(), 21u);
    EXPECT_FALSE(std::string(e.what()).empty());
  }
  try {
    parse_likelihood("l(p");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 3u);
    EXPECT_EQ(e.found(), "end of input");
  }
}

TEST(ParseErrors, Rejections) {
  for (const char* bad : {"", "l(p)", "l(p) >= ", "l() >= 1", "l(p) >= 1/0", "l(p) >= 1 >= 2", "p >= 1",
                          "l(true & ) >= 1", "l(p) >= 1 &", "l(l) >= 1", "l(p) = 1/2/3", "l(p) >= 1.5",
                          "~", "(l(p) >= 1", "l(p) >= 1)", "l(p) =< 1", "l(p -> ) > 0"})
    EXPECT_THROW(parse_likelihood(bad), ParseError) << bad;
  EXPECT_THROW(parse_prop("p q"), ParseError);
  EXPECT_THROW(parse_prop("l"), ParseError);
  EXPECT_THROW(parse_term("l(p) >= 1"), ParseError);
}

TEST(ParseErrors, ZeroDenominatorIsParseError) {
  try {
    parse_likelihood("l(p) >= 3/0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 11u);
  }
}

TEST(ParseErrors, DeepNestingIsRejectedNotCrashing) {
  std::string deep(100000, '(');
  EXPECT_THROW(parse_likelihood(deep), ParseError);
  std::string negs(100000, '!');
  EXPECT_THROW(parse_prop(negs + "p"), ParseError);
}

TEST(Parse, TotalOnRandomBytes) {
  Rng rng(22);
  const std::string alphabet = "l()pq!&|~<>=-+/ 0123456789truefals\n\t";
  for (int trial = 0; trial < 20000; ++trial) {
    std::string s(pick(rng, 0, 30), ' ');
    for (auto& ch : s)
      ch = coin(rng, 0.8) ? alphabet[pick(rng, 0, alphabet.size() - 1)] : static_cast<char>(pick(rng, 0, 255));
    try {
      auto f = parse_likelihood(s);
      EXPECT_EQ(parse_likelihood(print(f)), f);
    } catch (const ParseError& e) {
      EXPECT_LE(e.offset(), s.size());
      EXPECT_GE(e.line(), 1u);
      EXPECT_GE(e.column(), 1u);
    }
  }
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(to_string(Rational(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  // Leading zeros are decimal, never octal.
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_EQ(parse_rational("09/012"), Rational(3, 4));
  EXPECT_EQ(parse_likelihood("l(p) >= 010/020").as_basic().bound, Rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("1.5"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
  EXPECT_THROW(parse_rational("/3"), InputError);
}
