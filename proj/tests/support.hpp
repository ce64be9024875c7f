#ifndef UPLOGIC_TESTS_SUPPORT_HPP
#define UPLOGIC_TESTS_SUPPORT_HPP

// Generators and independent oracles shared by the test binaries.

#include "uplogic/formula.hpp"
#include "uplogic/lp.hpp"
#include "uplogic/semantics.hpp"
#include "uplogic/structure.hpp"

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using uplogic::Rational;
using Rng = std::mt19937_64;

inline std::string fixture(const std::string& name) { return std::string(UPLOGIC_FIXTURE_DIR) + "/" + name; }

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Rational small_rational(Rng& rng, int max_num = 6, int max_den = 6, bool allow_negative = true) {
  const int num = static_cast<int>(pick(rng, 0, static_cast<std::size_t>(max_num)));
  const int den = static_cast<int>(pick(rng, 1, static_cast<std::size_t>(max_den)));
  Rational q(num, den);
  return allow_negative && coin(rng) ? Rational(-q) : q;
}

/// Direct recursive evaluation under an assignment; shares no code with the
/// truth-table machinery.
inline bool holds(const uplogic::PropFormula& phi, const std::map<std::string, bool>& assignment) {
  using K = uplogic::PropFormula::Kind;
  switch (phi.kind()) {
    case K::Var: {
      auto it = assignment.find(phi.name());
      return it != assignment.end() && it->second;
    }
    case K::True: return true;
    case K::False: return false;
    case K::Not: return !holds(phi.lhs(), assignment);
    case K::And: return holds(phi.lhs(), assignment) && holds(phi.rhs(), assignment);
    case K::Or: return holds(phi.lhs(), assignment) || holds(phi.rhs(), assignment);
  }
  return false;
}

inline uplogic::PropFormula random_prop(Rng& rng, const std::vector<std::string>& props, int depth) {
  using uplogic::PropFormula;
  if (depth <= 0 || coin(rng, 0.3)) {
    const std::size_t r = pick(rng, 0, props.size() + 1);
    if (r < props.size()) return PropFormula::var(props[r]);
    if (coin(rng, 0.2)) return r == props.size() ? PropFormula::truth() : PropFormula::falsity();
    return PropFormula::var(props[pick(rng, 0, props.size() - 1)]);
  }
  switch (pick(rng, 0, 2)) {
    case 0: return PropFormula::negation(random_prop(rng, props, depth - 1));
    case 1: return PropFormula::conj(random_prop(rng, props, depth - 1), random_prop(rng, props, depth - 1));
    default: return PropFormula::disj(random_prop(rng, props, depth - 1), random_prop(rng, props, depth - 1));
  }
}

inline uplogic::Term random_term(Rng& rng, const std::vector<std::string>& props, std::size_t max_len, int depth) {
  std::vector<uplogic::Addend> addends;
  const std::size_t len = pick(rng, 1, max_len);
  for (std::size_t i = 0; i < len; ++i) {
    Rational c = coin(rng, 0.4) ? Rational(coin(rng) ? 1 : -1) : small_rational(rng, 4, 3);
    if (c == 0) c = 1;
    addends.push_back({c, random_prop(rng, props, depth)});
  }
  return uplogic::Term(std::move(addends));
}

inline uplogic::Relation random_relation(Rng& rng) {
  return static_cast<uplogic::Relation>(pick(rng, 0, 4));
}

/// Random boolean combination of `basics` random basic formulas.
inline uplogic::LikelihoodFormula random_formula(Rng& rng, const std::vector<std::string>& props, std::size_t basics,
                                                 int prop_depth = 2) {
  using uplogic::LikelihoodFormula;
  if (basics <= 1) {
    auto b = LikelihoodFormula::basic(random_term(rng, props, 3, prop_depth), random_relation(rng),
                                      small_rational(rng, 4, 4));
    return coin(rng, 0.2) ? LikelihoodFormula::negation(b) : b;
  }
  const std::size_t left = pick(rng, 1, basics - 1);
  auto l = random_formula(rng, props, left, prop_depth);
  auto r = random_formula(rng, props, basics - left, prop_depth);
  LikelihoodFormula f = coin(rng) ? LikelihoodFormula::conj(l, r) : LikelihoodFormula::disj(l, r);
  return coin(rng, 0.15) ? LikelihoodFormula::negation(f) : f;
}

/// Random structure: worlds carry random assignments over `props`, measures
/// have random small integer weights normalized to 1.
inline uplogic::UpperProbStructure random_structure(Rng& rng, const std::vector<std::string>& props,
                                                    std::size_t max_worlds, std::size_t max_measures) {
  const std::size_t nw = pick(rng, 1, max_worlds);
  const std::size_t nm = pick(rng, 1, max_measures);
  std::vector<uplogic::World> worlds;
  for (std::size_t w = 0; w < nw; ++w) {
    uplogic::World world{"w" + std::to_string(w), {}};
    for (const auto& p : props) world.assignment[p] = coin(rng);
    worlds.push_back(std::move(world));
  }
  std::vector<uplogic::Measure> measures;
  for (std::size_t m = 0; m < nm; ++m) {
    std::vector<int> raw(nw);
    int total = 0;
    while (total == 0) {
      total = 0;
      for (auto& r : raw) {
        r = coin(rng, 0.25) ? 0 : static_cast<int>(pick(rng, 0, 9));
        total += r;
      }
    }
    uplogic::Measure mu{"m" + std::to_string(m), {}};
    for (int r : raw) mu.weights.emplace_back(r, total);
    measures.push_back(std::move(mu));
  }
  return uplogic::UpperProbStructure(props, std::move(worlds), std::move(measures));
}

/// Upper probability of a world set computed directly from the weights.
inline Rational upper_direct(const uplogic::UpperProbStructure& m, const std::vector<bool>& in) {
  std::optional<Rational> best;
  for (const auto& mu : m.measures()) {
    Rational s = 0;
    for (std::size_t w = 0; w < in.size(); ++w)
      if (in[w]) s += mu.weights[w];
    if (!best || s > *best) best = s;
  }
  return *best;
}

/// Solves a square system exactly; nothing if it is singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

inline Rational inner(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Row-by-row check written out independently of the library.
inline bool meets(const uplogic::lp::LinearSystem& sys, const std::vector<Rational>& x) {
  using uplogic::lp::Sense;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (sys.is_nonnegative(j) && x[j] < 0) return false;
  for (const auto& c : sys.constraints) {
    const Rational lhs = inner(c.coefficients, x);
    if (c.sense == Sense::AtLeast && lhs < c.bound) return false;
    if (c.sense == Sense::Above && lhs <= c.bound) return false;
    if (c.sense == Sense::Exactly && lhs != c.bound) return false;
  }
  return true;
}

struct VertexOracle {
  bool feasible = false;
  Rational best;  // max of the objective over all feasible vertices
};

/// Brute force over every choice of n tight rows among the weak rows and
/// the sign rows of nonnegative variables. Meaningful for pointed
/// polyhedra, where a feasible region has a vertex and a bounded optimum is
/// attained at one.
inline VertexOracle vertex_oracle(const uplogic::lp::LinearSystem& sys, const std::vector<Rational>& objective) {
  const std::size_t n = sys.size();
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& c : sys.constraints) {
    rows.push_back(c.coefficients);
    rhs.push_back(c.bound);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (sys.is_nonnegative(j)) {
      std::vector<Rational> unit(n);
      unit[j] = 1;
      rows.push_back(unit);
      rhs.push_back(0);
    }
  VertexOracle out;
  const std::size_t total = rows.size();
  std::vector<std::size_t> choice(n);
  // Enumerate n-subsets of the rows in lexicographic order.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (auto i : choice) {
        a.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
      auto x = solve_square(a, b);
      if (!x || !meets(sys, *x)) return;
      const Rational v = inner(objective, *x);
      if (!out.feasible || v > out.best) out.best = v;
      out.feasible = true;
      return;
    }
    for (std::size_t i = start; i < total; ++i) {
      choice[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace testing_support

#endif
