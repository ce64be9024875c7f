#include "uplogic/envelope.hpp"

#include "uplogic/errors.hpp"
#include "uplogic/lp.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <set>

namespace uplogic {

namespace {

void check_cap(const SetFunction& v, std::size_t cap) {
  if (v.ground_size() > cap)
    throw ResourceError("ground set of " + std::to_string(v.ground_size()) + " elements exceeds the cap of " +
                        std::to_string(cap));
}

/// The dominated polytope with a growing pool of active set constraints.
class DominatedPolytope {
public:
  explicit DominatedPolytope(const SetFunction& v) : v_(v), n_(v.ground_size()) {
    for (std::size_t i = 0; i < n_; ++i) active_.insert(Subset{1} << i);
  }

  DominatedMax maximize(Subset a) {
    for (;;) {
      lp::LinearSystem sys;
      for (std::size_t i = 0; i < n_; ++i) sys.add_variable(v_.ground()[i], true);
      sys.add(std::vector<Rational>(n_, Rational(1)), lp::Sense::Exactly, Rational(1));
      for (Subset x : active_) sys.add(row_of(x, -1), lp::Sense::AtLeast, -v_(x));
      sys.objective = lp::Objective{row_of(a, 1), lp::Direction::Maximize};

      auto outcome = lp::optimize(sys);
      if (outcome.verdict == lp::Verdict::Infeasible) return {};
      if (outcome.verdict != lp::Verdict::Optimal) throw InternalError("dominated polytope is unbounded");

      const auto worst = most_violated(outcome.point);
      if (!worst) return {true, outcome.value, std::move(outcome.point)};
      active_.insert(*worst);
    }
  }

private:
  std::vector<Rational> row_of(Subset s, int sign) const {
    std::vector<Rational> row(n_);
    for (std::size_t i = 0; i < n_; ++i)
      if (s >> i & 1U) row[i] = sign;
    return row;
  }

  std::optional<Subset> most_violated(const std::vector<Rational>& mu) const {
    std::vector<Rational> mass(v_.subset_count());
    std::optional<Subset> worst;
    Rational excess = 0;
    for (Subset s = 1; s < mass.size(); ++s) {
      const Subset low = s & (~s + 1);
      mass[s] = mass[s ^ low] + mu[static_cast<std::size_t>(std::countr_zero(low))];
      const Rational over = mass[s] - v_(s);
      if (over > excess) {
        excess = over;
        worst = s;
      }
    }
    return worst;
  }

  const SetFunction& v_;
  std::size_t n_;
  std::set<Subset> active_;
};

}  // namespace

DominatedMax dominated_max(const SetFunction& v, Subset a, std::size_t cap) {
  check_cap(v, cap);
  if (a > v.full()) throw InputError("subset mask outside the ground set");
  if (v.ground_size() == 0) throw InputError("set function over an empty ground set");
  return DominatedPolytope(v).maximize(a);
}

EnvelopeResult is_upper_probability(const SetFunction& v, std::size_t cap) {
  check_cap(v, cap);
  if (v.ground_size() == 0) throw InputError("set function over an empty ground set");
  EnvelopeResult res;
  if (v(0) != 0) {
    res.failure = EnvelopeFailure::EmptySet;
    return res;
  }
  if (v(v.full()) != 1) {
    res.failure = EnvelopeFailure::WholeSet;
    res.failing_set = v.full();
    return res;
  }

  DominatedPolytope polytope(v);
  std::vector<std::vector<Rational>> witnesses;
  for (Subset a = 1; a <= v.full(); ++a) {
    auto best = polytope.maximize(a);
    if (!best.feasible) {
      res.failure = EnvelopeFailure::EmptyCore;
      res.failing_set = v.full();
      return res;
    }
    if (best.value < v(a)) {
      res.failure = EnvelopeFailure::Shortfall;
      res.failing_set = a;
      res.achieved = best.value;
      return res;
    }
    if (std::find(witnesses.begin(), witnesses.end(), best.measure) == witnesses.end())
      witnesses.push_back(std::move(best.measure));
  }

  std::vector<World> worlds;
  for (const auto& name : v.ground()) worlds.push_back(World{name, {}});
  std::vector<Measure> measures;
  for (std::size_t i = 0; i < witnesses.size(); ++i)
    measures.push_back(Measure{"m" + std::to_string(i + 1), std::move(witnesses[i])});
  UpperProbStructure witness({}, std::move(worlds), std::move(measures));
  if (!(set_function_of(witness, cap) == v)) throw InternalError("envelope witness does not reproduce v");
  res.upper = true;
  res.witness = std::move(witness);
  return res;
}

}  // namespace uplogic
