#include "uplogic/covers.hpp"

#include "uplogic/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>

namespace uplogic {

std::map<NamedSet, std::size_t> CoverInstance::multiplicities() const {
  std::map<NamedSet, std::size_t> out;
  for (const auto& s : sets) ++out[s];
  return out;
}

bool verify_cover(const CoverInstance& c, std::span<const std::string> ground) {
  if (c.sets.empty()) throw InputError("a cover needs at least one set");
  if (c.n + c.k == 0) throw InputError("a cover needs n + k >= 1");
  const NamedSet universe(ground.begin(), ground.end());
  auto inside = [&](const NamedSet& s, const char* what) {
    for (const auto& x : s)
      if (!universe.contains(x)) throw InputError(std::string(what) + " contains '" + x + "', outside the ground set");
  };
  for (const auto& s : c.sets) inside(s, "cover set");
  inside(c.target, "target");
  for (const auto& x : universe) {
    const auto count = static_cast<std::size_t>(
        std::count_if(c.sets.begin(), c.sets.end(), [&](const NamedSet& s) { return s.contains(x); }));
    if (count < c.k) return false;
    if (c.target.contains(x) && count < c.n + c.k) return false;
  }
  return true;
}

bool up3_check(const SetFunction& v, const CoverInstance& c) {
  if (!verify_cover(c, v.ground()))
    throw InputError("UP3 check needs a valid (" + std::to_string(c.n) + "," + std::to_string(c.k) + ")-cover");
  auto mask = [&](const NamedSet& s) {
    std::vector<std::string> names(s.begin(), s.end());
    return v.subset_of(names);
  };
  Rational rhs(0);
  for (const auto& s : c.sets) rhs += v(mask(s));
  return Rational(c.k) + Rational(c.n) * v(mask(c.target)) <= rhs;
}

namespace {

class ViolationSearch {
public:
  ViolationSearch(const SetFunction& v, const CoverSearchOptions& opts)
      : v_(v), opts_(opts), g_(v.ground_size()), count_(g_, 0), min_over_(v.subset_count()) {
    for (Subset s = 1; s < v.full(); ++s) candidates_.push_back(s);
  }

  std::optional<CoverInstance> run() {
    if (candidates_.empty()) return std::nullopt;
    for (std::size_t m = 1; m <= opts_.m_max; ++m) {
      chosen_.clear();
      sum_ = 0;
      if (extend(0, m)) return found_;
    }
    return std::nullopt;
  }

private:
  bool extend(std::size_t start, std::size_t remaining) {
    if (remaining == 0) return evaluate();
    for (std::size_t i = start; i < candidates_.size(); ++i) {
      const Subset s = candidates_[i];
      add(s, +1);
      sum_ += v_(s);
      chosen_.push_back(s);
      const bool hit = extend(i, remaining - 1);
      chosen_.pop_back();
      sum_ -= v_(s);
      add(s, -1);
      if (hit) return true;
    }
    return false;
  }

  void add(Subset s, int delta) {
    for (std::size_t x = 0; x < g_; ++x)
      if (s >> x & 1U) count_[x] = static_cast<std::size_t>(static_cast<long>(count_[x]) + delta);
  }

  bool evaluate() {
    if (++examined_ > opts_.budget)
      throw ResourceError("cover search budget of " + std::to_string(opts_.budget) + " multisets exhausted");
    // min_over_[A] = min membership count over the elements of A.
    min_over_[0] = std::numeric_limits<std::size_t>::max();
    for (Subset a = 1; a <= v_.full(); ++a) {
      const Subset low = a & (~a + 1);
      min_over_[a] = std::min(min_over_[a ^ low], count_[static_cast<std::size_t>(__builtin_ctz(low))]);
    }
    const std::size_t k = min_over_[v_.full()];
    // An (n,k)-cover is also an (n+1,k-1)-cover, which moves the left side
    // by v(A) - 1 <= 0 (set functions are valued in [0,1]), so k is maximal
    // and n = (coverage of A) - k.
    if (Rational(k) > sum_) return record(v_.full(), 0, k);
    for (Subset a = 1; a < v_.full(); ++a) {
      const std::size_t n = min_over_[a] - k;
      if (n == 0) continue;
      if (Rational(k) + Rational(n) * v_(a) > sum_) return record(a, n, k);
    }
    return false;
  }

  bool record(Subset target, std::size_t n, std::size_t k) {
    CoverInstance c;
    for (Subset s : chosen_) {
      auto names = v_.names_of(s);
      c.sets.emplace_back(names.begin(), names.end());
    }
    auto names = v_.names_of(target);
    c.target = NamedSet(names.begin(), names.end());
    c.n = n;
    c.k = k;
    found_ = std::move(c);
    return true;
  }

  const SetFunction& v_;
  CoverSearchOptions opts_;
  std::size_t g_;
  std::vector<Subset> candidates_;
  std::vector<std::size_t> count_;
  std::vector<std::size_t> min_over_;
  std::vector<Subset> chosen_;
  Rational sum_;
  std::size_t examined_ = 0;
  CoverInstance found_;
};

}  // namespace

std::optional<CoverInstance> search_violation(const SetFunction& v, const CoverSearchOptions& options) {
  if (options.m_max < 1) throw InputError("m_max must be at least 1");
  return ViolationSearch(v, options).run();
}

std::string save_certificate(const CoverInstance& c) {
  nlohmann::ordered_json doc;
  doc["sets"] = nlohmann::ordered_json::array();
  for (const auto& s : c.sets) doc["sets"].push_back(std::vector<std::string>(s.begin(), s.end()));
  doc["target"] = std::vector<std::string>(c.target.begin(), c.target.end());
  doc["n"] = c.n;
  doc["k"] = c.k;
  return doc.dump() + "\n";
}

CoverInstance load_certificate(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  auto named_set = [](const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array of names");
    NamedSet s;
    for (const auto& e : j) {
      if (!e.is_string()) throw ValidationError(std::string(what) + " must be an array of names");
      s.insert(e.get<std::string>());
    }
    return s;
  };
  auto count = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_unsigned())
      throw ValidationError(std::string("certificate needs a non-negative integer \"") + key + "\"");
    return doc[key].get<std::size_t>();
  };
  if (!doc.is_object() || !doc.contains("sets") || !doc["sets"].is_array() || !doc.contains("target"))
    throw ValidationError("certificate needs \"sets\" and \"target\"");
  CoverInstance c;
  for (const auto& s : doc["sets"]) c.sets.push_back(named_set(s, "cover set"));
  c.target = named_set(doc["target"], "target");
  c.n = count("n");
  c.k = count("k");
  return c;
}

// ---------------------------------------------------------------------------
// L4 instances

namespace {

// OR over all size-r index subsets J of AND_{j in J} members[j].
PropFormula covered_times(std::span<const PropFormula> members, std::size_t r) {
  const std::size_t m = members.size();
  if (r == 0) return PropFormula::truth();
  if (r > m) return PropFormula::falsity();
  std::optional<PropFormula> out;
  std::vector<std::size_t> pick(r);
  for (std::size_t i = 0; i < r; ++i) pick[i] = i;
  for (;;) {
    PropFormula clause = members[pick[0]];
    for (std::size_t i = 1; i < r; ++i) clause = PropFormula::conj(clause, members[pick[i]]);
    out = out ? PropFormula::disj(*out, clause) : clause;
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == m - r + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return *out;
}

LikelihoodFormula l4_formula(std::span<const PropFormula> members, const PropFormula* target, std::size_t n,
                             std::size_t k) {
  std::vector<Addend> addends;
  for (const auto& phi : members) addends.push_back({Rational(1), phi});
  if (n > 0) addends.push_back({Rational(-static_cast<long>(n)), *target});
  return LikelihoodFormula::basic(Term(std::move(addends)), Relation::GreaterEq, Rational(static_cast<long>(k)));
}

}  // namespace

std::pair<PropFormula, PropFormula> l4_side_conditions(std::span<const PropFormula> members,
                                                       const PropFormula& target, std::size_t n, std::size_t k) {
  return {PropFormula::implies(target, covered_times(members, n + k)), covered_times(members, k)};
}

void for_each_l4_instance(std::span<const PropFormula> pool, std::size_t m_max,
                          const std::function<bool(const L4Instance&)>& fn) {
  if (m_max < 1) throw InputError("m_max must be at least 1");
  if (pool.empty()) return;
  std::vector<std::size_t> idx;
  std::vector<PropFormula> members;

  // Returns false to stop.
  auto emit_for = [&]() -> bool {
    const std::size_t m = idx.size();
    for (std::size_t k = 0; k <= m; ++k) {
      // The k-cover condition does not depend on n or the target.
      const auto whole = covered_times(members, k);
      if (!is_tautology(whole)) continue;
      for (std::size_t n = 0; n + k <= m; ++n) {
        if (n + k == 0) continue;
        if (n == 0) {
          auto [cond_target, cond_whole] = l4_side_conditions(members, PropFormula::truth(), 0, k);
          if (!is_tautology(cond_target) || !is_tautology(cond_whole)) continue;
          if (!fn(L4Instance{idx, std::nullopt, 0, k, l4_formula(members, nullptr, 0, k)})) return false;
          continue;
        }
        for (std::size_t t = 0; t < pool.size(); ++t) {
          auto [cond_target, cond_whole] = l4_side_conditions(members, pool[t], n, k);
          if (!is_tautology(cond_target) || !is_tautology(cond_whole)) continue;
          if (!fn(L4Instance{idx, t, n, k, l4_formula(members, &pool[t], n, k)})) return false;
        }
      }
    }
    return true;
  };

  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t remaining) -> bool {
    if (remaining == 0) return emit_for();
    for (std::size_t i = start; i < pool.size(); ++i) {
      idx.push_back(i);
      members.push_back(pool[i]);
      const bool go_on = rec(i, remaining - 1);
      idx.pop_back();
      members.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  for (std::size_t m = 1; m <= m_max; ++m)
    if (!rec(0, m)) return;
}

std::vector<L4Instance> l4_instances(std::span<const PropFormula> pool, std::size_t m_max) {
  std::vector<L4Instance> out;
  for_each_l4_instance(pool, m_max, [&](const L4Instance& inst) {
    out.push_back(inst);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Properties (1)-(6)

namespace {

class PropertyChecker {
public:
  PropertyChecker(const SetFunction& upper, const SetFunction& lower) : up_(upper), lo_(lower) {}

  std::vector<PropertyResult> run(std::size_t max_sets) {
    std::vector<PropertyResult> out;
    out.push_back(inclusion_exclusion(1, max_sets));
    out.push_back(inclusion_exclusion(2, max_sets));
    out.push_back(pairwise(3));
    out.push_back(pairwise(4));
    out.push_back(pairwise(5));
    out.push_back(pairwise(6));
    return out;
  }

private:
  // (1)  P*(A_1 u .. u A_n) <= sum_I (-1)^{|I|+1} P^{(-1)^{|I|}}(n_I A_j)
  // (2)  P_*(A_1 u .. u A_n) >= sum_I (-1)^{|I|+1} P^{(-1)^{|I|+1}}(n_I A_j)
  // with P^{-1} = P* and P^{+1} = P_*.
  PropertyResult inclusion_exclusion(int which, std::size_t max_sets) {
    PropertyResult res{which, true, {}};
    std::vector<Subset> tuple;
    std::function<bool(Subset, std::size_t)> rec = [&](Subset start, std::size_t remaining) -> bool {
      if (remaining == 0) {
        if (holds_ie(which, tuple)) return false;
        res.pass = false;
        res.witness = tuple;
        return true;
      }
      for (Subset s = start; s <= up_.full(); ++s) {
        tuple.push_back(s);
        const bool stop = rec(s, remaining - 1);
        tuple.pop_back();
        if (stop) return true;
      }
      return false;
    };
    for (std::size_t n = 1; n <= max_sets; ++n)
      if (rec(0, n)) break;
    return res;
  }

  bool holds_ie(int which, const std::vector<Subset>& sets) const {
    const std::size_t n = sets.size();
    Subset uni = 0;
    for (Subset s : sets) uni |= s;
    Rational rhs(0);
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      Subset inter = up_.full();
      for (std::size_t j = 0; j < n; ++j)
        if (mask >> j & 1U) inter &= sets[j];
      const bool odd = __builtin_popcountll(mask) % 2 == 1;
      // (1): odd |I| uses P*, even uses P_*; (2) the other way round.
      const bool use_upper = which == 1 ? odd : !odd;
      const Rational& val = use_upper ? up_(inter) : lo_(inter);
      if (odd)
        rhs += val;
      else
        rhs -= val;
    }
    return which == 1 ? up_(uni) <= rhs : lo_(uni) >= rhs;
  }

  PropertyResult pairwise(int which) {
    PropertyResult res{which, true, {}};
    for (Subset a = 0; a <= up_.full(); ++a)
      for (Subset b = 0; b <= up_.full(); ++b)
        if (!holds_pair(which, a, b)) {
          res.pass = false;
          res.witness = {a, b};
          return res;
        }
    return res;
  }

  bool holds_pair(int which, Subset a, Subset b) const {
    const Subset u = a | b;
    const Subset i = a & b;
    switch (which) {
      case 3:
        return lo_(u) + lo_(i) <= lo_(a) + up_(b) && lo_(a) + up_(b) <= up_(u) + up_(i);
      case 4:
        return lo_(a) + lo_(b) <= lo_(u) + up_(i) && lo_(u) + up_(i) <= up_(a) + up_(b);
      case 5:
        return lo_(a) + lo_(b) <= lo_(i) + up_(u) && lo_(i) + up_(u) <= up_(a) + up_(b);
      case 6:
        if (i != 0) return true;
        return up_(a) + lo_(b) <= up_(u) && up_(u) <= up_(a) + up_(b);
    }
    return true;
  }

  const SetFunction& up_;
  const SetFunction& lo_;
};

}  // namespace

std::vector<PropertyResult> check_properties(const SetFunction& upper, const SetFunction& lower,
                                             std::size_t max_sets) {
  if (max_sets < 2) throw InputError("max_sets must be at least 2");
  if (upper.ground() != lower.ground()) throw InputError("upper and lower functions have different ground sets");
  return PropertyChecker(upper, lower).run(max_sets);
}

std::vector<PropertyResult> check_properties(const SetFunction& v, std::size_t max_sets) {
  return check_properties(v, v.dual(), max_sets);
}

std::vector<PropertyResult> check_properties(const UpperProbStructure& m, std::size_t max_sets) {
  return check_properties(set_function_of(m), lower_function_of(m), max_sets);
}

}  // namespace uplogic
