#include "uplogic/lp.hpp"

#include "uplogic/errors.hpp"

#include <algorithm>
#include <limits>

namespace uplogic::lp {

std::size_t LinearSystem::add_variable(std::string name, bool is_nonnegative) {
  if (nonnegative.size() < variables.size()) nonnegative.resize(variables.size(), false);
  variables.push_back(std::move(name));
  nonnegative.push_back(is_nonnegative);
  for (auto& c : constraints) c.coefficients.resize(variables.size());
  if (objective) objective->coefficients.resize(variables.size());
  return variables.size() - 1;
}

void LinearSystem::add(std::vector<Rational> coefficients, Sense sense, Rational bound) {
  constraints.push_back({std::move(coefficients), sense, std::move(bound)});
}

bool LinearSystem::has_strict() const {
  return std::any_of(constraints.begin(), constraints.end(), [](const Constraint& c) { return c.sense == Sense::Above; });
}

void LinearSystem::validate() const {
  if (variables.empty()) throw InputError("a linear system needs at least one variable");
  if (!nonnegative.empty() && nonnegative.size() != variables.size())
    throw InputError("sign flags do not match the variable count");
  for (std::size_t i = 0; i < constraints.size(); ++i)
    if (constraints[i].coefficients.size() != variables.size())
      throw InputError("constraint " + std::to_string(i) + " has " +
                       std::to_string(constraints[i].coefficients.size()) + " coefficients for " +
                       std::to_string(variables.size()) + " variables");
  if (objective && objective->coefficients.size() != variables.size())
    throw InputError("objective does not match the variable count");
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational total(0);
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) total += a[i] * b[i];
  return total;
}

bool satisfies(const LinearSystem& sys, const std::vector<Rational>& point) {
  if (point.size() != sys.size()) return false;
  for (std::size_t j = 0; j < point.size(); ++j)
    if (sys.is_nonnegative(j) && sign(point[j]) < 0) return false;
  for (const auto& c : sys.constraints) {
    const Rational lhs = dot(c.coefficients, point);
    switch (c.sense) {
      case Sense::AtLeast:
        if (lhs < c.bound) return false;
        break;
      case Sense::Above:
        if (lhs <= c.bound) return false;
        break;
      case Sense::Exactly:
        if (lhs != c.bound) return false;
        break;
    }
  }
  return true;
}

namespace {

// After this many consecutive degenerate pivots the entering rule switches
// from Dantzig's largest coefficient to Bland's smallest index for good,
// which rules out cycling.
constexpr std::size_t kDegenerateLimit = 50;

enum class Status { Optimal, Infeasible, Unbounded };

struct SimplexResult {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational value;  // minimized cost
  std::vector<Rational> direction;
};

/// Two-phase tableau for  min c.z  s.t.  A z = b, z >= 0, b >= 0.
///
/// Every row is an equation, so it may be scaled by any positive factor.
/// Rows are therefore kept as integer vectors and pivoting is fraction-free,
/// row_i <- p row_i - a row_r, after which the row is divided by the gcd of
/// its entries. This avoids the gcd that every rational operation would pay.
/// The basic variable of row i has value rhs_i / entry_i.
class Tableau {
public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, std::vector<Rational> cost,
          std::vector<std::ptrdiff_t> slack_basis)
      : structural_(cost.size()) {
    const std::size_t m = rows.size();
    const auto artificials = static_cast<std::size_t>(
        std::count_if(slack_basis.begin(), slack_basis.end(), [](std::ptrdiff_t b) { return b < 0; }));
    width_ = structural_ + artificials + 1;
    rhs_col_ = width_ - 1;
    table_.resize(m);
    basis_.resize(m);
    std::size_t next_art = structural_;
    for (std::size_t i = 0; i < m; ++i) {
      rows[i].resize(width_);
      rows[i][rhs_col_] = std::move(rhs[i]);
      table_[i] = integral(rows[i], nullptr);
      if (slack_basis[i] >= 0) {
        basis_[i] = static_cast<std::size_t>(slack_basis[i]);
      } else {
        table_[i][next_art] = 1;
        basis_[i] = next_art++;
      }
    }
    cost.resize(width_);
    cost_row_ = integral(cost, &cost_scale_);
    // Reduced costs of the artificial objective; artificial entries are 1.
    phase1_row_.assign(width_, Integer(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis_[i] < structural_) continue;
      const auto& row = table_[i];
      for (std::size_t k = 0; k < width_; ++k)
        if ((k < structural_ || k == rhs_col_) && !row[k].is_zero()) phase1_row_[k] -= row[k];
    }
  }

  std::size_t pivots() const { return pivots_; }
  std::size_t rows() const { return table_.size(); }
  std::size_t columns() const { return width_ - 1; }

  /// Phase 1. Returns false when A z = b, z >= 0 is infeasible.
  bool find_feasible_basis() {
    in_phase1_ = true;
    std::size_t unbounded_col;
    run(phase1_row_, unbounded_col);
    in_phase1_ = false;
    // The right-hand side entry is a positive multiple of minus the sum of
    // the artificials.
    if (!phase1_row_[rhs_col_].is_zero()) return false;
    drive_out_artificials();
    return true;
  }

  /// Phase 2 on the stored cost row; requires a feasible basis.
  SimplexResult minimize() {
    SimplexResult res;
    std::size_t unbounded_col = 0;
    if (!run(cost_row_, unbounded_col)) {
      res.status = Status::Unbounded;
      res.direction.assign(structural_, Rational(0));
      res.direction[unbounded_col] = 1;
      for (std::size_t i = 0; i < table_.size(); ++i)
        if (basis_[i] < structural_)
          res.direction[basis_[i]] = -Rational(table_[i][unbounded_col], table_[i][basis_[i]]);
      return res;
    }
    res.status = Status::Optimal;
    res.x = solution();
    res.value = -Rational(cost_row_[rhs_col_], cost_scale_);
    return res;
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> z(structural_, Rational(0));
    for (std::size_t i = 0; i < table_.size(); ++i)
      if (basis_[i] < structural_) z[basis_[i]] = Rational(table_[i][rhs_col_], table_[i][basis_[i]]);
    return z;
  }

private:
  /// Scales a rational row to coprime integers; `scale` receives the
  /// positive factor applied.
  static std::vector<Integer> integral(const std::vector<Rational>& row, Integer* scale) {
    Integer lcm = 1;
    for (const auto& q : row)
      if (!q.is_zero()) mpz_lcm(lcm.backend().data(), lcm.backend().data(), mpq_denref(q.backend().data()));
    std::vector<Integer> out(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k].is_zero()) continue;
      out[k] = lcm / denominator(row[k]) * numerator(row[k]);
    }
    Integer s = lcm;
    reduce(out, &s);
    if (scale) *scale = std::move(s);
    return out;
  }

  /// Divides a row (and its scale) by the gcd of their entries.
  static void reduce(std::vector<Integer>& row, Integer* scale) {
    Integer g = scale ? *scale : Integer(0);
    for (const auto& a : row) {
      if (a.is_zero()) continue;
      mpz_gcd(g.backend().data(), g.backend().data(), a.backend().data());
      if (g == 1) return;
    }
    if (g <= 1) return;
    for (auto& a : row)
      if (!a.is_zero()) mpz_divexact(a.backend().data(), a.backend().data(), g.backend().data());
    if (scale) mpz_divexact(scale->backend().data(), scale->backend().data(), g.backend().data());
  }

  // Returns false if the objective is unbounded below; the offending column
  // is reported through `unbounded_col`.
  bool run(std::vector<Integer>& obj, std::size_t& unbounded_col) {
    std::size_t degenerate_run = 0;
    for (;;) {
      // Entering column; artificial columns never re-enter. Entries of one
      // row share a positive scale, so they compare directly.
      std::size_t enter = std::numeric_limits<std::size_t>::max();
      for (std::size_t j = 0; j < structural_; ++j) {
        if (obj[j].sign() >= 0) continue;
        if (bland_) {
          enter = j;
          break;
        }
        if (enter == std::numeric_limits<std::size_t>::max() || obj[j] < obj[enter]) enter = j;
      }
      if (enter == std::numeric_limits<std::size_t>::max()) return true;

      // Ratio test on rhs_i / a_i, ties broken by the smallest basic index.
      std::size_t leave = std::numeric_limits<std::size_t>::max();
      for (std::size_t i = 0; i < table_.size(); ++i) {
        const auto& a = table_[i][enter];
        if (a.sign() <= 0) continue;
        if (leave == std::numeric_limits<std::size_t>::max()) {
          leave = i;
          continue;
        }
        const auto& best = table_[leave];
        const Integer lhs = table_[i][rhs_col_] * best[enter];
        const int cmp = lhs.compare(Integer(best[rhs_col_] * a));
        if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave == std::numeric_limits<std::size_t>::max()) {
        unbounded_col = enter;
        return false;
      }
      if (table_[leave][rhs_col_].is_zero()) {
        if (++degenerate_run >= kDegenerateLimit) bland_ = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    auto& prow = table_[r];
    if (prow[c].sign() < 0)
      for (auto& a : prow)
        if (!a.is_zero()) a = -a;
    const Integer p = prow[c];
    const bool unit = p == 1;
    nonzero_.clear();
    for (std::size_t k = 0; k < width_; ++k)
      if (!prow[k].is_zero()) nonzero_.push_back(k);
    auto eliminate = [&](std::vector<Integer>& row, Integer* scale) {
      if (row[c].is_zero()) return;
      const Integer a = row[c];
      if (!unit) {
        for (auto& e : row)
          if (!e.is_zero()) mpz_mul(e.backend().data(), e.backend().data(), p.backend().data());
        if (scale) *scale *= p;
      }
      for (std::size_t k : nonzero_)
        mpz_submul(row[k].backend().data(), a.backend().data(), prow[k].backend().data());
      reduce(row, scale);
    };
    for (std::size_t i = 0; i < table_.size(); ++i)
      if (i != r) eliminate(table_[i], nullptr);
    eliminate(cost_row_, &cost_scale_);
    if (in_phase1_) eliminate(phase1_row_, nullptr);
    basis_[r] = c;
  }

  void drive_out_artificials() {
    std::vector<std::size_t> redundant;
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (basis_[i] < structural_) continue;
      std::size_t col = structural_;
      for (std::size_t j = 0; j < structural_; ++j)
        if (!table_[i][j].is_zero()) {
          col = j;
          break;
        }
      if (col < structural_)
        pivot(i, col);
      else
        redundant.push_back(i);
    }
    for (auto it = redundant.rbegin(); it != redundant.rend(); ++it) {
      table_.erase(table_.begin() + static_cast<std::ptrdiff_t>(*it));
      basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(*it));
    }
  }

  std::size_t structural_;
  std::size_t width_ = 0;
  std::size_t rhs_col_ = 0;
  std::vector<std::vector<Integer>> table_;
  std::vector<std::size_t> basis_;
  std::vector<Integer> cost_row_;
  Integer cost_scale_ = 1;
  std::vector<Integer> phase1_row_;
  std::vector<std::size_t> nonzero_;
  bool in_phase1_ = false;
  bool bland_ = false;
  std::size_t pivots_ = 0;
};

/// Solves a system with only AtLeast/Exactly rows. `cost` (minimized) may be
/// null for a pure feasibility check, in which case the result is Optimal
/// with value 0 when feasible.
SimplexResult run_simplex(const LinearSystem& sys, const std::vector<Rational>* cost, Stats* stats) {
  const std::size_t n = sys.size();
  std::vector<std::ptrdiff_t> plus(n), minus(n, -1);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus[j] = static_cast<std::ptrdiff_t>(cols++);
    if (!sys.is_nonnegative(j)) minus[j] = static_cast<std::ptrdiff_t>(cols++);
  }
  const std::size_t structural_vars = cols;
  for (const auto& c : sys.constraints)
    if (c.sense == Sense::AtLeast) ++cols;

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<std::ptrdiff_t> slack_basis;
  rows.reserve(sys.constraints.size());
  std::size_t slack = structural_vars;
  for (const auto& c : sys.constraints) {
    if (c.sense == Sense::Above) throw InternalError("strict row reached the simplex core");
    std::vector<Rational> row(cols);
    for (std::size_t j = 0; j < n; ++j) {
      if (c.coefficients[j].is_zero()) continue;
      row[static_cast<std::size_t>(plus[j])] = c.coefficients[j];
      if (minus[j] >= 0) row[static_cast<std::size_t>(minus[j])] = -c.coefficients[j];
    }
    Rational b = c.bound;
    std::ptrdiff_t basic = -1;
    if (c.sense == Sense::AtLeast) {
      row[slack] = -1;
      if (sign(b) <= 0) basic = static_cast<std::ptrdiff_t>(slack);
      ++slack;
    }
    if (sign(b) < 0 || basic >= 0) {
      for (auto& a : row)
        if (!a.is_zero()) a = -a;
      b = -b;
    }
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
    slack_basis.push_back(basic);
  }

  std::vector<Rational> z_cost(cols);
  if (cost)
    for (std::size_t j = 0; j < n; ++j) {
      if ((*cost)[j].is_zero()) continue;
      z_cost[static_cast<std::size_t>(plus[j])] = (*cost)[j];
      if (minus[j] >= 0) z_cost[static_cast<std::size_t>(minus[j])] = -(*cost)[j];
    }

  Tableau tab(std::move(rows), std::move(rhs), std::move(z_cost), std::move(slack_basis));
  SimplexResult res;
  const bool ok = tab.find_feasible_basis();
  if (ok) res = cost ? tab.minimize() : SimplexResult{Status::Optimal, tab.solution(), Rational(0), {}};
  if (stats) {
    stats->pivots += tab.pivots();
    stats->rows = std::max(stats->rows, tab.rows());
    stats->columns = std::max(stats->columns, tab.columns());
  }
  if (!ok) return SimplexResult{};

  auto to_x = [&](const std::vector<Rational>& z) {
    std::vector<Rational> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = z[static_cast<std::size_t>(plus[j])];
      if (minus[j] >= 0) x[j] -= z[static_cast<std::size_t>(minus[j])];
    }
    return x;
  };
  if (res.status == Status::Unbounded)
    res.direction = to_x(res.direction);
  else
    res.x = to_x(res.x);
  return res;
}

LinearSystem closure_of(const LinearSystem& sys) {
  LinearSystem out = sys;
  out.objective.reset();
  for (auto& c : out.constraints)
    if (c.sense == Sense::Above) c.sense = Sense::AtLeast;
  return out;
}

void check_point(const LinearSystem& sys, const std::vector<Rational>& point) {
  if (!satisfies(sys, point)) throw InternalError("simplex returned a point that violates the system");
}

}  // namespace

Outcome feasible(const LinearSystem& sys, Stats* stats) {
  sys.validate();
  Outcome out;
  if (!sys.has_strict()) {
    auto res = run_simplex(sys, nullptr, stats);
    if (res.status == Status::Infeasible) return out;
    out.verdict = Verdict::Feasible;
    out.point = std::move(res.x);
    check_point(sys, out.point);
    return out;
  }

  LinearSystem aug = sys;
  aug.objective.reset();
  const std::size_t slack = aug.add_variable("__strict_slack", true);
  for (auto& c : aug.constraints)
    if (c.sense == Sense::Above) {
      c.coefficients[slack] = -1;
      c.sense = Sense::AtLeast;
    }
  std::vector<Rational> cap(aug.size());
  cap[slack] = -1;
  aug.add(std::move(cap), Sense::AtLeast, Rational(-1));
  std::vector<Rational> cost(aug.size());
  cost[slack] = -1;

  auto res = run_simplex(aug, &cost, stats);
  if (res.status != Status::Optimal) {
    if (res.status == Status::Unbounded) throw InternalError("bounded slack problem reported unbounded");
    return out;
  }
  if (sign(res.x[slack]) <= 0) return out;
  res.x.pop_back();
  out.verdict = Verdict::Feasible;
  out.point = std::move(res.x);
  check_point(sys, out.point);
  return out;
}

Outcome optimize(const LinearSystem& sys, Stats* stats) {
  sys.validate();
  if (!sys.objective) throw InputError("optimize needs an objective");
  const auto& obj = *sys.objective;

  LinearSystem plain = sys;
  plain.objective.reset();
  auto feas = feasible(plain, stats);
  if (feas.verdict == Verdict::Infeasible) return feas;

  std::vector<Rational> cost = obj.coefficients;
  if (obj.direction == Direction::Maximize)
    for (auto& c : cost) c = -c;
  auto res = run_simplex(closure_of(sys), &cost, stats);
  Outcome out;
  if (res.status == Status::Infeasible) throw InternalError("closure infeasible although the system is feasible");
  if (res.status == Status::Unbounded) {
    out.verdict = Verdict::Unbounded;
    out.direction = std::move(res.direction);
    return out;
  }
  out.verdict = Verdict::Optimal;
  out.value = obj.direction == Direction::Maximize ? Rational(-res.value) : res.value;
  if (!sys.has_strict()) {
    out.attained = true;
    out.point = std::move(res.x);
    check_point(plain, out.point);
    if (dot(obj.coefficients, out.point) != out.value) throw InternalError("optimal point misses the optimum");
    return out;
  }
  LinearSystem at_optimum = plain;
  at_optimum.add(obj.coefficients, Sense::Exactly, out.value);
  auto reach = feasible(at_optimum, stats);
  out.attained = reach.verdict == Verdict::Feasible;
  out.point = out.attained ? std::move(reach.point) : std::move(feas.point);
  check_point(plain, out.point);
  return out;
}

}  // namespace uplogic::lp
