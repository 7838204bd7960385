#include "cvn/lp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cvn::lp {

bool Problem::satisfied_by(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != variables) return false;
  for (const Rational& v : x) {
    if (v < 0) return false;
  }
  for (const Constraint& c : constraints) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < c.coef.size(); ++j) lhs += c.coef[j] * x[j];
    if ((c.sense == Sense::le && lhs > c.rhs) || (c.sense == Sense::ge && lhs < c.rhs) ||
        (c.sense == Sense::eq && lhs != c.rhs)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

class Tableau {
 public:
  Tableau(const Problem& p) : n_(p.variables) {
    // Normalize to nonnegative right-hand sides.
    std::vector<Constraint> rows = p.constraints;
    for (Constraint& c : rows) {
      c.coef.resize(static_cast<std::size_t>(n_));
      if (c.rhs < 0) {
        for (Rational& a : c.coef) a = -a;
        c.rhs = -c.rhs;
        if (c.sense == Sense::le) {
          c.sense = Sense::ge;
        } else if (c.sense == Sense::ge) {
          c.sense = Sense::le;
        }
      }
    }
    m_ = static_cast<int>(rows.size());
    int slack = 0, artificial = 0;
    for (const Constraint& c : rows) {
      if (c.sense != Sense::eq) ++slack;
      if (c.sense != Sense::le) ++artificial;
    }
    first_artificial_ = n_ + slack;
    cols_ = first_artificial_ + artificial;
    t_.assign(static_cast<std::size_t>(m_), std::vector<Rational>(static_cast<std::size_t>(cols_ + 1)));
    basis_.assign(static_cast<std::size_t>(m_), -1);
    int s = n_, a = first_artificial_;
    for (int i = 0; i < m_; ++i) {
      auto& row = t_[static_cast<std::size_t>(i)];
      const Constraint& c = rows[static_cast<std::size_t>(i)];
      for (int j = 0; j < n_; ++j) row[static_cast<std::size_t>(j)] = c.coef[static_cast<std::size_t>(j)];
      row[static_cast<std::size_t>(cols_)] = c.rhs;
      if (c.sense == Sense::le) {
        row[static_cast<std::size_t>(s)] = 1;
        basis_[static_cast<std::size_t>(i)] = s++;
      } else {
        if (c.sense == Sense::ge) row[static_cast<std::size_t>(s++)] = -1;
        row[static_cast<std::size_t>(a)] = 1;
        basis_[static_cast<std::size_t>(i)] = a++;
      }
    }
  }

  // Phase one. Returns false when infeasible.
  bool find_feasible_basis() {
    std::vector<Rational> cost(static_cast<std::size_t>(cols_), 0);
    for (int j = first_artificial_; j < cols_; ++j) cost[static_cast<std::size_t>(j)] = -1;
    if (first_artificial_ < cols_) {
      if (run(cost, cols_) != Status::optimal) throw std::logic_error("phase one unbounded");
      Rational infeasibility = 0;
      for (int i = 0; i < m_; ++i) {
        if (basis_[static_cast<std::size_t>(i)] >= first_artificial_) {
          infeasibility += t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols_)];
        }
      }
      if (infeasibility != 0) return false;
      drive_out_artificials();
    }
    return true;
  }

  Status optimize(std::span<const Rational> objective) {
    std::vector<Rational> cost(static_cast<std::size_t>(cols_), 0);
    for (int j = 0; j < n_; ++j) cost[static_cast<std::size_t>(j)] = objective[static_cast<std::size_t>(j)];
    return run(cost, first_artificial_);
  }

  std::vector<Rational> point() const {
    std::vector<Rational> x(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[static_cast<std::size_t>(i)];
      if (b < n_) x[static_cast<std::size_t>(b)] = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols_)];
    }
    return x;
  }

 private:
  void pivot(int r, int c) {
    auto& prow = t_[static_cast<std::size_t>(r)];
    const Rational inv = 1 / prow[static_cast<std::size_t>(c)];
    for (Rational& v : prow) v *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      auto& row = t_[static_cast<std::size_t>(i)];
      const Rational f = row[static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = 0; j <= cols_; ++j) {
        if (prow[static_cast<std::size_t>(j)] != 0) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
      }
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Maximizes cost over columns [0, limit) with Bland's rule.
  Status run(const std::vector<Rational>& cost, int limit) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < limit && enter < 0; ++j) {
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        Rational reduced = cost[static_cast<std::size_t>(j)];
        for (int i = 0; i < m_; ++i) {
          const Rational& a = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          if (a != 0) reduced -= cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] * a;
        }
        if (reduced > 0) enter = j;
      }
      if (enter < 0) return Status::optimal;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        const Rational& a = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
        if (a <= 0) continue;
        const Rational ratio = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols_)] / a;
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return Status::unbounded;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < first_artificial_) continue;
      int c = -1;
      for (int j = 0; j < first_artificial_ && c < 0; ++j) {
        if (t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) c = j;
      }
      if (c >= 0) {
        pivot(i, c);
      } else {
        // Redundant row.
        t_.erase(t_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --m_;
        --i;
      }
    }
  }

  int n_ = 0, m_ = 0, cols_ = 0, first_artificial_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<int> basis_;
};

}  // namespace

Solution maximize(const Problem& p, std::span<const Rational> objective) {
  Tableau t(p);
  Solution s;
  if (!t.find_feasible_basis()) {
    s.status = Status::infeasible;
    return s;
  }
  s.status = t.optimize(objective);
  if (s.status == Status::optimal) {
    s.x = t.point();
    s.value = 0;
    for (std::size_t j = 0; j < s.x.size(); ++j) s.value += objective[j] * s.x[j];
  }
  return s;
}

Solution minimize(const Problem& p, std::span<const Rational> objective) {
  std::vector<Rational> neg(objective.begin(), objective.end());
  for (Rational& v : neg) v = -v;
  Solution s = maximize(p, neg);
  if (s.status == Status::optimal) s.value = -s.value;
  return s;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

namespace {

struct Row {
  std::vector<Rational> a;  // a . x <= b
  Rational b;
};

// x_var = (rhs - sum_{j != var} coef_j x_j) / coef_var
struct Substitution {
  int var;
  std::vector<Rational> coef;
  Rational rhs;
};

// Scales so the first nonzero coefficient has absolute value one.
bool normalize(Row& r) {
  for (const Rational& v : r.a) {
    if (v != 0) {
      const Rational s = abs(v);
      for (Rational& w : r.a) w /= s;
      r.b /= s;
      return true;
    }
  }
  return false;
}

class RowSet {
 public:
  // Returns false on a contradiction 0 <= b < 0.
  bool insert(Row r) {
    if (!normalize(r)) return r.b >= 0;
    auto [it, fresh] = rows_.emplace(std::move(r.a), r.b);
    if (!fresh && r.b < it->second) it->second = r.b;
    return true;
  }
  std::vector<Row> rows() const {
    std::vector<Row> out;
    for (const auto& [a, b] : rows_) out.push_back({a, b});
    return out;
  }
  std::size_t size() const { return rows_.size(); }

 private:
  std::map<std::vector<Rational>, Rational> rows_;
};

}  // namespace

Elimination fourier_motzkin(const Problem& p, std::size_t max_rows) {
  const int n = p.variables;
  Elimination result;
  std::vector<Row> ineq;
  std::vector<Constraint> eqs;
  for (const Constraint& c : p.constraints) {
    std::vector<Rational> a = c.coef;
    a.resize(static_cast<std::size_t>(n));
    switch (c.sense) {
      case Sense::le:
        ineq.push_back({a, c.rhs});
        break;
      case Sense::ge:
        for (Rational& v : a) v = -v;
        ineq.push_back({a, -c.rhs});
        break;
      case Sense::eq:
        eqs.push_back({a, Sense::eq, c.rhs});
        break;
    }
  }
  for (int j = 0; j < n; ++j) {
    Row r{std::vector<Rational>(static_cast<std::size_t>(n), 0), 0};
    r.a[static_cast<std::size_t>(j)] = -1;
    ineq.push_back(std::move(r));
  }

  // Equalities by substitution.
  std::vector<Substitution> subs;
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    const Constraint& e = eqs[k];
    int var = -1;
    for (int j = 0; j < n && var < 0; ++j) {
      if (e.coef[static_cast<std::size_t>(j)] != 0) var = j;
    }
    if (var < 0) {
      if (e.rhs != 0) {
        result.outcome = Elimination::Outcome::infeasible;
        return result;
      }
      continue;
    }
    const Rational pivot = e.coef[static_cast<std::size_t>(var)];
    Substitution s{var, e.coef, e.rhs};
    for (Rational& v : s.coef) v /= pivot;
    s.rhs /= pivot;
    auto eliminate = [&](std::vector<Rational>& a, Rational& b) {
      const Rational f = a[static_cast<std::size_t>(var)];
      if (f == 0) return;
      for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] -= f * s.coef[static_cast<std::size_t>(j)];
      b -= f * s.rhs;
    };
    for (Row& r : ineq) eliminate(r.a, r.b);
    for (std::size_t l = k + 1; l < eqs.size(); ++l) eliminate(eqs[l].coef, eqs[l].rhs);
    subs.push_back(std::move(s));
  }

  std::vector<char> free_var(static_cast<std::size_t>(n), 1);
  for (const Substitution& s : subs) free_var[static_cast<std::size_t>(s.var)] = 0;

  RowSet current;
  for (Row& r : ineq) {
    if (!current.insert(std::move(r))) {
      result.outcome = Elimination::Outcome::infeasible;
      return result;
    }
  }

  struct Stage {
    int var;
    std::vector<Row> rows;  // rows involving var before its elimination
  };
  std::vector<Stage> stages;
  std::vector<Row> rows = current.rows();
  result.peak_rows = rows.size();
  while (true) {
    // Cheapest variable to eliminate next.
    int var = -1;
    long best_cost = 0;
    for (int j = 0; j < n; ++j) {
      if (!free_var[static_cast<std::size_t>(j)]) continue;
      long pos = 0, neg = 0;
      for (const Row& r : rows) {
        const int s = sgn(r.a[static_cast<std::size_t>(j)]);
        pos += s > 0;
        neg += s < 0;
      }
      const long cost = pos * neg - pos - neg;
      if (var < 0 || cost < best_cost) {
        var = j;
        best_cost = cost;
      }
    }
    if (var < 0) break;
    free_var[static_cast<std::size_t>(var)] = 0;
    Stage stage{var, {}};
    std::vector<const Row*> pos, neg;
    RowSet next;
    for (const Row& r : rows) {
      const int s = sgn(r.a[static_cast<std::size_t>(var)]);
      if (s == 0) {
        next.insert(r);
      } else {
        stage.rows.push_back(r);
        (s > 0 ? pos : neg).push_back(&r);
      }
    }
    for (const Row* u : pos) {
      for (const Row* l : neg) {
        const Rational cu = u->a[static_cast<std::size_t>(var)];
        const Rational cl = -l->a[static_cast<std::size_t>(var)];
        Row r{std::vector<Rational>(static_cast<std::size_t>(n)), cl * u->b + cu * l->b};
        for (int j = 0; j < n; ++j) {
          r.a[static_cast<std::size_t>(j)] =
              cl * u->a[static_cast<std::size_t>(j)] + cu * l->a[static_cast<std::size_t>(j)];
        }
        r.a[static_cast<std::size_t>(var)] = 0;
        if (!next.insert(std::move(r))) {
          result.outcome = Elimination::Outcome::infeasible;
          return result;
        }
      }
      if (next.size() > max_rows) {
        result.outcome = Elimination::Outcome::gave_up;
        return result;
      }
    }
    stages.push_back(std::move(stage));
    rows = next.rows();
    result.peak_rows = std::max(result.peak_rows, rows.size());
  }

  // Back-substitution, last eliminated first.
  std::vector<Rational> x(static_cast<std::size_t>(n), 0);
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    const int var = it->var;
    std::optional<Rational> lo, hi;
    for (const Row& r : it->rows) {
      Rational rest = r.b;
      for (int j = 0; j < n; ++j) {
        if (j != var) rest -= r.a[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      }
      const Rational bound = rest / r.a[static_cast<std::size_t>(var)];
      if (r.a[static_cast<std::size_t>(var)] > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    Rational v = 0;
    if (lo && hi) {
      v = (*lo + *hi) / 2;
    } else if (lo) {
      v = *lo;
    } else if (hi) {
      v = *hi;
    }
    x[static_cast<std::size_t>(var)] = v;
  }
  for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
    Rational v = it->rhs;
    for (int j = 0; j < n; ++j) {
      if (j != it->var) v -= it->coef[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    }
    x[static_cast<std::size_t>(it->var)] = v;
  }
  if (!p.satisfied_by(x)) throw std::logic_error("fourier_motzkin: witness violates the system");
  result.outcome = Elimination::Outcome::feasible;
  result.point = std::move(x);
  return result;
}

std::optional<std::vector<Rational>> feasible_point(const Problem& p) {
  Elimination e = fourier_motzkin(p);
  if (e.outcome == Elimination::Outcome::feasible) return std::move(e.point);
  if (e.outcome == Elimination::Outcome::infeasible) return std::nullopt;
  const std::vector<Rational> zero(static_cast<std::size_t>(p.variables), 0);
  Solution s = maximize(p, zero);
  if (s.status != Status::optimal) return std::nullopt;
  return std::move(s.x);
}

}  // namespace cvn::lp
