#pragma once

// Dense-basis bounded revised simplex (primal + dual) with a depth-first
// branch-and-bound for 0/1 variables. Sized for restricted master problems:
// a few hundred rows, thousands of sparse columns.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcg::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct Entry {
  int index = 0;
  double value = 0.0;
};

/// min c'x  s.t.  rows[i]·x (sense) rhs[i],  lower <= x <= upper.
struct LpProblem {
  std::vector<double> objective;
  std::vector<std::vector<Entry>> rows;
  std::vector<Sense> senses;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_var(double cost, double lo = 0.0, double hi = kInf) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    return num_vars() - 1;
  }
  int add_row(std::vector<Entry> entries, Sense sense, double b) {
    rows.push_back(std::move(entries));
    senses.push_back(sense);
    rhs.push_back(b);
    return num_rows() - 1;
  }

  void check() const;
};

/// kObjectiveLimit: the dual simplex proved the optimum exceeds the limit
/// set with SimplexSolver::set_objective_limit.
enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kObjectiveLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
    case LpStatus::kObjectiveLimit: return "objective_limit";
  }
  return "?";
}

/// Duals follow the minimisation convention: a binding <= row has dual <= 0,
/// a binding >= row has dual >= 0; reduced cost d_j = c_j - duals·A_j.
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  long iterations = 0;
  /// Rows carrying a non-zero phase-one multiplier when infeasible.
  std::vector<int> infeasible_rows;
};

inline void LpProblem::check() const {
  const auto n = objective.size();
  if (lower.size() != n || upper.size() != n)
    throw std::invalid_argument("LpProblem: bound vectors do not match objective size");
  if (senses.size() != rows.size() || rhs.size() != rows.size())
    throw std::invalid_argument("LpProblem: row data sizes differ");
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isinf(lower[j]) && std::isinf(upper[j]))
      throw std::invalid_argument("LpProblem: free variables are not supported");
    if (lower[j] > upper[j]) throw std::invalid_argument("LpProblem: lower bound above upper bound");
  }
  for (const auto& row : rows)
    for (const Entry& e : row)
      if (e.index < 0 || static_cast<std::size_t>(e.index) >= n)
        throw std::invalid_argument("LpProblem: row entry refers to unknown variable");
}

struct SimplexOptions {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_every = 64;
  int degenerate_before_bland = 50;
  long max_iterations = 0;  ///< 0: automatic
};

/// Incremental simplex solver. Columns may be appended and variable bounds
/// changed between calls to `optimize()`, which warm-starts from the last
/// basis (primal simplex when still primal feasible, dual simplex when dual
/// feasible, composite phase one otherwise).
class SimplexSolver {
 public:
  explicit SimplexSolver(const LpProblem& p, SimplexOptions opt = {}) : opt_(opt) {
    p.check();
    m_ = p.num_rows();
    rhs_ = Eigen::VectorXd::Zero(m_);
    for (int i = 0; i < m_; ++i) {
      rhs_(i) = p.rhs[static_cast<std::size_t>(i)];
      double lo = 0.0, hi = 0.0;
      switch (p.senses[static_cast<std::size_t>(i)]) {
        case Sense::kLessEqual: lo = 0.0; hi = kInf; break;
        case Sense::kGreaterEqual: lo = -kInf; hi = 0.0; break;
        case Sense::kEqual: lo = 0.0; hi = 0.0; break;
      }
      push_var({{i, 1.0}}, 0.0, lo, hi);
    }
    std::vector<std::vector<Entry>> cols(static_cast<std::size_t>(p.num_vars()));
    for (int i = 0; i < m_; ++i)
      for (const Entry& e : p.rows[static_cast<std::size_t>(i)])
        if (e.value != 0.0) cols[static_cast<std::size_t>(e.index)].push_back({i, e.value});
    for (int j = 0; j < p.num_vars(); ++j)
      push_var(std::move(cols[static_cast<std::size_t>(j)]), p.objective[static_cast<std::size_t>(j)],
               p.lower[static_cast<std::size_t>(j)], p.upper[static_cast<std::size_t>(j)]);
    crash_basis();
  }

  int num_rows() const { return m_; }
  int num_structurals() const { return static_cast<int>(cost_.size()) - m_; }

  /// Appends a structural column given as (row, coefficient) entries; the new
  /// variable starts nonbasic at its lower bound.
  int add_column(std::vector<Entry> entries, double cost, double lo = 0.0, double hi = kInf) {
    if (std::isinf(lo) && std::isinf(hi)) throw std::invalid_argument("free variables are not supported");
    for (const Entry& e : entries)
      if (e.index < 0 || e.index >= m_) throw std::invalid_argument("add_column: bad row index");
    std::erase_if(entries, [](const Entry& e) { return e.value == 0.0; });
    push_var(std::move(entries), cost, lo, hi);
    const int v = static_cast<int>(cost_.size()) - 1;
    status_.push_back(std::isinf(lo) ? Status::kAtUpper : Status::kAtLower);
    return v - m_;
  }

  void set_bounds(int structural, double lo, double hi) {
    const auto v = static_cast<std::size_t>(structural + m_);
    if (lo > hi) throw std::invalid_argument("set_bounds: lower above upper");
    lb_[v] = lo;
    ub_[v] = hi;
  }
  /// Dual simplex stops once its (monotone) objective exceeds this value.
  void set_objective_limit(double limit) { objective_limit_ = limit; }
  double lower(int structural) const { return lb_[static_cast<std::size_t>(structural + m_)]; }
  double upper(int structural) const { return ub_[static_cast<std::size_t>(structural + m_)]; }

  LpSolution optimize() {
    iterations_ = 0;
    farkas_.clear();
    if (needs_refactor_) refactor();
    allow_perturbation_ = true;
    LpStatus st = solve_from_basis();
    if (perturbed_) {
      // Exact bounds back; the basis stays dual feasible, so this is
      // usually a short dual simplex cleanup.
      restore_bounds();
      allow_perturbation_ = false;
      st = solve_from_basis();
    }
    return finish(st);
  }

  long iterations() const { return iterations_; }

 private:
  enum class Status : unsigned char { kBasic, kAtLower, kAtUpper };

  LpStatus solve_from_basis() {
    sync_nonbasic();
    LpStatus st = LpStatus::kOptimal;
    compute_primal();
    if (!primal_feasible()) {
      if (make_dual_feasible()) {
        st = dual_simplex();
        if ((st == LpStatus::kInfeasible && !perturbed_) || st == LpStatus::kObjectiveLimit) return st;
        if (st != LpStatus::kOptimal) st = primal_simplex(true);
      } else {
        st = primal_simplex(true);
      }
      if (st != LpStatus::kOptimal) return st;
    }
    return primal_simplex(false);
  }

  /// Widens every finite bound by a small random amount so that degenerate
  /// vertices become non-degenerate. Deterministic for a given call sequence.
  void perturb_bounds() {
    saved_lb_ = lb_;
    saved_ub_ = ub_;
    std::uniform_real_distribution<double> u(1.0, 2.0);
    for (std::size_t v = 0; v < lb_.size(); ++v) {
      if (!std::isinf(lb_[v])) lb_[v] -= 1e-7 * (1.0 + std::abs(lb_[v])) * u(rng_);
      if (!std::isinf(ub_[v])) ub_[v] += 1e-7 * (1.0 + std::abs(ub_[v])) * u(rng_);
      if (status_[v] != Status::kBasic) x_[v] = status_[v] == Status::kAtLower ? lb_[v] : ub_[v];
    }
    perturbed_ = true;
  }

  void restore_bounds() {
    lb_ = std::move(saved_lb_);
    ub_ = std::move(saved_ub_);
    saved_lb_.clear();
    saved_ub_.clear();
    perturbed_ = false;
  }

  void push_var(std::vector<Entry> col, double c, double lo, double hi) {
    cols_.push_back(std::move(col));
    cost_.push_back(c);
    lb_.push_back(lo);
    ub_.push_back(hi);
    x_.push_back(0.0);
  }

  int num_vars() const { return static_cast<int>(cost_.size()); }

  void crash_basis() {
    head_.resize(static_cast<std::size_t>(m_));
    status_.assign(cost_.size(), Status::kAtLower);
    for (int i = 0; i < m_; ++i) {
      head_[static_cast<std::size_t>(i)] = i;
      status_[static_cast<std::size_t>(i)] = Status::kBasic;
    }
    for (int v = m_; v < num_vars(); ++v)
      status_[static_cast<std::size_t>(v)] = std::isinf(lb_[static_cast<std::size_t>(v)]) ? Status::kAtUpper : Status::kAtLower;
    binv_ = Eigen::MatrixXd::Identity(m_, m_);
    since_refactor_ = 0;
    needs_refactor_ = false;
  }

  void sync_nonbasic() {
    for (int v = 0; v < num_vars(); ++v) {
      const auto s = static_cast<std::size_t>(v);
      if (status_[s] == Status::kBasic) continue;
      if (status_[s] == Status::kAtLower && std::isinf(lb_[s])) status_[s] = Status::kAtUpper;
      if (status_[s] == Status::kAtUpper && std::isinf(ub_[s])) status_[s] = Status::kAtLower;
      x_[s] = status_[s] == Status::kAtLower ? lb_[s] : ub_[s];
    }
  }

  void refactor() {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
    for (int k = 0; k < m_; ++k)
      for (const Entry& e : cols_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])]) b(e.index, k) = e.value;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    if (!(lu.rcond() > 1e-13)) {
      crash_basis();
      return;
    }
    binv_ = lu.inverse();
    since_refactor_ = 0;
    needs_refactor_ = false;
  }

  void compute_primal() {
    Eigen::VectorXd r = rhs_;
    for (int v = 0; v < num_vars(); ++v) {
      const auto s = static_cast<std::size_t>(v);
      if (status_[s] == Status::kBasic || x_[s] == 0.0) continue;
      for (const Entry& e : cols_[s]) r(e.index) -= e.value * x_[s];
    }
    xb_ = binv_ * r;
    for (int k = 0; k < m_; ++k) x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])] = xb_(k);
  }

  double infeasibility(int k) const {
    const auto v = static_cast<std::size_t>(head_[static_cast<std::size_t>(k)]);
    const double x = xb_(k);
    if (x < lb_[v] - opt_.primal_tol) return lb_[v] - x;
    if (x > ub_[v] + opt_.primal_tol) return x - ub_[v];
    return 0.0;
  }

  bool primal_feasible() const {
    for (int k = 0; k < m_; ++k)
      if (infeasibility(k) > 0.0) return false;
    return true;
  }

  double dot_col(const Eigen::VectorXd& y, int v) const {
    double s = 0.0;
    for (const Entry& e : cols_[static_cast<std::size_t>(v)]) s += y(e.index) * e.value;
    return s;
  }

  Eigen::VectorXd ftran(int v) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
    for (const Entry& e : cols_[static_cast<std::size_t>(v)]) a.noalias() += binv_.col(e.index) * e.value;
    return a;
  }

  void pivot(int r, int entering, const Eigen::VectorXd& alpha, Status leaving_status) {
    const int leaving = head_[static_cast<std::size_t>(r)];
    Eigen::RowVectorXd pr = binv_.row(r) / alpha(r);
    binv_.noalias() -= alpha * pr;
    binv_.row(r) = pr;
    head_[static_cast<std::size_t>(r)] = entering;
    status_[static_cast<std::size_t>(entering)] = Status::kBasic;
    status_[static_cast<std::size_t>(leaving)] = leaving_status;
    const auto ls = static_cast<std::size_t>(leaving);
    x_[ls] = leaving_status == Status::kAtLower ? lb_[ls] : ub_[ls];
    if (++since_refactor_ >= opt_.refactor_every) refactor();
  }

  long iteration_cap() const {
    return opt_.max_iterations > 0 ? opt_.max_iterations : 100000L + 50L * (m_ + num_vars());
  }

  /// Flips nonbasic variables to the bound matching their reduced-cost sign.
  /// Returns false when some variable cannot be made dual feasible.
  bool make_dual_feasible() {
    Eigen::VectorXd cb(m_);
    for (int k = 0; k < m_; ++k) cb(k) = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])];
    const Eigen::VectorXd y = binv_.transpose() * cb;
    bool flipped = false;
    for (int v = 0; v < num_vars(); ++v) {
      const auto s = static_cast<std::size_t>(v);
      if (status_[s] == Status::kBasic || lb_[s] == ub_[s]) continue;
      const double d = cost_[s] - dot_col(y, v);
      if (status_[s] == Status::kAtLower && d < -opt_.dual_tol) {
        if (std::isinf(ub_[s])) return false;
        status_[s] = Status::kAtUpper;
        x_[s] = ub_[s];
        flipped = true;
      } else if (status_[s] == Status::kAtUpper && d > opt_.dual_tol) {
        if (std::isinf(lb_[s])) return false;
        status_[s] = Status::kAtLower;
        x_[s] = lb_[s];
        flipped = true;
      }
    }
    if (flipped) compute_primal();
    return true;
  }

  LpStatus primal_simplex(bool phase_one) {
    const long cap = iteration_cap();
    int degenerate = 0;
    bool bland = false;
    Eigen::VectorXd cb(m_);
    while (true) {
      if (iterations_ >= cap) return LpStatus::kIterationLimit;
      compute_primal();
      bool any_infeasible = false;
      for (int k = 0; k < m_; ++k) {
        const auto v = static_cast<std::size_t>(head_[static_cast<std::size_t>(k)]);
        if (phase_one) {
          const double x = xb_(k);
          cb(k) = x < lb_[v] - opt_.primal_tol ? -1.0 : (x > ub_[v] + opt_.primal_tol ? 1.0 : 0.0);
          any_infeasible = any_infeasible || cb(k) != 0.0;
        } else {
          cb(k) = cost_[v];
        }
      }
      if (phase_one && !any_infeasible) return LpStatus::kOptimal;
      const Eigen::VectorXd y = binv_.transpose() * cb;

      int q = -1;
      double best = 0.0;
      for (int v = 0; v < num_vars(); ++v) {
        const auto s = static_cast<std::size_t>(v);
        if (status_[s] == Status::kBasic || lb_[s] == ub_[s]) continue;
        const double d = (phase_one ? 0.0 : cost_[s]) - dot_col(y, v);
        double score = 0.0;
        if (status_[s] == Status::kAtLower && d < -opt_.dual_tol) score = -d;
        else if (status_[s] == Status::kAtUpper && d > opt_.dual_tol) score = d;
        if (score <= 0.0) continue;
        if (bland) {
          q = v;
          break;
        }
        if (score > best) {
          best = score;
          q = v;
        }
      }
      if (q < 0) {
        if (phase_one) {
          for (int i = 0; i < m_; ++i)
            if (std::abs(y(i)) > 1e-9) farkas_.push_back(i);
          return LpStatus::kInfeasible;
        }
        return LpStatus::kOptimal;
      }

      const auto qs = static_cast<std::size_t>(q);
      const double dir = status_[qs] == Status::kAtLower ? 1.0 : -1.0;
      const Eigen::VectorXd alpha = ftran(q);

      // Harris two-pass ratio test.
      double theta_relaxed = kInf;
      for (int k = 0; k < m_; ++k) {
        const double rate = -dir * alpha(k);
        if (std::abs(alpha(k)) <= opt_.pivot_tol) continue;
        const double lim = ratio_limit(k, rate, opt_.primal_tol, phase_one);
        theta_relaxed = std::min(theta_relaxed, lim);
      }
      const double flip = ub_[qs] - lb_[qs];
      int r = -1;
      double theta = kInf;
      double best_pivot = 0.0;
      Status leave_status = Status::kAtLower;
      if (bland) {
        // Textbook ratio test, ties to the smallest variable index.
        for (int k = 0; k < m_; ++k) {
          const double rate = -dir * alpha(k);
          if (std::abs(alpha(k)) <= 1e-7) continue;
          Status st = Status::kAtLower;
          const double lim = std::max(ratio_limit(k, rate, 0.0, phase_one, &st), 0.0);
          if (std::isinf(lim)) continue;
          const bool tie = r >= 0 && lim <= theta + 1e-12 && lim >= theta - 1e-12;
          if (r < 0 || lim < theta - 1e-12 || (tie && head_[static_cast<std::size_t>(k)] < head_[static_cast<std::size_t>(r)])) {
            r = k;
            theta = lim;
            leave_status = st;
          }
        }
      } else if (!std::isinf(theta_relaxed)) {
        for (int k = 0; k < m_; ++k) {
          const double rate = -dir * alpha(k);
          if (std::abs(alpha(k)) <= opt_.pivot_tol) continue;
          Status st = Status::kAtLower;
          const double lim = ratio_limit(k, rate, 0.0, phase_one, &st);
          if (lim <= theta_relaxed && std::abs(alpha(k)) > best_pivot) {
            best_pivot = std::abs(alpha(k));
            r = k;
            theta = std::max(lim, 0.0);
            leave_status = st;
          }
        }
      }
      ++iterations_;
      if (flip <= theta) {
        if (std::isinf(flip)) {
          if (phase_one) return LpStatus::kInfeasible;  // cannot happen with bounded infeasibility
          return LpStatus::kUnbounded;
        }
        status_[qs] = status_[qs] == Status::kAtLower ? Status::kAtUpper : Status::kAtLower;
        x_[qs] = status_[qs] == Status::kAtLower ? lb_[qs] : ub_[qs];
        degenerate = 0;
        bland = false;
        continue;
      }
      if (r < 0) return LpStatus::kUnbounded;
      if (theta < 1e-12) {
        if (++degenerate > opt_.degenerate_before_bland) {
          if (allow_perturbation_ && !perturbed_) {
            perturb_bounds();
            degenerate = 0;
            continue;
          }
          bland = true;
        }
      } else {
        degenerate = 0;
        bland = false;
      }
      pivot(r, q, alpha, leave_status);
    }
  }

  /// Step length at which basic variable k hits a blocking bound when it
  /// changes at `rate` per unit step. In phase one an infeasible variable is
  /// blocked only when it reaches the bound it violates.
  double ratio_limit(int k, double rate, double tol, bool phase_one, Status* hit = nullptr) const {
    const auto v = static_cast<std::size_t>(head_[static_cast<std::size_t>(k)]);
    const double x = xb_(k);
    const double lo = lb_[v], hi = ub_[v];
    if (rate < 0.0) {
      double bound;
      Status st = Status::kAtLower;
      if (phase_one && x > hi + opt_.primal_tol) {
        bound = hi;
        st = Status::kAtUpper;
      } else if (phase_one && x < lo - opt_.primal_tol) {
        return kInf;
      } else {
        bound = lo;
      }
      if (std::isinf(bound)) return kInf;
      if (hit) *hit = st;
      return (x - bound + tol) / -rate;
    }
    double bound;
    Status st = Status::kAtUpper;
    if (phase_one && x < lo - opt_.primal_tol) {
      bound = lo;
      st = Status::kAtLower;
    } else if (phase_one && x > hi + opt_.primal_tol) {
      return kInf;
    } else {
      bound = hi;
    }
    if (std::isinf(bound)) return kInf;
    if (hit) *hit = st;
    return (bound - x + tol) / rate;
  }

  LpStatus dual_simplex() {
    const long cap = iteration_cap();
    Eigen::VectorXd cb(m_);
    while (true) {
      if (iterations_ >= cap) return LpStatus::kIterationLimit;
      compute_primal();
      if (objective_limit_ < kInf) {
        double obj = 0.0;
        for (int v = 0; v < num_vars(); ++v) obj += cost_[static_cast<std::size_t>(v)] * x_[static_cast<std::size_t>(v)];
        if (obj > objective_limit_ + 1e-9 * (1.0 + std::abs(objective_limit_))) return LpStatus::kObjectiveLimit;
      }
      int r = -1;
      double worst = 0.0;
      for (int k = 0; k < m_; ++k) {
        const double inf = infeasibility(k);
        if (inf > worst) {
          worst = inf;
          r = k;
        }
      }
      if (r < 0) return LpStatus::kOptimal;
      const auto lv = static_cast<std::size_t>(head_[static_cast<std::size_t>(r)]);
      const bool to_lower = xb_(r) < lb_[lv];

      for (int k = 0; k < m_; ++k) cb(k) = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])];
      const Eigen::VectorXd y = binv_.transpose() * cb;
      const Eigen::VectorXd rho = binv_.row(r).transpose();

      // Harris two-pass on the dual ratios |d_j| / |alpha_rj|.
      struct Cand { int v; double d; double a; };
      std::vector<Cand> cands;
      double relaxed = kInf;
      for (int v = 0; v < num_vars(); ++v) {
        const auto s = static_cast<std::size_t>(v);
        if (status_[s] == Status::kBasic || lb_[s] == ub_[s]) continue;
        const double a = dot_col(rho, v);
        if (std::abs(a) <= opt_.pivot_tol) continue;
        const bool at_lower = status_[s] == Status::kAtLower;
        // Increasing a nonbasic at lower moves x_r by -a per unit.
        const bool ok = to_lower ? (at_lower ? a < 0.0 : a > 0.0) : (at_lower ? a > 0.0 : a < 0.0);
        if (!ok) continue;
        const double d = cost_[s] - dot_col(y, v);
        const double dd = at_lower ? std::max(d, 0.0) : std::max(-d, 0.0);
        cands.push_back({v, dd, a});
        relaxed = std::min(relaxed, (dd + opt_.dual_tol) / std::abs(a));
      }
      if (cands.empty()) {
        farkas_.clear();
        for (int i = 0; i < m_; ++i)
          if (std::abs(rho(i)) > 1e-9) farkas_.push_back(i);
        return LpStatus::kInfeasible;
      }
      int q = -1;
      double best_pivot = 0.0;
      for (const Cand& c : cands)
        if (c.d / std::abs(c.a) <= relaxed && std::abs(c.a) > best_pivot) {
          best_pivot = std::abs(c.a);
          q = c.v;
        }
      ++iterations_;
      const Eigen::VectorXd alpha = ftran(q);
      if (std::abs(alpha(r)) <= opt_.pivot_tol) {
        refactor();
        continue;
      }
      pivot(r, q, alpha, to_lower ? Status::kAtLower : Status::kAtUpper);
    }
  }

  LpSolution finish(LpStatus st) {
    LpSolution sol;
    sol.status = st;
    sol.iterations = iterations_;
    if (st == LpStatus::kInfeasible) sol.infeasible_rows = farkas_;
    compute_primal();
    const int n = num_structurals();
    sol.primal.resize(static_cast<std::size_t>(n));
    sol.objective = 0.0;
    for (int j = 0; j < n; ++j) {
      const auto s = static_cast<std::size_t>(j + m_);
      double v = x_[s];
      // Clean tiny bound violations so callers see exact bounds.
      if (v < lb_[s] && v > lb_[s] - 1e-7) v = lb_[s];
      if (v > ub_[s] && v < ub_[s] + 1e-7) v = ub_[s];
      sol.primal[static_cast<std::size_t>(j)] = v;
      sol.objective += cost_[s] * v;
    }
    Eigen::VectorXd cb(m_);
    for (int k = 0; k < m_; ++k) cb(k) = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])];
    const Eigen::VectorXd y = binv_.transpose() * cb;
    sol.duals.assign(y.data(), y.data() + m_);
    sol.reduced_costs.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      sol.reduced_costs[static_cast<std::size_t>(j)] = cost_[static_cast<std::size_t>(j + m_)] - dot_col(y, j + m_);
    return sol;
  }

  SimplexOptions opt_;
  int m_ = 0;
  Eigen::VectorXd rhs_;
  std::vector<std::vector<Entry>> cols_;
  std::vector<double> cost_, lb_, ub_, x_;
  std::vector<Status> status_;
  std::vector<int> head_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  int since_refactor_ = 0;
  bool needs_refactor_ = false;
  double objective_limit_ = kInf;
  bool perturbed_ = false;
  bool allow_perturbation_ = true;
  std::vector<double> saved_lb_, saved_ub_;
  std::mt19937_64 rng_{0x5eed};
  long iterations_ = 0;
  std::vector<int> farkas_;
};

inline LpSolution solve_lp(const LpProblem& p, SimplexOptions opt = {}) {
  SimplexSolver s(p, opt);
  return s.optimize();
}

// ---------------------------------------------------------------------------
// 0/1 branch and bound.

struct BinaryOptions {
  double absolute_gap = 1e-6;
  double integrality_tol = 1e-6;
  long max_nodes = 0;  ///< 0: unlimited
  double time_limit = 0.0;  ///< seconds, 0: unlimited
  /// Objective of a known integer point; only strictly better ones are sought.
  double cutoff = kInf;
};

struct BranchStats {
  long nodes = 0;
  long fixed_by_reduced_cost = 0;
  long lp_iterations = 0;
  double root_bound = 0.0;
  bool proven_optimal = false;
};

namespace detail {

template <class Solver>
LpSolution branch_and_bound(Solver& solver, const std::vector<int>& binary, const BinaryOptions& opt,
                            BranchStats* stats) {
  std::vector<std::pair<double, double>> original(binary.size()), base(binary.size());
  for (std::size_t k = 0; k < binary.size(); ++k) {
    const int v = binary[k];
    original[k] = {solver.lower(v), solver.upper(v)};
    base[k] = {std::max(original[k].first, 0.0), std::min(original[k].second, 1.0)};
    solver.set_bounds(v, base[k].first, base[k].second);
  }
  BranchStats local;
  BranchStats& st = stats ? *stats : local;
  st = {};

  auto restore = [&] {
    for (std::size_t k = 0; k < binary.size(); ++k) solver.set_bounds(binary[k], original[k].first, original[k].second);
    solver.set_objective_limit(kInf);
  };

  LpSolution root = solver.optimize();
  st.root_bound = root.objective;
  if (root.status != LpStatus::kOptimal) {
    restore();
    return root;
  }

  LpSolution incumbent;
  incumbent.status = LpStatus::kInfeasible;
  double best = opt.cutoff;
  const auto started = std::chrono::steady_clock::now();

  // A binary at zero with root reduced cost d cannot be one in any solution
  // cheaper than root + d, so it is fixed once the incumbent is below that.
  auto fix_by_reduced_cost = [&]() {
    for (std::size_t k = 0; k < binary.size(); ++k) {
      if (base[k].first == base[k].second) continue;
      const auto v = static_cast<std::size_t>(binary[k]);
      const double d = root.reduced_costs[v];
      if (root.primal[v] < opt.integrality_tol && d > best - root.objective + opt.absolute_gap) {
        base[k] = {0.0, 0.0};
        ++st.fixed_by_reduced_cost;
      } else if (root.primal[v] > 1.0 - opt.integrality_tol && -d > best - root.objective + opt.absolute_gap) {
        base[k] = {1.0, 1.0};
        ++st.fixed_by_reduced_cost;
      }
    }
  };

  if (best < kInf) fix_by_reduced_cost();

  using Fixings = std::vector<std::pair<int, double>>;  // (index into binary, value)
  std::vector<Fixings> stack;
  stack.push_back({});
  bool first = true;
  bool limit_hit = false;
  while (!stack.empty()) {
    if ((opt.max_nodes > 0 && st.nodes >= opt.max_nodes) ||
        (opt.time_limit > 0.0 &&
         std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() > opt.time_limit)) {
      limit_hit = true;
      break;
    }
    Fixings fx = std::move(stack.back());
    stack.pop_back();
    ++st.nodes;
    LpSolution sol;
    if (first) {
      sol = root;
      first = false;
    } else {
      for (std::size_t k = 0; k < binary.size(); ++k) solver.set_bounds(binary[k], base[k].first, base[k].second);
      for (auto [k, val] : fx) solver.set_bounds(binary[static_cast<std::size_t>(k)], val, val);
      solver.set_objective_limit(best < kInf ? best - opt.absolute_gap : kInf);
      sol = solver.optimize();
      st.lp_iterations += sol.iterations;
    }
    if (sol.status != LpStatus::kOptimal) continue;
    if (sol.objective >= best - opt.absolute_gap) continue;
    int branch = -1;
    double most = 0.0;
    for (std::size_t k = 0; k < binary.size(); ++k) {
      const double v = sol.primal[static_cast<std::size_t>(binary[k])];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > opt.integrality_tol && frac > most + 1e-12) {
        most = frac;
        branch = static_cast<int>(k);
      }
    }
    if (branch < 0) {
      best = sol.objective;
      incumbent = sol;
      for (int v : binary) {
        auto& x = incumbent.primal[static_cast<std::size_t>(v)];
        x = std::round(x);
      }
      fix_by_reduced_cost();
      continue;
    }
    Fixings down = fx, up = std::move(fx);
    down.emplace_back(branch, 0.0);
    up.emplace_back(branch, 1.0);
    stack.push_back(std::move(down));
    stack.push_back(std::move(up));
  }
  restore();
  st.proven_optimal = !limit_hit;
  if (limit_hit && incumbent.status == LpStatus::kOptimal) incumbent.status = LpStatus::kIterationLimit;
  if (limit_hit && incumbent.primal.empty()) incumbent.status = LpStatus::kIterationLimit;
  return incumbent;
}

}  // namespace detail

/// Optimal 0/1 values for `binary_vars` (other variables stay continuous),
/// by depth-first branch and bound on the most fractional variable, up
/// branch first. Status is infeasible when no integer point exists.
inline LpSolution solve_binary(const LpProblem& p, const std::vector<int>& binary_vars, BinaryOptions opt = {},
                               BranchStats* stats = nullptr) {
  SimplexSolver s(p);
  return detail::branch_and_bound(s, binary_vars, opt, stats);
}

inline LpSolution solve_binary(SimplexSolver& solver, const std::vector<int>& binary_vars, BinaryOptions opt = {},
                               BranchStats* stats = nullptr) {
  return detail::branch_and_bound(solver, binary_vars, opt, stats);
}

}  // namespace dcg::lp
