#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "balancekit/errors.hpp"
#include "balancekit/problem.hpp"

namespace balancekit {

// Log-domain scaling variables: D = diag(e^{x_0}, ..., e^{x_{n-1}}).
// Only differences x_i - x_j are observable; a constant shift leaves the
// scaled matrix unchanged.
using ScalingVector = std::vector<double>;

// Scaled entry of arc e under x. All code paths that need the current
// entry value use this one expression, so truncation and invariant checks
// compare identical doubles.
inline double scaled_entry(const Arc& e, const ScalingVector& x) {
  return e.weight * std::exp(x[e.from] - x[e.to]);
}

// One iteration's audit row. ns is elapsed nanoseconds since run start and
// stays 0 unless timing collection is switched on, so that traces from
// identical runs are byte-identical.
struct TraceRecord {
  std::size_t iter = 0;
  int node = -1;  // -1 = none
  double alpha = 0.0;
  double f_before = 0.0;
  double f_after = 0.0;
  double grad_l1 = 0.0;
  double grad_l2 = 0.0;
  double imbalance = 0.0;
  std::int64_t ns = 0;
};

// Append-only consumer of trace records; concrete encodings live in the
// I/O layer.
struct TraceSink {
  virtual ~TraceSink() = default;
  virtual void append(const TraceRecord& record) = 0;
};

struct VectorTraceSink final : TraceSink {
  std::vector<TraceRecord> records;
  void append(const TraceRecord& record) override { records.push_back(record); }
};

// Full row/col sums are recomputed from scratch this often to bound
// floating-point drift of the incremental updates.
inline constexpr std::size_t kRecomputePeriod = 10000;

// Current scaled view of a problem: per-node L1 row/column sums of
// D A D^{-1}, the objective f (total entry sum), and incrementally
// maintained gradient norms. Entries themselves are derived on demand via
// scaled_entry and never stored.
//
// Exclusively owned by one run; independent runs can proceed in parallel.
class BalanceState {
 public:
  explicit BalanceState(const BalancingProblem& problem)
      : problem_(&problem), x_(problem.n, 0.0) {
    recompute_all();
  }

  BalanceState(const BalancingProblem& problem, ScalingVector x)
      : problem_(&problem), x_(std::move(x)) {
    if (static_cast<int>(x_.size()) != problem.n)
      throw DimensionMismatch("scaling vector length != n");
    recompute_all();
  }

  const BalancingProblem& problem() const { return *problem_; }
  const ScalingVector& x() const { return x_; }
  double row_sum(int i) const { return row_sum_[i]; }
  double col_sum(int i) const { return col_sum_[i]; }
  const std::vector<double>& row_sums() const { return row_sum_; }
  const std::vector<double>& col_sums() const { return col_sum_; }
  double f() const { return f_; }
  double grad_l1() const { return grad_abs_; }
  double grad_l2() const { return std::sqrt(std::max(grad_sq_, 0.0)); }

  // Arithmetic-operation counter for cost contracts: incremented once per
  // arc touched by an incremental update.
  std::size_t arc_ops() const { return arc_ops_; }

  // Rebuilds sums, f and gradient norms from scratch. Throws OverflowError
  // if any scaled entry is non-finite.
  void recompute_all() {
    const BalancingProblem& p = *problem_;
    row_sum_.assign(p.n, 0.0);
    col_sum_.assign(p.n, 0.0);
    for (const Arc& e : p.arcs) {
      double v = scaled_entry(e, x_);
      if (!std::isfinite(v)) throw OverflowError("scaled entry out of range");
      row_sum_[e.from] += v;
      col_sum_[e.to] += v;
    }
    f_ = 0.0;
    grad_sq_ = 0.0;
    grad_abs_ = 0.0;
    for (int i = 0; i < p.n; ++i) {
      f_ += row_sum_[i];
      double g = row_sum_[i] - col_sum_[i];
      grad_sq_ += g * g;
      grad_abs_ += std::fabs(g);
    }
    if (!std::isfinite(f_)) throw OverflowError("objective out of range");
  }

  // Adds alpha to x_i and updates all incident row/col sums incrementally,
  // O(deg(i)) arithmetic. Returns the realized decrease of f. alpha == 0 is
  // a no-op with decrease 0.
  double apply_scaling(int i, double alpha) {
    if (alpha == 0.0) return 0.0;
    const BalancingProblem& p = *problem_;
    const double xi_old = x_[i];
    const double xi_new = xi_old + alpha;
    if (!std::isfinite(xi_new)) throw OverflowError("scaling exponent out of range");

    const double row_old = row_sum_[i];
    const double col_old = col_sum_[i];
    x_[i] = xi_new;

    double row_new = 0.0;
    for (int e : p.out_adj[i]) {
      const Arc& a = p.arcs[e];
      double v_old = a.weight * std::exp(xi_old - x_[a.to]);
      double v_new = a.weight * std::exp(xi_new - x_[a.to]);
      touch_gradient(a.to);
      col_sum_[a.to] += v_new - v_old;
      settle_gradient(a.to);
      row_new += v_new;
      ++arc_ops_;
    }
    double col_new = 0.0;
    for (int e : p.in_adj[i]) {
      const Arc& a = p.arcs[e];
      double v_old = a.weight * std::exp(x_[a.from] - xi_old);
      double v_new = a.weight * std::exp(x_[a.from] - xi_new);
      touch_gradient(a.from);
      row_sum_[a.from] += v_new - v_old;
      settle_gradient(a.from);
      col_new += v_new;
      ++arc_ops_;
    }
    if (!std::isfinite(row_new) || !std::isfinite(col_new))
      throw OverflowError("scaled sums out of range");

    touch_gradient(i);
    row_sum_[i] = row_new;
    col_sum_[i] = col_new;
    settle_gradient(i);

    double decrease = (row_old + col_old) - (row_new + col_new);
    f_ -= decrease;
    return decrease;
  }

  // Gain of balancing node i: the exact decrease of f it would realize.
  double gain(int i) const {
    double d = std::sqrt(col_sum_[i]) - std::sqrt(row_sum_[i]);
    return d * d;
  }

  // The balancing step: scales row i by sqrt(col/row) and column i by the
  // reciprocal, equalizing both sums at their geometric mean. Returns the
  // applied alpha and the realized decrease of f.
  struct StepResult {
    double alpha = 0.0;
    double decrease = 0.0;
  };

  StepResult balance_index(int i) {
    double row = row_sum_[i];
    double col = col_sum_[i];
    if (row == col) return {0.0, 0.0};  // exactly balanced: no-op
    double alpha = 0.5 * std::log(col / row);
    double decrease = apply_scaling(i, alpha);
    return {alpha, decrease};
  }

 private:
  void touch_gradient(int k) {
    double g = row_sum_[k] - col_sum_[k];
    grad_sq_ -= g * g;
    grad_abs_ -= std::fabs(g);
  }
  void settle_gradient(int k) {
    double g = row_sum_[k] - col_sum_[k];
    grad_sq_ += g * g;
    grad_abs_ += std::fabs(g);
  }

  const BalancingProblem* problem_;
  ScalingVector x_;
  std::vector<double> row_sum_;
  std::vector<double> col_sum_;
  double f_ = 0.0;
  double grad_sq_ = 0.0;
  double grad_abs_ = 0.0;
  std::size_t arc_ops_ = 0;
};

// f(x) = sum over arcs of a_ij e^{x_i - x_j}, recomputed from scratch.
inline double objective(const BalanceState& state) {
  double sum = 0.0;
  for (const Arc& e : state.problem().arcs) {
    double v = scaled_entry(e, state.x());
    if (!std::isfinite(v)) throw OverflowError("scaled entry out of range");
    sum += v;
  }
  return sum;
}

// Gradient component i is row_sum[i] - col_sum[i]: the difference between
// the L1 norms of row i and column i of the scaled matrix.
inline std::vector<double> gradient(const BalanceState& state) {
  int n = state.problem().n;
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = state.row_sum(i) - state.col_sum(i);
  return g;
}

// ||grad f||_2 / f, the relative imbalance. Always >= 0; f >= a_min > 0.
inline double imbalance(const BalanceState& state) {
  double sq = 0.0;
  for (int i = 0; i < state.problem().n; ++i) {
    double g = state.col_sum(i) - state.row_sum(i);
    sq += g * g;
  }
  return std::sqrt(sq) / state.f();
}

inline bool is_eps_balanced(const BalanceState& state, double eps) {
  return imbalance(state) <= eps;
}

}  // namespace balancekit
