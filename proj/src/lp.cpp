#include "hobody/lp.hpp"

#include <cmath>

namespace hobody {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;

class Tableau {
 public:
  Tableau(int rows, int cols) : t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  double& at(int r, int c) { return t_(r, c); }
  double rhs(int r) const { return t_(r, t_.cols() - 1); }
  double& rhs(int r) { return t_(r, t_.cols() - 1); }
  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  int obj_row() const { return rows(); }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int c) {
    const double p = t_(r, c);
    t_.row(r) /= p;
    for (int i = 0; i <= rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
  }

  /// Runs Bland's rule on the objective row; columns with allowed[c] == false never enter.
  LPStatus optimize(const std::vector<bool>& allowed) {
    const int limit = 100 * (rows() + cols()) + 1000;
    for (int iter = 0; iter < limit; ++iter) {
      int enter = -1;
      for (int c = 0; c < cols(); ++c) {
        if (allowed[c] && t_(obj_row(), c) > kCostTol) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return LPStatus::optimal;
      int leave = -1;
      double best = 0.0;
      for (int r = 0; r < rows(); ++r) {
        const double a = t_(r, enter);
        if (a <= kPivotTol) continue;
        const double ratio = rhs(r) / a;
        if (leave < 0 || ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return LPStatus::unbounded;
      pivot(leave, enter);
    }
    throw PrecisionFailure("simplex iteration limit reached");
  }

  /// Sets the objective row to reduced costs of `cost` with respect to the current basis.
  void set_objective(const Eigen::VectorXd& cost) {
    t_.row(obj_row()).setZero();
    for (int c = 0; c < cols(); ++c) t_(obj_row(), c) = cost(c);
    for (int r = 0; r < rows(); ++r) {
      const double cb = cost(basis_[r]);
      if (cb != 0.0) t_.row(obj_row()) -= cb * t_.row(r);
    }
  }

  /// Objective value sum c_B * rhs, which is -(rhs of the reduced objective row).
  double objective_value() const { return -t_(rows(), t_.cols() - 1); }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
};

}  // namespace

LPResult solve_lp(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.A.rows());
  const int n = static_cast<int>(lp.A.cols());
  if (lp.b.size() != m || lp.c.size() != n)
    throw InvalidArgument("linear program dimensions are inconsistent");
  auto is_nonneg = [&](int j) { return !lp.nonnegative.empty() && lp.nonnegative[j]; };

  // Column layout: positive parts, negative parts of free variables, slacks, artificials.
  std::vector<int> neg_col(n, -1);
  int cols = n;
  for (int j = 0; j < n; ++j)
    if (!is_nonneg(j)) neg_col[j] = cols++;
  const int slack0 = cols;
  cols += m;
  int n_art = 0;
  for (int i = 0; i < m; ++i)
    if (lp.b(i) < 0.0) ++n_art;
  const int art0 = cols;
  cols += n_art;

  Tableau tab(m, cols);
  int art = art0;
  for (int i = 0; i < m; ++i) {
    const double sign = lp.b(i) < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      tab.at(i, j) = sign * lp.A(i, j);
      if (neg_col[j] >= 0) tab.at(i, neg_col[j]) = -sign * lp.A(i, j);
    }
    tab.at(i, slack0 + i) = sign;
    tab.rhs(i) = sign * lp.b(i);
    if (sign < 0.0) {
      tab.at(i, art) = 1.0;
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = slack0 + i;
    }
  }

  std::vector<bool> allowed(cols, true);
  if (n_art > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
    for (int c = art0; c < cols; ++c) phase1(c) = -1.0;
    tab.set_objective(phase1);
    tab.optimize(allowed);
    if (tab.objective_value() < -1e-9) return LPResult{LPStatus::infeasible, 0.0, {}};
    // Drive remaining artificials out of the basis.
    for (int r = 0; r < m; ++r) {
      if (tab.basis()[r] < art0) continue;
      for (int c = 0; c < art0; ++c) {
        if (std::abs(tab.at(r, c)) > kPivotTol) {
          tab.pivot(r, c);
          break;
        }
      }
    }
    for (int c = art0; c < cols; ++c) allowed[c] = false;
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  for (int j = 0; j < n; ++j) {
    cost(j) = lp.c(j);
    if (neg_col[j] >= 0) cost(neg_col[j]) = -lp.c(j);
  }
  tab.set_objective(cost);
  const LPStatus status = tab.optimize(allowed);
  if (status == LPStatus::unbounded) return LPResult{LPStatus::unbounded, 0.0, {}};

  Eigen::VectorXd values = Eigen::VectorXd::Zero(cols);
  for (int r = 0; r < m; ++r) values(tab.basis()[r]) = tab.rhs(r);
  LPResult result;
  result.status = LPStatus::optimal;
  result.x.resize(n);
  for (int j = 0; j < n; ++j) result.x(j) = values(j) - (neg_col[j] >= 0 ? values(neg_col[j]) : 0.0);
  result.value = lp.c.dot(result.x);
  return result;
}

bool lp_feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double slack) {
  LinearProgram lp;
  lp.A = A;
  lp.b = b.array() + slack;
  lp.c = Eigen::VectorXd::Zero(A.cols());
  return solve_lp(lp).status == LPStatus::optimal;
}

}  // namespace hobody
