#pragma once

// Dense two-phase simplex with Bland's pivoting rule, sized for the small
// feasibility problems that appear in chord, covariogram and fibre computations.

#include "hobody/core.hpp"

#include <vector>

namespace hobody {

enum class LPStatus { optimal, infeasible, unbounded };

/// maximize c^T x subject to A x <= b; variables are free unless flagged nonnegative.
struct LinearProgram {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::vector<bool> nonnegative;  ///< empty means all variables free
};

struct LPResult {
  LPStatus status = LPStatus::infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
};

LPResult solve_lp(const LinearProgram& lp);

/// Feasibility test (zero objective) with constraints relaxed by `slack`.
bool lp_feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                 double slack = kGeomTol);

}  // namespace hobody
