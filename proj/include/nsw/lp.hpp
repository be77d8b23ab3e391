#pragma once

#include <Eigen/Dense>
#include <vector>

namespace nsw {

enum class LpRelation { Le, Eq, Ge };

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

// Maximization LP over real variables with default bounds x >= 0. Optional
// per-variable lower bounds (lower, finite) and upper bounds (upper, +inf
// entries mean unbounded); size-0 vectors mean "all defaults".
struct LinearProgram {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<LpRelation> rel;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int num_vars() const { return static_cast<int>(c.size()); }
  int num_rows() const { return static_cast<int>(b.size()); }
};

struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  double objective = 0.0;
  Eigen::VectorXd x;
  // One multiplier per row, in max-LP convention: >= 0 on Le rows, <= 0 on Ge
  // rows, free on Eq rows; excludes internal bound rows.
  Eigen::VectorXd y;
  int iterations = 0;
};

// Two-phase dense tableau simplex. Deterministic: Dantzig pricing (most
// negative reduced cost, lowest index on ties) for a bounded number of pivots,
// then Bland's rule; ratio-test ties resolve to the row whose basic variable
// has the smallest column index. On success the solution is re-verified
// primal-feasible within tol_feas with duality gap at most
// tol_gap * (1 + |objective|); any verification failure is reported as
// NumericalFailure, never as a silent wrong answer.
LpSolution solve_lp(const LinearProgram& lp, double tol_feas = 1e-9, double tol_gap = 1e-7);

// Sound upper bound on the optimum of a feasible bounded maximization LP with
// plain x >= 0 bounds: solves, re-verifies the dual vector, and returns
// dual objective + tol_feas * (1 + sum_i |b_i|). Throws if the dual fails
// re-verification or the LP is not solved to optimality.
double certified_upper_bound(const LinearProgram& lp, double tol_feas = 1e-9);

// Certification step alone, from a caller-supplied dual vector (one entry per
// row). Throws if y violates the dual sign or reduced-cost conditions by more
// than tol_feas.
double certify_dual(const LinearProgram& lp, const Eigen::VectorXd& y, double tol_feas = 1e-9);

}  // namespace nsw
