#include "nsw/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEnterTol = 1e-10;
constexpr double kDenTol = 1e-10;

void require_finite(const LinearProgram& lp) {
  if (lp.A.rows() != lp.b.size() || lp.A.rows() != static_cast<Eigen::Index>(lp.rel.size()))
    throw std::invalid_argument("solve_lp: row count mismatch");
  if (lp.A.cols() != lp.c.size()) throw std::invalid_argument("solve_lp: column count mismatch");
  if (!lp.c.allFinite() || !lp.A.allFinite() || !lp.b.allFinite())
    throw std::invalid_argument("solve_lp: non-finite data");
  if (lp.lower.size() != 0 &&
      (lp.lower.size() != lp.c.size() || !lp.lower.allFinite()))
    throw std::invalid_argument("solve_lp: bad lower bounds");
  if (lp.upper.size() != 0 && lp.upper.size() != lp.c.size())
    throw std::invalid_argument("solve_lp: bad upper bounds");
}

struct Standardized {
  Eigen::MatrixXd rows;          // internal rows over shifted vars, rhs >= 0
  Eigen::VectorXd rhs0;          // internal right-hand sides before pivoting
  std::vector<LpRelation> rel;   // internal relations after sign flips
  std::vector<double> flip;      // +1/-1 per internal row, original rows only
  Eigen::VectorXd shift;         // lower bounds applied to the variables
  int num_original_rows = 0;
};

Standardized standardize(const LinearProgram& lp) {
  int n = lp.num_vars();
  int m0 = lp.num_rows();
  Standardized s;
  s.shift = lp.lower.size() == 0 ? Eigen::VectorXd::Zero(n) : lp.lower;
  s.num_original_rows = m0;

  int extra = 0;
  if (lp.upper.size() != 0) {
    for (int j = 0; j < n; ++j)
      if (lp.upper(j) < kInf) ++extra;
  }
  s.rows.setZero(m0 + extra, n);
  s.rhs0.resize(m0 + extra);
  s.rel.resize(static_cast<std::size_t>(m0 + extra));
  s.flip.assign(static_cast<std::size_t>(m0), 1.0);

  for (int i = 0; i < m0; ++i) {
    Eigen::VectorXd row = lp.A.row(i);
    double rhs = lp.b(i) - row.dot(s.shift);
    LpRelation rel = lp.rel[static_cast<std::size_t>(i)];
    if (rhs < 0.0) {
      row = -row;
      rhs = -rhs;
      if (rel == LpRelation::Le)
        rel = LpRelation::Ge;
      else if (rel == LpRelation::Ge)
        rel = LpRelation::Le;
      s.flip[static_cast<std::size_t>(i)] = -1.0;
    }
    s.rows.row(i) = row;
    s.rhs0(i) = rhs;
    s.rel[static_cast<std::size_t>(i)] = rel;
  }
  int at = m0;
  if (lp.upper.size() != 0) {
    for (int j = 0; j < n; ++j) {
      if (lp.upper(j) >= kInf) continue;
      double cap = lp.upper(j) - s.shift(j);
      s.rows(at, j) = 1.0;
      s.rhs0(at) = cap;  // negative cap means an infeasible bound pair
      s.rel[static_cast<std::size_t>(at)] = LpRelation::Le;
      ++at;
    }
  }
  return s;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol_feas, double tol_gap) {
  require_finite(lp);
  LpSolution sol;
  int n = lp.num_vars();

  Standardized st = standardize(lp);
  int m = static_cast<int>(st.rhs0.size());
  for (int i = lp.num_rows(); i < m; ++i) {
    if (st.rhs0(i) < 0.0) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
  }

  int nslack = 0, nart = 0;
  for (auto r : st.rel) {
    if (r != LpRelation::Eq) ++nslack;
    if (r != LpRelation::Le) ++nart;
  }
  int ncols = n + nslack + nart;

  Eigen::MatrixXd T(m, ncols);
  T.setZero();
  T.leftCols(n) = st.rows;
  Eigen::VectorXd rhs = st.rhs0;
  std::vector<int> basis(static_cast<std::size_t>(m), -1);
  std::vector<int> dual_col(static_cast<std::size_t>(m), -1);
  std::vector<double> dual_sign(static_cast<std::size_t>(m), 1.0);
  std::vector<char> artificial(static_cast<std::size_t>(ncols), 0);

  int sc = n, ac = n + nslack;
  for (int i = 0; i < m; ++i) {
    switch (st.rel[static_cast<std::size_t>(i)]) {
      case LpRelation::Le:
        T(i, sc) = 1.0;
        basis[static_cast<std::size_t>(i)] = sc;
        dual_col[static_cast<std::size_t>(i)] = sc;
        dual_sign[static_cast<std::size_t>(i)] = 1.0;
        ++sc;
        break;
      case LpRelation::Ge:
        T(i, sc) = -1.0;
        dual_col[static_cast<std::size_t>(i)] = sc;
        dual_sign[static_cast<std::size_t>(i)] = -1.0;
        ++sc;
        T(i, ac) = 1.0;
        basis[static_cast<std::size_t>(i)] = ac;
        artificial[static_cast<std::size_t>(ac)] = 1;
        ++ac;
        break;
      case LpRelation::Eq:
        T(i, ac) = 1.0;
        basis[static_cast<std::size_t>(i)] = ac;
        dual_col[static_cast<std::size_t>(i)] = ac;
        dual_sign[static_cast<std::size_t>(i)] = 1.0;
        artificial[static_cast<std::size_t>(ac)] = 1;
        ++ac;
        break;
    }
  }

  Eigen::VectorXd red(ncols);
  double z = 0.0;
  int iterations = 0;
  const int dantzig_cap = 5000;
  const long max_iters = 20000 + 2L * ncols + 20L * m;

  auto pivot = [&](int row, int col) {
    Eigen::RowVectorXd prow = T.row(row);
    double piv = prow(col);
    prow /= piv;
    double prhs = rhs(row) / piv;
    Eigen::VectorXd colv = T.col(col);
    colv(row) = 0.0;
    T.noalias() -= colv * prow;
    rhs.noalias() -= colv * prhs;
    T.row(row) = prow;
    rhs(row) = prhs;
    double rfac = red(col);
    red.noalias() -= rfac * prow.transpose();
    z -= rfac * prhs;
    T.col(col).setZero();
    T(row, col) = 1.0;
    red(col) = 0.0;
    basis[static_cast<std::size_t>(row)] = col;
  };

  // Runs the current (minimization) phase to optimality; false on iteration
  // exhaustion. block_artificials excludes driven-out artificial columns from
  // ever re-entering.
  auto run = [&](bool block_artificials) {
    while (true) {
      int enter = -1;
      if (iterations < dantzig_cap) {
        double best = -kEnterTol;
        for (int j = 0; j < ncols; ++j) {
          if (block_artificials && artificial[static_cast<std::size_t>(j)]) continue;
          if (red(j) < best) {
            best = red(j);
            enter = j;
          }
        }
      } else {
        for (int j = 0; j < ncols; ++j) {
          if (block_artificials && artificial[static_cast<std::size_t>(j)]) continue;
          if (red(j) < -kEnterTol) {
            enter = j;
            break;
          }
        }
      }
      if (enter < 0) return 1;  // optimal for this phase
      int leave = -1;
      double best_ratio = kInf;
      for (int i = 0; i < m; ++i) {
        double den = T(i, enter);
        if (den <= kDenTol) continue;
        double ratio = rhs(i) / den;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 &&
             (leave < 0 || basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)]))) {
          if (ratio < best_ratio) best_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) return 2;  // unbounded direction
      pivot(leave, enter);
      if (++iterations > max_iters) return 0;
    }
  };

  double scale = 1.0 + st.rhs0.cwiseAbs().sum();

  if (nart > 0) {
    // Tableau convention: z holds the negated phase objective throughout.
    red.setZero();
    z = 0.0;
    for (int j = 0; j < ncols; ++j)
      if (artificial[static_cast<std::size_t>(j)]) red(j) = 1.0;
    for (int i = 0; i < m; ++i) {
      if (!artificial[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])]) continue;
      red -= T.row(i).transpose();
      z -= rhs(i);
    }
    int rc = run(false);
    if (rc == 0) {
      sol.status = LpStatus::NumericalFailure;
      sol.iterations = iterations;
      return sol;
    }
    if (-z > tol_feas * scale) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = iterations;
      return sol;
    }
    for (int i = 0; i < m; ++i) {
      if (!artificial[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])]) continue;
      for (int j = 0; j < n + nslack; ++j) {
        if (std::abs(T(i, j)) > kDenTol) {
          pivot(i, j);
          break;
        }
      }
      // A row whose artificial cannot be pivoted out is all zero outside the
      // artificial columns; it stays basic at level zero and is inert.
    }
  }

  // Phase 2: minimize -c over the shifted variables; artificials stay blocked.
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncols);
  cost.head(n) = -lp.c;
  Eigen::VectorXd cb(m);
  for (int i = 0; i < m; ++i) cb(i) = cost(basis[static_cast<std::size_t>(i)]);
  red = cost - T.transpose() * cb;
  z = -cb.dot(rhs);
  int rc = run(true);
  sol.iterations = iterations;
  if (rc == 0) {
    sol.status = LpStatus::NumericalFailure;
    return sol;
  }
  if (rc == 2) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.x = st.shift;
  for (int i = 0; i < m; ++i) {
    int bj = basis[static_cast<std::size_t>(i)];
    if (bj < n) sol.x(bj) += rhs(i);
  }
  sol.objective = lp.c.dot(sol.x);

  sol.y.resize(lp.num_rows());
  Eigen::VectorXd y_internal(m);
  for (int i = 0; i < m; ++i)
    y_internal(i) =
        dual_sign[static_cast<std::size_t>(i)] * red(dual_col[static_cast<std::size_t>(i)]);
  for (int i = 0; i < lp.num_rows(); ++i)
    sol.y(i) = st.flip[static_cast<std::size_t>(i)] * y_internal(i);

  // Re-verify before reporting success: feasibility, dual signs, duality gap.
  bool ok = true;
  Eigen::VectorXd ax = lp.A * sol.x;
  for (int i = 0; i < lp.num_rows() && ok; ++i) {
    double slackv = lp.b(i) - ax(i);
    double tol = tol_feas * (1.0 + std::abs(lp.b(i)));
    switch (lp.rel[static_cast<std::size_t>(i)]) {
      case LpRelation::Le: ok = slackv >= -tol; break;
      case LpRelation::Ge: ok = slackv <= tol; break;
      case LpRelation::Eq: ok = std::abs(slackv) <= tol; break;
    }
    if (ok) {
      double yi = sol.y(i);
      if (lp.rel[static_cast<std::size_t>(i)] == LpRelation::Le) ok = yi >= -tol_feas * scale;
      if (lp.rel[static_cast<std::size_t>(i)] == LpRelation::Ge) ok = yi <= tol_feas * scale;
    }
  }
  for (int j = 0; j < n && ok; ++j) {
    double lo = st.shift(j);
    if (sol.x(j) < lo - tol_feas * (1.0 + std::abs(lo))) ok = false;
    if (lp.upper.size() != 0 && lp.upper(j) < kInf &&
        sol.x(j) > lp.upper(j) + tol_feas * (1.0 + std::abs(lp.upper(j))))
      ok = false;
  }
  if (ok) {
    double dual_obj = y_internal.dot(st.rhs0) + lp.c.dot(st.shift);
    if (std::abs(dual_obj - sol.objective) > tol_gap * (1.0 + std::abs(sol.objective))) ok = false;
  }
  sol.status = ok ? LpStatus::Optimal : LpStatus::NumericalFailure;
  return sol;
}

double certify_dual(const LinearProgram& lp, const Eigen::VectorXd& y, double tol_feas) {
  require_finite(lp);
  if (lp.lower.size() != 0 && lp.lower.cwiseAbs().maxCoeff() > 0.0)
    throw std::invalid_argument("certify_dual: requires plain x >= 0 bounds");
  if (lp.upper.size() != 0 && lp.upper.minCoeff() < kInf)
    throw std::invalid_argument("certify_dual: requires plain x >= 0 bounds");
  if (y.size() != lp.b.size()) throw std::invalid_argument("certify_dual: dual size mismatch");
  if (!y.allFinite()) throw std::runtime_error("certify_dual: non-finite dual");

  // Clamp the multipliers onto the dual cone; reject if that moves any entry
  // by more than tol_feas, then check reduced costs with the clamped vector so
  // the certificate itself is exactly sign-feasible.
  Eigen::VectorXd yc = y;
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (lp.rel[static_cast<std::size_t>(i)] == LpRelation::Le && yc(i) < 0.0) {
      if (yc(i) < -tol_feas) throw std::runtime_error("certify_dual: dual sign violation");
      yc(i) = 0.0;
    }
    if (lp.rel[static_cast<std::size_t>(i)] == LpRelation::Ge && yc(i) > 0.0) {
      if (yc(i) > tol_feas) throw std::runtime_error("certify_dual: dual sign violation");
      yc(i) = 0.0;
    }
  }
  Eigen::VectorXd reduced = lp.c - lp.A.transpose() * yc;
  if (reduced.maxCoeff() > tol_feas)
    throw std::runtime_error("certify_dual: reduced cost violation");
  return yc.dot(lp.b) + tol_feas * (1.0 + lp.b.cwiseAbs().sum());
}

double certified_upper_bound(const LinearProgram& lp, double tol_feas) {
  LpSolution sol = solve_lp(lp, tol_feas);
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("certified_upper_bound: LP not solved to optimality");
  return certify_dual(lp, sol.y, tol_feas);
}

}  // namespace nsw
