#include "nsw/mpverify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nsw/common.hpp"

namespace nsw {

namespace {

constexpr double kLogClamp = 10000.0;
constexpr double kLogMargin = 1e-12;

void check_box(const Mp3Box& box) {
  if (!(box.mu_lo >= 0.0 && box.mu_lo <= box.mu_hi))
    throw std::invalid_argument("mp box: bad mu interval");
  if (!(box.k_lo >= 1.0 && box.k_lo <= box.k_hi))
    throw std::invalid_argument("mp box: bad k interval");
  if (!(box.alpha_lo >= 0.0 && box.alpha_lo <= box.alpha_hi && box.alpha_hi <= 1.0))
    throw std::invalid_argument("mp box: bad alpha interval");
  if (box.l_t < 2) throw std::invalid_argument("mp box: l_t must be at least 2");
  if (box.l_lambda < 1) throw std::invalid_argument("mp box: l_lambda must be positive");
}

double lambda_grid(int j, int l_lambda) {
  return std::log(1.0 - static_cast<double>(j) / (l_lambda + 1));
}

// Shared LP skeleton; the two modes differ only in the concentration
// exponent E_j and the right-hand side of the (k - t)^+ row.
LinearProgram build_mp_lp(const Mp3Box& box, MpMode mode) {
  check_box(box);
  int lt = box.l_t, ll = box.l_lambda;
  double kr = box.k_hi, kl = box.k_lo;
  auto t_at = [&](int i) {  // t_1 = 1, ..., t_{lt+1} = k_hi
    return 1.0 + (kr - 1.0) * static_cast<double>(i - 1) / lt;
  };

  LinearProgram lp;
  lp.c.resize(lt);
  for (int i = 1; i <= lt; ++i)
    lp.c(i - 1) = std::max(0.0, std::log(kr) - std::log(t_at(i)));

  int rows = 1 + ll + 1;
  lp.A = Eigen::MatrixXd::Zero(rows, lt);
  lp.b.resize(rows);
  lp.rel.assign(static_cast<std::size_t>(rows), LpRelation::Le);

  lp.A.row(0).setOnes();
  lp.b(0) = 1.0;

  for (int j = 1; j <= ll; ++j) {
    double lam = lambda_grid(j, ll);
    double ej;
    if (mode == MpMode::Mp3) {
      ej = std::expm1(lam) * (1.0 - box.alpha_lo) * box.mu_lo +
           (lam + 0.0001) * box.alpha_lo * box.mu_lo;
    } else {
      ej = std::expm1(lam) * box.mu_lo;
    }
    for (int i = 1; i <= lt; ++i) {
      double z = lam * t_at(i + 1) - ej;
      lp.A(j, i - 1) = z >= std::log(kLogClamp) ? kLogClamp : std::exp(z);
    }
    lp.b(j) = 1.0;
  }

  for (int i = 1; i <= lt; ++i)
    lp.A(1 + ll, i - 1) = std::max(0.0, kl - t_at(i + 1));
  if (mode == MpMode::Mp3) {
    lp.b(1 + ll) = kERatio * (1.0 - box.alpha_hi) * box.mu_hi +
                   kERatio * kERatio * box.alpha_hi * box.mu_hi;
  } else {
    lp.b(1 + ll) = kERatio * box.mu_hi;
  }
  return lp;
}

}  // namespace

LinearProgram build_mp32_lp(const Mp3Box& box) { return build_mp_lp(box, MpMode::Mp3); }

LinearProgram build_mp5_lp(const Mp3Box& box) { return build_mp_lp(box, MpMode::Mp5); }

std::optional<double> analytic_prune(MpMode mode, double mu, double k) {
  double c = mode == MpMode::Mp3 ? kERatio * kERatio : kERatio;
  if (mu <= 1.0) return std::log1p(c);
  double big = mode == MpMode::Mp3 ? 3.6e5 : 1000.0;
  double slack = mode == MpMode::Mp3 ? 0.015982 : 0.280409;
  if (mu >= big) return std::log1p(c) + slack;
  // Chord slope of ln through (1, 0) and (k, ln k) times the row-(e) mass
  // bound; ln(k)/(k-1) is decreasing, so corner evaluation stays valid.
  if (k >= std::exp(1.0)) return c * mu * std::log(k) / (k - 1.0);
  return std::nullopt;
}

TailBound tail_bound_eval(double mu, double delta, MpMode mode) {
  if (!(mu > 0.0)) throw std::invalid_argument("tail_bound_eval: mu must be positive");
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("tail_bound_eval: delta must be in (0, 1/2)");
  double c = mode == MpMode::Mp3 ? kERatio * kERatio : kERatio;
  TailBound tb;
  tb.y = std::log1p(c * mu) / std::exp(delta * delta * mu / 2.0);
  tb.combined = std::log1p(c) + 2.0 * delta + tb.y;
  return tb;
}

namespace {

// Priority-ordered box version of analytic_prune: each rule must hold at the
// box corner where its bound is largest.
std::optional<double> box_prune(MpMode mode, const Mp3Box& box) {
  double c = mode == MpMode::Mp3 ? kERatio * kERatio : kERatio;
  double big = mode == MpMode::Mp3 ? 3.6e5 : 1000.0;
  if (box.mu_hi <= 1.0) return analytic_prune(mode, box.mu_hi, 1.0);
  if (box.mu_lo >= big) return analytic_prune(mode, box.mu_lo, 1.0);
  if (box.k_lo >= std::exp(1.0))
    return c * box.mu_hi * std::log(box.k_lo) / (box.k_lo - 1.0);
  return std::nullopt;
}

struct VerifyState {
  MpMode mode;
  double target_log;
  VerifyOptions opt;
  VerifyReport report;
};

void visit(VerifyState& st, Mp3Box box, int depth) {
  st.report.max_depth_reached = std::max(st.report.max_depth_reached, depth);

  if (auto pruned = box_prune(st.mode, box)) {
    if (*pruned <= st.target_log - kLogMargin) {
      ++st.report.boxes_certified;
      return;
    }
  }

  LinearProgram lp =
      st.mode == MpMode::Mp3 ? build_mp32_lp(box) : build_mp5_lp(box);
  // A certification failure (ill-conditioned at this box size) leaves the
  // bound unknown; infinity forces a split rather than a false certificate.
  double cub = kInfRatio;
  try {
    cub = certified_upper_bound(lp);
  } catch (const std::runtime_error&) {
  }
  ++st.report.lp_solve_count;
  if (cub <= st.target_log - kLogMargin) {
    ++st.report.boxes_certified;
    st.report.max_certified_lp_bound = std::max(st.report.max_certified_lp_bound, cub);
    return;
  }
  if (depth >= st.opt.max_depth) {
    st.report.failures.push_back({box, cub});
    return;
  }

  double wmu = (box.mu_hi - box.mu_lo) / std::max(1.0, box.mu_hi);
  double wk = (box.k_hi - box.k_lo) / std::max(1.0, box.k_hi);
  double wa = st.mode == MpMode::Mp3
                  ? (box.alpha_hi - box.alpha_lo) / std::max(1.0, box.alpha_hi)
                  : 0.0;
  Mp3Box lo = box, hi = box;
  lo.l_t = hi.l_t = std::min(2 * box.l_t, st.opt.l_t_cap);
  if (wmu >= wk && wmu >= wa) {
    double mid = 0.5 * (box.mu_lo + box.mu_hi);
    lo.mu_hi = mid;
    hi.mu_lo = mid;
  } else if (wk >= wa) {
    double mid = 0.5 * (box.k_lo + box.k_hi);
    lo.k_hi = mid;
    hi.k_lo = mid;
  } else {
    double mid = 0.5 * (box.alpha_lo + box.alpha_hi);
    lo.alpha_hi = mid;
    hi.alpha_lo = mid;
  }
  visit(st, lo, depth + 1);
  visit(st, hi, depth + 1);
}

}  // namespace

VerifyReport verify_region(MpMode mode, const Mp3Box& box, double target,
                           const VerifyOptions& opt) {
  check_box(box);
  if (!(target > 1.0)) throw std::invalid_argument("verify_region: target must exceed 1");
  VerifyState st;
  st.mode = mode;
  st.target_log = std::log(target);
  st.opt = opt;
  st.report.mode = mode == MpMode::Mp3 ? "mp3" : "mp5";
  st.report.target = target;
  visit(st, box, 0);
  return st.report;
}

FeasiblePointReport check_mp3_point(const Mp3Point& pt) {
  if (pt.dist.empty()) throw std::invalid_argument("check_mp3_point: empty distribution");
  if (pt.mu_unmarked < 0.0 || pt.mu_small < 0.0)
    throw std::invalid_argument("check_mp3_point: negative mass parameters");
  double mubar = pt.mu_unmarked + pt.mu_small;

  double psum = 0.0, mean = 0.0;
  for (auto [t, p] : pt.dist) {
    if (p < 0.0) throw std::invalid_argument("check_mp3_point: negative probability");
    if (t < 1.0) throw std::runtime_error("check_mp3_point: row (b) violated, support below 1");
    psum += p;
    mean += p * t;
  }
  double viol = std::abs(psum - 1.0);
  if (viol > 1e-9) throw std::runtime_error("check_mp3_point: probabilities do not sum to 1");
  if (mean < mubar - 1e-9)
    throw std::runtime_error("check_mp3_point: row (c) violated, E[t] below mubar");
  viol = std::max(viol, std::max(0.0, mubar - mean));

  constexpr int kLl = 60;
  for (int j = 1; j <= kLl; ++j) {
    double lam = lambda_grid(j, kLl);
    double lhs = 0.0;
    for (auto [t, p] : pt.dist) lhs += p * std::exp(lam * t);
    double rhs = std::exp(std::expm1(lam) * pt.mu_unmarked + (lam + 0.0001) * pt.mu_small);
    if (lhs > rhs + 1e-12)
      throw std::runtime_error("check_mp3_point: row (d) violated at lambda_" +
                               std::to_string(j) + " = " + std::to_string(lam));
    viol = std::max(viol, std::max(0.0, lhs - rhs));
  }

  // Row (e) at equality: E[(k - t)^+] is piecewise linear and nondecreasing
  // in k; walk its segments.
  double target_e = kERatio * pt.mu_unmarked + kERatio * kERatio * pt.mu_small;
  std::vector<std::pair<double, double>> sorted = pt.dist;
  std::sort(sorted.begin(), sorted.end());
  double k = sorted.front().first;  // E[(k-t)^+] = 0 here; right for target 0
  double cum_p = 0.0, cum_pt = 0.0;
  for (std::size_t s = 0; s < sorted.size(); ++s) {
    cum_p += sorted[s].second;
    cum_pt += sorted[s].second * sorted[s].first;
    double seg_hi = s + 1 < sorted.size() ? sorted[s + 1].first
                                          : std::numeric_limits<double>::infinity();
    if (cum_p <= 0.0) {
      k = seg_hi;
      continue;
    }
    double k_cand = (target_e + cum_pt) / cum_p;
    if (k_cand <= seg_hi + 1e-12) {
      k = std::max(k, k_cand);
      break;
    }
    k = seg_hi;
  }

  FeasiblePointReport rep;
  rep.k = k;
  rep.max_violation = viol;
  for (auto [t, p] : pt.dist) rep.objective += p * std::max(0.0, std::log(k) - std::log(t));
  return rep;
}

FeasiblePointReport check_feasible_point() {
  Mp3Point pt;
  pt.dist = {{1.0673, 0.936}, {50.0, 0.064}};
  pt.mu_unmarked = 0.21;
  pt.mu_small = 1.0;
  FeasiblePointReport rep = check_mp3_point(pt);
  if (!(rep.objective > 1.2588))
    throw std::runtime_error("check_feasible_point: objective not above 1.2588");
  if (!(std::exp(rep.objective) > 3.521))
    throw std::runtime_error("check_feasible_point: exp objective not above 3.521");
  return rep;
}

}  // namespace nsw
