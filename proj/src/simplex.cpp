#include "simplex.hpp"

#include <algorithm>
#include <cmath>

#include "spcp/error.hpp"

namespace spcp::detail {

namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-13;
constexpr std::int64_t kRefactorEvery = 400;
constexpr std::int64_t kTrustPivots = 32;

}  // namespace

Simplex::Simplex(const MilpModel& model)
    : rows_(model.num_rows()), structural_(model.num_vars()), cols_(structural_ + rows_) {
  stride_ = static_cast<std::size_t>(cols_);
  a_cols_.resize(static_cast<std::size_t>(structural_));
  rhs_.resize(static_cast<std::size_t>(rows_));
  tab_.assign(static_cast<std::size_t>(rows_) * stride_, 0.0);
  lb_.resize(static_cast<std::size_t>(cols_));
  ub_.resize(static_cast<std::size_t>(cols_));
  cost_.assign(static_cast<std::size_t>(cols_), 0.0);
  x_.assign(static_cast<std::size_t>(cols_), 0.0);
  state_.assign(static_cast<std::size_t>(cols_), State::AtLower);
  basis_.resize(static_cast<std::size_t>(rows_));

  for (int j = 0; j < structural_; ++j) {
    const auto& v = model.variable(j);
    lb_[static_cast<std::size_t>(j)] = v.lb;
    ub_[static_cast<std::size_t>(j)] = v.ub;
    cost_[static_cast<std::size_t>(j)] = model.costs()[static_cast<std::size_t>(j)];
  }
  for (int k = 0; k < rows_; ++k) {
    const auto& row = model.constraints()[static_cast<std::size_t>(k)];
    rhs_[static_cast<std::size_t>(k)] = row.rhs;
    for (const auto& t : row.terms) {
      a_cols_[static_cast<std::size_t>(t.col)].emplace_back(k, t.coef);
      at(k, t.col) = t.coef;
    }
    const int s = structural_ + k;
    at(k, s) = 1.0;
    const auto us = static_cast<std::size_t>(s);
    switch (row.sense) {
      case Sense::LessEqual: lb_[us] = 0; ub_[us] = kInfinity; break;
      case Sense::GreaterEqual: lb_[us] = -kInfinity; ub_[us] = 0; break;
      case Sense::Equal: lb_[us] = 0; ub_[us] = 0; break;
    }
    basis_[static_cast<std::size_t>(k)] = s;
    state_[us] = State::Basic;
  }
  for (int j = 0; j < structural_; ++j) place_nonbasic(j, true);
  for (int k = 0; k < rows_; ++k) {
    double act = 0;
    for (const auto& t : model.constraints()[static_cast<std::size_t>(k)].terms) {
      act += t.coef * x_[static_cast<std::size_t>(t.col)];
    }
    x_[static_cast<std::size_t>(structural_ + k)] = rhs_[static_cast<std::size_t>(k)] - act;
  }
  d_ = cost_;
}

double Simplex::feas_tol(double bound) const {
  return kPrimalTol * std::max(1.0, std::isfinite(bound) ? std::fabs(bound) : 1.0);
}

void Simplex::place_nonbasic(int j, bool prefer_lower) {
  const auto uj = static_cast<std::size_t>(j);
  const bool lo = std::isfinite(lb_[uj]), hi = std::isfinite(ub_[uj]);
  if (lo && (prefer_lower || !hi)) {
    x_[uj] = lb_[uj];
    state_[uj] = State::AtLower;
  } else if (hi) {
    x_[uj] = ub_[uj];
    state_[uj] = State::AtUpper;
  } else {
    x_[uj] = 0;
    state_[uj] = State::Free;
  }
}

void Simplex::shift_nonbasic(int j, double new_value) {
  const auto uj = static_cast<std::size_t>(j);
  const double delta = new_value - x_[uj];
  if (delta != 0) {
    for (int r = 0; r < rows_; ++r) {
      const double a = at(r, j);
      if (a != 0) x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] -= a * delta;
    }
  }
  x_[uj] = new_value;
}

void Simplex::set_bounds(int col, double lb, double ub) {
  const auto uc = static_cast<std::size_t>(col);
  lb_[uc] = lb;
  ub_[uc] = ub;
  if (state_[uc] == State::Basic) return;
  const double old = x_[uc];
  place_nonbasic(col, lb == ub || d_[uc] >= 0);
  const double target = x_[uc];
  x_[uc] = old;
  shift_nonbasic(col, target);
}

void Simplex::pivot(int r, int j) {
  double* prow = &tab_[static_cast<std::size_t>(r) * stride_];
  const double inv = 1.0 / prow[j];
  scratch_nz_.clear();
  for (int k = 0; k < cols_; ++k) {
    double v = prow[k] * inv;
    if (std::fabs(v) < kDropTol) v = 0;
    prow[k] = v;
    if (v != 0) scratch_nz_.push_back(k);
  }
  prow[j] = 1.0;
  for (int i = 0; i < rows_; ++i) {
    if (i == r) continue;
    double* row = &tab_[static_cast<std::size_t>(i) * stride_];
    const double f = row[j];
    if (f == 0) continue;
    for (int k : scratch_nz_) row[k] -= f * prow[k];
    row[j] = 0;
  }
  const double f = d_[static_cast<std::size_t>(j)];
  if (f != 0) {
    for (int k : scratch_nz_) d_[static_cast<std::size_t>(k)] -= f * prow[k];
  }
  d_[static_cast<std::size_t>(j)] = 0;

  const int leaving = basis_[static_cast<std::size_t>(r)];
  basis_[static_cast<std::size_t>(r)] = j;
  state_[static_cast<std::size_t>(j)] = State::Basic;
  (void)leaving;
}

void Simplex::tick() {
  ++iterations_;
  ++since_reinvert_;
  // per call: the basis is reused across a whole branch-and-bound tree
  const std::int64_t cap = 50LL * (rows_ + cols_) + 20000;
  if (++call_iterations_ > cap) {
    throw Error(ErrorCode::NumericalFailure, "simplex iteration cap exhausted");
  }
}

void Simplex::reinvert() {
  since_reinvert_ = 0;
  const int m = rows_;
  const auto um = static_cast<std::size_t>(m);
  if (m == 0) {
    d_ = cost_;
    return;
  }
  // Only rows not served by a basic slack need elimination: with slack rows R2
  // and structural basic columns C, B = [[M, 0], [A_C(R2), I]] and
  // B^-1 = [[M^-1, 0], [-A_C(R2) M^-1, I]] after a row/column permutation.
  std::vector<int> struct_pos;   // basis positions holding structurals
  std::vector<char> slack_row(um, 0);
  for (int r = 0; r < m; ++r) {
    int c = basis_[static_cast<std::size_t>(r)];
    if (c >= structural_) {
      slack_row[static_cast<std::size_t>(c - structural_)] = 1;
    } else {
      struct_pos.push_back(r);
    }
  }
  std::vector<int> open_rows;
  for (int k = 0; k < m; ++k)
    if (!slack_row[static_cast<std::size_t>(k)]) open_rows.push_back(k);
  const auto q = struct_pos.size();
  if (open_rows.size() != q) throw Error(ErrorCode::NumericalFailure, "basis bookkeeping mismatch");

  std::vector<int> row_slot(um, -1);
  for (std::size_t a = 0; a < q; ++a) row_slot[static_cast<std::size_t>(open_rows[a])] = static_cast<int>(a);

  // M (q x q): rows = open_rows, cols = structural basics; invert by
  // Gauss-Jordan with partial pivoting.
  std::vector<double> M(q * q, 0.0), Minv(q * q, 0.0);
  for (std::size_t b = 0; b < q; ++b) {
    int c = basis_[static_cast<std::size_t>(struct_pos[b])];
    for (auto [k, a] : a_cols_[static_cast<std::size_t>(c)]) {
      int slot = row_slot[static_cast<std::size_t>(k)];
      if (slot >= 0) M[static_cast<std::size_t>(slot) * q + b] = a;
    }
  }
  for (std::size_t a = 0; a < q; ++a) Minv[a * q + a] = 1.0;
  for (std::size_t col = 0; col < q; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < q; ++r)
      if (std::fabs(M[r * q + col]) > std::fabs(M[best * q + col])) best = r;
    if (std::fabs(M[best * q + col]) < 1e-11) throw Error(ErrorCode::NumericalFailure, "singular basis");
    if (best != col) {
      for (std::size_t k = 0; k < q; ++k) {
        std::swap(M[best * q + k], M[col * q + k]);
        std::swap(Minv[best * q + k], Minv[col * q + k]);
      }
    }
    const double inv = 1.0 / M[col * q + col];
    for (std::size_t k = 0; k < q; ++k) {
      M[col * q + k] *= inv;
      Minv[col * q + k] *= inv;
    }
    for (std::size_t r = 0; r < q; ++r) {
      if (r == col) continue;
      const double f = M[r * q + col];
      if (f == 0) continue;
      for (std::size_t k = 0; k < q; ++k) {
        M[r * q + k] -= f * M[col * q + k];
        Minv[r * q + k] -= f * Minv[col * q + k];
      }
    }
  }
  // Minv maps open-row space -> structural basic positions: row b of Minv
  // belongs to basis position struct_pos[b], column a to open_rows[a].

  // Dense B^-1 (basis position x original row).
  std::vector<double> binv(um * um, 0.0);
  for (std::size_t b = 0; b < q; ++b) {
    auto r = static_cast<std::size_t>(struct_pos[b]);
    for (std::size_t a = 0; a < q; ++a) binv[r * um + static_cast<std::size_t>(open_rows[a])] = Minv[b * q + a];
  }
  for (int r = 0; r < m; ++r) {
    int c = basis_[static_cast<std::size_t>(r)];
    if (c < structural_) continue;
    const auto k = static_cast<std::size_t>(c - structural_);
    auto ur = static_cast<std::size_t>(r);
    binv[ur * um + k] = 1.0;
    // -A_C(k) M^-1 for the slack row k
    for (std::size_t b = 0; b < q; ++b) {
      int sc = basis_[static_cast<std::size_t>(struct_pos[b])];
      double akc = 0;
      for (auto [kk, a] : a_cols_[static_cast<std::size_t>(sc)])
        if (static_cast<std::size_t>(kk) == k) akc = a;
      if (akc == 0) continue;
      for (std::size_t a = 0; a < q; ++a)
        binv[ur * um + static_cast<std::size_t>(open_rows[a])] -= akc * Minv[b * q + a];
    }
  }

  std::fill(tab_.begin(), tab_.end(), 0.0);
  for (int j = 0; j < structural_; ++j) {
    for (auto [k, a] : a_cols_[static_cast<std::size_t>(j)]) {
      for (std::size_t r = 0; r < um; ++r) {
        const double b = binv[r * um + static_cast<std::size_t>(k)];
        if (b != 0) tab_[r * stride_ + static_cast<std::size_t>(j)] += a * b;
      }
    }
  }
  for (std::size_t r = 0; r < um; ++r)
    for (std::size_t k = 0; k < um; ++k) {
      double v = binv[r * um + k];
      if (std::fabs(v) < kDropTol) v = 0;
      tab_[r * stride_ + static_cast<std::size_t>(structural_) + k] = v;
    }
  for (std::size_t r = 0; r < um; ++r) tab_[r * stride_ + static_cast<std::size_t>(basis_[r])] = 1.0;

  // x_B = B^-1 (b - N x_N)
  std::vector<double> resid(rhs_);
  for (int j = 0; j < cols_; ++j) {
    if (state_[static_cast<std::size_t>(j)] == State::Basic) continue;
    const double v = x_[static_cast<std::size_t>(j)];
    if (v == 0) continue;
    if (j < structural_) {
      for (auto [k, a] : a_cols_[static_cast<std::size_t>(j)]) resid[static_cast<std::size_t>(k)] -= a * v;
    } else {
      resid[static_cast<std::size_t>(j - structural_)] -= v;
    }
  }
  for (std::size_t r = 0; r < um; ++r) {
    double v = 0;
    for (std::size_t k = 0; k < um; ++k) v += binv[r * um + k] * resid[k];
    x_[static_cast<std::size_t>(basis_[r])] = v;
  }
  // d = c - (c_B' B^-1) [A I]
  std::vector<double> y(um, 0.0);
  for (std::size_t r = 0; r < um; ++r) {
    const double cb = cost_[static_cast<std::size_t>(basis_[r])];
    if (cb == 0) continue;
    for (std::size_t k = 0; k < um; ++k) y[k] += cb * binv[r * um + k];
  }
  for (int j = 0; j < structural_; ++j) {
    double v = cost_[static_cast<std::size_t>(j)];
    for (auto [k, a] : a_cols_[static_cast<std::size_t>(j)]) v -= y[static_cast<std::size_t>(k)] * a;
    d_[static_cast<std::size_t>(j)] = v;
  }
  for (std::size_t k = 0; k < um; ++k) d_[static_cast<std::size_t>(structural_) + k] = -y[k];
  for (std::size_t r = 0; r < um; ++r) d_[static_cast<std::size_t>(basis_[r])] = 0;
}

bool Simplex::residual_small() const {
  // cheap stand-in for a refactorization before declaring optimality
  std::vector<double> r(rhs_);
  for (int j = 0; j < structural_; ++j) {
    const double v = x_[static_cast<std::size_t>(j)];
    if (v == 0) continue;
    for (auto [k, a] : a_cols_[static_cast<std::size_t>(j)]) r[static_cast<std::size_t>(k)] -= a * v;
  }
  for (int k = 0; k < rows_; ++k) {
    const double res = r[static_cast<std::size_t>(k)] - x_[static_cast<std::size_t>(structural_ + k)];
    if (std::fabs(res) > kPrimalTol * std::max(1.0, std::fabs(rhs_[static_cast<std::size_t>(k)]))) return false;
  }
  return true;
}

bool Simplex::primal_infeasible_basics() const {
  for (int r = 0; r < rows_; ++r) {
    const auto c = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
    if (x_[c] < lb_[c] - feas_tol(lb_[c]) || x_[c] > ub_[c] + feas_tol(ub_[c])) return true;
  }
  return false;
}

bool Simplex::dual_feasible() const {
  for (int j = 0; j < cols_; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    if (lb_[uj] == ub_[uj]) continue;
    switch (state_[uj]) {
      case State::Basic: break;
      case State::AtLower: if (d_[uj] < -kDualTol) return false; break;
      case State::AtUpper: if (d_[uj] > kDualTol) return false; break;
      case State::Free: if (std::fabs(d_[uj]) > kDualTol) return false; break;
    }
  }
  return true;
}

LpStatus Simplex::solve_primal() {
  bool fresh = false;
  std::vector<double> price(static_cast<std::size_t>(cols_));
  std::vector<double> weight(static_cast<std::size_t>(rows_));
  degenerate_run_ = 0;
  call_iterations_ = 0;
  for (;;) {
    tick();
    if (since_reinvert_ >= kRefactorEvery) {
      reinvert();
      fresh = true;
    }
    bool infeasible = false;
    for (int r = 0; r < rows_; ++r) {
      const auto c = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
      double w = 0;
      if (x_[c] < lb_[c] - feas_tol(lb_[c])) w = -1;
      else if (x_[c] > ub_[c] + feas_tol(ub_[c])) w = 1;
      weight[static_cast<std::size_t>(r)] = w;
      infeasible = infeasible || w != 0;
    }
    if (infeasible) {
      std::fill(price.begin(), price.end(), 0.0);
      for (int r = 0; r < rows_; ++r) {
        const double w = weight[static_cast<std::size_t>(r)];
        if (w == 0) continue;
        const double* row = &tab_[static_cast<std::size_t>(r) * stride_];
        for (int j = 0; j < cols_; ++j) price[static_cast<std::size_t>(j)] -= w * row[j];
      }
    }
    const std::vector<double>& dj = infeasible ? price : d_;
    const bool bland = degenerate_run_ >= 10LL * std::max(rows_, 5);

    int enter = -1;
    double best = 0;
    for (int j = 0; j < cols_; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const State st = state_[uj];
      if (st == State::Basic || lb_[uj] == ub_[uj]) continue;
      const double v = dj[uj];
      double score = 0;
      if ((st == State::AtLower || st == State::Free) && v < -kDualTol) score = -v;
      if ((st == State::AtUpper || st == State::Free) && v > kDualTol) score = v;
      if (score == 0) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (score > best) {
        best = score;
        enter = j;
      }
    }
    if (enter < 0) {
      if (!fresh && (infeasible || !residual_small())) {
        reinvert();
        fresh = true;
        continue;
      }
      return infeasible ? LpStatus::Infeasible : LpStatus::Optimal;
    }
    fresh = false;
    const auto ue = static_cast<std::size_t>(enter);
    const double dir = dj[ue] < 0 ? 1.0 : -1.0;

    // Harris ratio test, pass 1: relaxed step bound.
    double tmax = kInfinity;
    for (int r = 0; r < rows_; ++r) {
      const double alpha = at(r, enter) * dir;
      if (std::fabs(alpha) < kPivotTol) continue;
      const auto c = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
      const double xb = x_[c], l = lb_[c], u = ub_[c];
      const bool below = infeasible && xb < l - feas_tol(l);
      const bool above = infeasible && xb > u + feas_tol(u);
      double lim = kInfinity;
      if (alpha > 0) {
        if (above) lim = (xb - u + feas_tol(u)) / alpha;
        else if (!below && std::isfinite(l)) lim = (xb - l + feas_tol(l)) / alpha;
      } else {
        if (below) lim = (l - xb + feas_tol(l)) / -alpha;
        else if (!above && std::isfinite(u)) lim = (u - xb + feas_tol(u)) / -alpha;
      }
      tmax = std::min(tmax, lim);
    }
    const double span = ub_[ue] - lb_[ue];
    if (!std::isfinite(tmax) && !std::isfinite(span)) {
      if (infeasible) throw Error(ErrorCode::NumericalFailure, "phase 1 found an unbounded ray");
      return LpStatus::Unbounded;
    }
    // pass 2: largest pivot among rows whose exact ratio fits.
    int leave = -1;
    double leave_alpha = 0, step = kInfinity, leave_bound = 0;
    for (int r = 0; r < rows_; ++r) {
      const double alpha = at(r, enter) * dir;
      if (std::fabs(alpha) < kPivotTol) continue;
      const auto c = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
      const double xb = x_[c], l = lb_[c], u = ub_[c];
      const bool below = infeasible && xb < l - feas_tol(l);
      const bool above = infeasible && xb > u + feas_tol(u);
      double t = kInfinity, bound = 0;
      if (alpha > 0) {
        if (above) { t = (xb - u) / alpha; bound = u; }
        else if (!below && std::isfinite(l)) { t = (xb - l) / alpha; bound = l; }
      } else {
        if (below) { t = (l - xb) / -alpha; bound = l; }
        else if (!above && std::isfinite(u)) { t = (u - xb) / -alpha; bound = u; }
      }
      if (!(t <= tmax)) continue;
      t = std::max(t, 0.0);
      bool take = leave < 0;
      if (!take) {
        if (bland) take = basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)];
        else take = std::fabs(alpha) > std::fabs(leave_alpha);
      }
      if (take) {
        leave = r;
        leave_alpha = alpha;
        step = t;
        leave_bound = bound;
      }
    }
    const bool flip = std::isfinite(span) && (leave < 0 || span <= step);
    if (flip) step = span;
    degenerate_run_ = step <= 1e-12 ? degenerate_run_ + 1 : 0;

    shift_nonbasic(enter, x_[ue] + dir * step);
    if (flip) {
      const bool to_upper = dir > 0;
      x_[ue] = to_upper ? ub_[ue] : lb_[ue];
      state_[ue] = to_upper ? State::AtUpper : State::AtLower;
      continue;
    }
    const auto out = static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)]);
    x_[out] = leave_bound;
    pivot(leave, enter);
    state_[out] = (leave_bound == lb_[out]) ? State::AtLower : State::AtUpper;
  }
}

LpStatus Simplex::solve_dual() {
  // Boxed nonbasics can always sit on the bound matching their reduced cost.
  for (int j = 0; j < cols_; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    if (state_[uj] == State::Basic || lb_[uj] == ub_[uj]) continue;
    if (state_[uj] == State::AtLower && d_[uj] < -kDualTol && std::isfinite(ub_[uj])) {
      shift_nonbasic(j, ub_[uj]);
      state_[uj] = State::AtUpper;
    } else if (state_[uj] == State::AtUpper && d_[uj] > kDualTol && std::isfinite(lb_[uj])) {
      shift_nonbasic(j, lb_[uj]);
      state_[uj] = State::AtLower;
    }
  }
  if (!dual_feasible()) return solve_primal();

  bool fresh = false;
  degenerate_run_ = 0;
  call_iterations_ = 0;
  for (;;) {
    tick();
    if (since_reinvert_ >= kRefactorEvery) {
      reinvert();
      fresh = true;
      if (!dual_feasible()) return solve_primal();
    }
    const bool bland = degenerate_run_ >= 10LL * std::max(rows_, 5);
    int leave = -1;
    double worst = 0;
    for (int r = 0; r < rows_; ++r) {
      const auto c = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
      double viol = 0;
      if (x_[c] < lb_[c] - feas_tol(lb_[c])) viol = lb_[c] - x_[c];
      else if (x_[c] > ub_[c] + feas_tol(ub_[c])) viol = x_[c] - ub_[c];
      if (viol == 0) continue;
      if (bland) {
        if (leave < 0 || basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)]) leave = r;
      } else if (viol > worst) {
        worst = viol;
        leave = r;
      }
    }
    if (leave < 0) {
      if (!fresh && !residual_small()) {
        reinvert();
        fresh = true;
        if (!dual_feasible()) return solve_primal();
        continue;
      }
      return LpStatus::Optimal;
    }
    const auto out = static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)]);
    const bool below = x_[out] < lb_[out];
    const double target = below ? lb_[out] : ub_[out];
    const double* prow = &tab_[static_cast<std::size_t>(leave) * stride_];

    auto eligible = [&](int j) {
      const auto uj = static_cast<std::size_t>(j);
      const State st = state_[uj];
      if (st == State::Basic || lb_[uj] == ub_[uj]) return false;
      const double a = prow[j];
      if (std::fabs(a) < kPivotTol) return false;
      const bool up = st == State::AtLower || st == State::Free;
      const bool down = st == State::AtUpper || st == State::Free;
      // x_out moves by -a * delta_j
      if (below) return (up && a < 0) || (down && a > 0);
      return (up && a > 0) || (down && a < 0);
    };
    double tmax = kInfinity;
    for (int j = 0; j < cols_; ++j) {
      if (!eligible(j)) continue;
      tmax = std::min(tmax, (std::fabs(d_[static_cast<std::size_t>(j)]) + kDualTol) / std::fabs(prow[j]));
    }
    int enter = -1;
    double ratio_in = 0;
    for (int j = 0; j < cols_; ++j) {
      if (!eligible(j)) continue;
      const double ratio = std::fabs(d_[static_cast<std::size_t>(j)]) / std::fabs(prow[j]);
      if (ratio > tmax) continue;
      if (enter < 0 || (!bland && std::fabs(prow[j]) > std::fabs(prow[enter]))) {
        enter = j;
        ratio_in = ratio;
      }
    }
    if (enter < 0) {
      // a recent factorization is trusted for the infeasibility row
      if (!fresh && since_reinvert_ > kTrustPivots) {
        reinvert();
        fresh = true;
        if (!dual_feasible()) return solve_primal();
        continue;
      }
      return LpStatus::Infeasible;
    }
    degenerate_run_ = ratio_in <= 1e-12 ? degenerate_run_ + 1 : 0;
    const auto ue = static_cast<std::size_t>(enter);
    const double delta = (x_[out] - target) / prow[enter];
    shift_nonbasic(enter, x_[ue] + delta);
    x_[out] = target;
    pivot(leave, enter);
    fresh = false;
    state_[out] = below ? State::AtLower : State::AtUpper;
    if (lb_[out] == ub_[out]) state_[out] = State::AtLower;
  }
}

double Simplex::objective() const {
  double v = 0;
  for (int j = 0; j < structural_; ++j) v += cost_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
  return v;
}

std::vector<double> Simplex::values() const {
  return std::vector<double>(x_.begin(), x_.begin() + structural_);
}

}  // namespace spcp::detail
