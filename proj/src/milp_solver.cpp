#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "simplex.hpp"
#include "spcp/error.hpp"
#include "spcp/milp.hpp"

namespace spcp {

LpResult lp_relax_solve(const MilpModel& m) {
  m.validate();
  detail::Simplex lp(m);
  LpResult res;
  res.status = lp.solve_primal();
  res.iterations = lp.iterations();
  if (res.status == LpStatus::Optimal) {
    res.x = lp.values();
    res.objective = lp.objective() + m.objective_constant();
  }
  return res;
}

namespace {

struct BoundChange {
  int col;
  double lb, ub;
};

// Open nodes ordered by (bound, newest first).
using NodeKey = std::pair<double, std::int64_t>;
using OpenSet = std::map<NodeKey, std::vector<BoundChange>>;

double prune_tol(double incumbent) { return Tolerances::relative_gap * std::max(1.0, std::fabs(incumbent)); }

}  // namespace

MilpResult milp_solve(const MilpModel& m, const MilpLimits& limits) {
  m.validate();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  std::vector<int> integer_cols;
  std::vector<double> base_lb(static_cast<std::size_t>(m.num_vars())), base_ub(base_lb.size());
  for (int j = 0; j < m.num_vars(); ++j) {
    const auto& v = m.variable(j);
    base_lb[static_cast<std::size_t>(j)] = v.lb;
    base_ub[static_cast<std::size_t>(j)] = v.ub;
    if (v.integer) integer_cols.push_back(j);
  }

  MilpResult res;
  detail::Simplex lp(m);
  std::vector<double> cur_lb = base_lb, cur_ub = base_ub;
  OpenSet open;
  std::int64_t next_id = 1;
  const double constant = m.objective_constant();

  auto finish = [&](MilpStatus st) {
    res.status = st;
    res.lp_iterations = lp.iterations();
    res.wall_seconds = elapsed();
    if (st == MilpStatus::Optimal) res.best_bound = res.incumbent_value;
    return res;
  };
  auto open_bound = [&] { return open.empty() ? kInfinity : open.begin()->first.first; };
  auto check_duality = [&] {
    if (!res.has_incumbent) return;
    const double b = std::min(open_bound(), res.incumbent_value);
    if (b > res.incumbent_value + 1e-7 * std::max(1.0, std::fabs(res.incumbent_value))) {
      throw Error(ErrorCode::NumericalFailure, "branch and bound lost weak duality");
    }
  };

  // First node solves from the slack basis.
  std::vector<BoundChange> path;
  bool first = true;
  for (;;) {
    // Move the LP to the bounds of the current path.
    std::vector<double> want_lb = base_lb, want_ub = base_ub;
    for (const auto& c : path) {
      want_lb[static_cast<std::size_t>(c.col)] = c.lb;
      want_ub[static_cast<std::size_t>(c.col)] = c.ub;
    }
    for (int j : integer_cols) {
      const auto uj = static_cast<std::size_t>(j);
      if (want_lb[uj] != cur_lb[uj] || want_ub[uj] != cur_ub[uj]) {
        lp.set_bounds(j, want_lb[uj], want_ub[uj]);
        cur_lb[uj] = want_lb[uj];
        cur_ub[uj] = want_ub[uj];
      }
    }
    const LpStatus st = first ? lp.solve_primal() : lp.solve_dual();
    ++res.nodes;

    bool branch = false;
    int branch_col = -1;
    double branch_val = 0, node_value = kInfinity;
    if (first) {
      first = false;
      if (st == LpStatus::Unbounded) return finish(MilpStatus::Unbounded);
      if (st == LpStatus::Infeasible) return finish(MilpStatus::Infeasible);
      res.root_lp_value = lp.objective() + constant;
      res.best_bound = res.root_lp_value;
    }
    if (st == LpStatus::Optimal) {
      node_value = lp.objective() + constant;
      const bool over_cutoff =
          limits.cutoff && node_value > *limits.cutoff + prune_tol(*limits.cutoff);
      const bool dominated =
          res.has_incumbent && node_value >= res.incumbent_value - prune_tol(res.incumbent_value);
      if (!over_cutoff && !dominated) {
        const auto x = lp.values();
        double best_score = 0;
        int best_priority = 0;
        for (int j : integer_cols) {
          const double v = x[static_cast<std::size_t>(j)];
          const double frac = v - std::floor(v);
          const double score = std::min(frac, 1 - frac);
          if (score <= Tolerances::integrality) continue;
          const int prio = m.variable(j).branch_priority;
          if (branch_col < 0 || prio > best_priority || (prio == best_priority && score > best_score)) {
            best_score = score;
            best_priority = prio;
            branch_col = j;
            branch_val = v;
          }
        }
        if (branch_col >= 0) {
          branch = true;
        } else {
          std::vector<double> rounded = x;
          for (int j : integer_cols) rounded[static_cast<std::size_t>(j)] = std::round(rounded[static_cast<std::size_t>(j)]);
          const double value = m.evaluate(rounded);
          if (!res.has_incumbent || value < res.incumbent_value) {
            res.has_incumbent = true;
            res.incumbent_value = value;
            res.incumbent = std::move(rounded);
            const double keep_below = res.incumbent_value - prune_tol(res.incumbent_value);
            open.erase(open.lower_bound({keep_below, std::numeric_limits<std::int64_t>::min()}), open.end());
          }
          if (limits.stop_at_or_below && res.incumbent_value <= *limits.stop_at_or_below + prune_tol(*limits.stop_at_or_below)) {
            res.best_bound = std::min(open_bound(), res.incumbent_value);
            return finish(open.empty() ? MilpStatus::Optimal : MilpStatus::Feasible);
          }
        }
      }
    }
    check_duality();

    double pending = kInfinity;
    if (branch) {
      pending = node_value;
      const double frac = branch_val - std::floor(branch_val);
      BoundChange down{branch_col, cur_lb[static_cast<std::size_t>(branch_col)], std::floor(branch_val)};
      BoundChange up{branch_col, std::ceil(branch_val), cur_ub[static_cast<std::size_t>(branch_col)]};
      const bool dive_up = frac >= 0.5;
      auto other = path;
      other.push_back(dive_up ? down : up);
      open.emplace(NodeKey{node_value, -(next_id++)}, std::move(other));
      path.push_back(dive_up ? up : down);
      ++next_id;
    } else {
      if (open.empty()) break;
      auto it = open.begin();
      pending = it->first.first;
      path = std::move(it->second);
      open.erase(it);
    }

    const bool out_of_nodes = limits.node_limit >= 0 && res.nodes >= limits.node_limit;
    if (out_of_nodes || elapsed() > limits.time_limit_seconds) {
      // the node about to be solved still counts toward the bound
      res.best_bound = std::max(res.root_lp_value, std::min(open_bound(), pending));
      if (res.has_incumbent) res.best_bound = std::min(res.best_bound, res.incumbent_value);
      return finish(MilpStatus::LimitReached);
    }
  }
  if (!res.has_incumbent) return finish(MilpStatus::Infeasible);
  return finish(MilpStatus::Optimal);
}

}  // namespace spcp
