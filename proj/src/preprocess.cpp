#include "spcp/preprocess.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "spcp/error.hpp"
#include "spcp/milp.hpp"

namespace spcp {

std::string to_string(PreprocessMode m) {
  switch (m) {
    case PreprocessMode::None: return "none";
    case PreprocessMode::ClassicRel: return "classic-rel";
    case PreprocessMode::Binary: return "binary";
    case PreprocessMode::BinaryStar: return "binary-star";
  }
  return "none";
}

std::optional<PreprocessMode> parse_preprocess_mode(const std::string& s) {
  for (auto m : {PreprocessMode::None, PreprocessMode::ClassicRel, PreprocessMode::Binary, PreprocessMode::BinaryStar})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

std::set<std::pair<int, int>> z_fixings(const Instance& inst, const DistanceIndex& idx) {
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < inst.n(); ++i) {
    const auto& lad = idx.site[static_cast<std::size_t>(i)];
    for (int r = 1; r < lad.size(); ++r)
      if (idx.tol.less(idx.cap[static_cast<std::size_t>(i)], lad[r])) out.emplace(i, r);
  }
  return out;
}

std::set<std::pair<int, int>> u_fixings_cap(const Instance& inst, const DistanceIndex& idx) {
  std::set<std::pair<int, int>> out;
  for (int s = 0; s < inst.strata_count(); ++s) {
    const auto& lad = idx.stratum[static_cast<std::size_t>(s)];
    for (int k = 1; k < lad.size(); ++k) {
      bool all = true;
      for (int i : inst.strata.members[static_cast<std::size_t>(s)])
        all = all && idx.tol.less(idx.cap[static_cast<std::size_t>(i)], lad[k]);
      if (all) out.emplace(s, k);
    }
  }
  return out;
}

double stratum_lb_lp(const Instance& inst, int s) {
  const auto& demand = inst.strata.members[static_cast<std::size_t>(s)];
  const int n = inst.n();
  if (static_cast<int>(demand.size()) <= inst.p) return 0;
  MilpModel m;
  std::vector<int> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = m.add_variable("y", 0, 1, false);
  const int theta = m.add_variable("theta", 0, kInfinity, false, 1);
  std::vector<Term> count;
  for (int i = 0; i < n; ++i) count.push_back({y[static_cast<std::size_t>(i)], 1});
  m.add_constraint(count, Sense::Equal, inst.p, "center_count", "center_count");
  for (int j : demand) {
    std::vector<Term> assign, radius{{theta, 1}};
    for (int i = 0; i < n; ++i) {
      const int x = m.add_variable("x", 0, 1, false);
      assign.push_back({x, 1});
      if (inst.dm(i, j) != 0) radius.push_back({x, -inst.dm(i, j)});
      m.add_constraint({{x, 1}, {y[static_cast<std::size_t>(i)], -1}}, Sense::LessEqual, 0, "open", "open");
    }
    m.add_constraint(assign, Sense::Equal, 1, "assign", "assign");
    m.add_constraint(radius, Sense::GreaterEqual, 0, "radius", "radius");
  }
  const auto res = lp_relax_solve(m);
  if (res.status != LpStatus::Optimal) throw Error(ErrorCode::NumericalFailure, "stratum LP bound did not solve");
  return std::max(0.0, res.objective);
}

namespace {

// Can p centers reach every demand site of s within `radius`?
bool coverable(const Instance& inst, const DistanceIndex& idx, const std::vector<int>& demand, double radius) {
  const int n = inst.n();
  if (static_cast<int>(demand.size()) <= inst.p) return true;
  std::vector<std::vector<int>> reach(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (std::size_t a = 0; a < demand.size(); ++a)
      if (idx.tol.less_equal(inst.dm(i, demand[a]), radius)) reach[static_cast<std::size_t>(i)].push_back(static_cast<int>(a));

  // greedy first: a cover of size <= p settles the question
  std::vector<char> covered(demand.size(), 0);
  std::size_t left = demand.size();
  for (int used = 0; used < inst.p && left > 0; ++used) {
    int best = -1;
    std::size_t gain = 0;
    for (int i = 0; i < n; ++i) {
      std::size_t g = 0;
      for (int a : reach[static_cast<std::size_t>(i)]) g += covered[static_cast<std::size_t>(a)] ? 0 : 1;
      if (g > gain) {
        gain = g;
        best = i;
      }
    }
    if (best < 0) break;
    for (int a : reach[static_cast<std::size_t>(best)]) {
      if (!covered[static_cast<std::size_t>(a)]) --left;
      covered[static_cast<std::size_t>(a)] = 1;
    }
  }
  if (left == 0) return true;

  MilpModel m;
  for (int i = 0; i < n; ++i) m.add_binary("y", 1);
  std::vector<std::vector<Term>> rows(demand.size());
  for (int i = 0; i < n; ++i)
    for (int a : reach[static_cast<std::size_t>(i)]) rows[static_cast<std::size_t>(a)].push_back({i, 1});
  for (auto& r : rows) m.add_constraint(std::move(r), Sense::GreaterEqual, 1, "cover", "cover");
  MilpLimits lim;
  lim.stop_at_or_below = inst.p;
  lim.cutoff = inst.p;
  const auto res = milp_solve(m, lim);
  return res.has_incumbent && res.incumbent_value <= inst.p + 0.5;
}

}  // namespace

double stratum_lb_binary(const Instance& inst, const DistanceIndex& idx, int s) {
  const auto& demand = inst.strata.members[static_cast<std::size_t>(s)];
  const auto& lad = idx.stratum[static_cast<std::size_t>(s)];
  int lo = 0, hi = lad.size() - 1;  // the top rung is always coverable
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (coverable(inst, idx, demand, lad[mid])) hi = mid;
    else lo = mid + 1;
  }
  return lad[lo];
}

std::vector<double> stratum_bounds(const Instance& inst, const DistanceIndex& idx, PreprocessMode mode, int jobs) {
  const int S = inst.strata_count();
  std::vector<double> out(static_cast<std::size_t>(S), 0.0);
  if (mode == PreprocessMode::None) return out;
  auto one = [&](int s) {
    return mode == PreprocessMode::ClassicRel ? stratum_lb_lp(inst, s) : stratum_lb_binary(inst, idx, s);
  };
  jobs = std::clamp(jobs, 1, std::max(1, S));
  if (jobs == 1) {
    for (int s = 0; s < S; ++s) out[static_cast<std::size_t>(s)] = one(s);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(S));
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (int s = next++; s < S; s = next++) {
        try {
          out[static_cast<std::size_t>(s)] = one(s);
        } catch (...) {
          errors[static_cast<std::size_t>(s)] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

FixSet lb_fixings(const Instance& inst, const DistanceIndex& idx, const std::vector<double>& lbs) {
  const int S = inst.strata_count();
  if (static_cast<int>(lbs.size()) != S) throw Error(ErrorCode::InconsistentBound, "one bound per stratum expected");
  FixSet fx;
  fx.z_zero = z_fixings(inst, idx);
  fx.u_zero = u_fixings_cap(inst, idx);
  fx.lower_bound = lbs;
  fx.cutoff_level.assign(static_cast<std::size_t>(S), 0);
  for (int s = 0; s < S; ++s) {
    const auto& lad = idx.stratum[static_cast<std::size_t>(s)];
    const double lb = lbs[static_cast<std::size_t>(s)];
    if (lb > lad[lad.size() - 1] + 1e-9 * std::max(1.0, std::fabs(lb))) {
      throw Error(ErrorCode::InconsistentBound, "bound of stratum " + std::to_string(s + 1) + " exceeds its largest distance");
    }
    int ks = 0;
    for (int k = 1; k < lad.size(); ++k)
      if (lad[k] <= lb + 1e-9 * std::max(1.0, std::fabs(lb))) ks = k;
    fx.cutoff_level[static_cast<std::size_t>(s)] = ks;
    for (int k = 1; k <= ks; ++k) {
      if (fx.u_zero.count({s, k})) {
        throw Error(ErrorCode::InconsistentBound, "bound of stratum " + std::to_string(s + 1) + " contradicts the cap rule");
      }
      fx.u_one.emplace(s, k);
    }
    fx.objective_offset += inst.strata.weights[static_cast<std::size_t>(s)] * lad[ks];
  }
  return fx;
}

std::optional<FixSet> preprocess(const Instance& inst, const DistanceIndex& idx, PreprocessMode mode, int jobs) {
  if (mode == PreprocessMode::None) return std::nullopt;
  return lb_fixings(inst, idx, stratum_bounds(inst, idx, mode, jobs));
}

ReductionStats reduction_stats(const DistanceIndex& idx, const FixSet& fx) {
  std::int64_t z_total = 0, u_total = 0;
  for (const auto& lad : idx.site) z_total += lad.size() - 1;
  for (const auto& lad : idx.stratum) u_total += lad.size() - 1;
  ReductionStats st;
  if (z_total > 0) st.pct_z_fixed = 100.0 * static_cast<double>(fx.z_zero.size()) / static_cast<double>(z_total);
  if (u_total > 0)
    st.pct_u_fixed = 100.0 * static_cast<double>(fx.u_zero.size() + fx.u_one.size()) / static_cast<double>(u_total);
  return st;
}

}  // namespace spcp
