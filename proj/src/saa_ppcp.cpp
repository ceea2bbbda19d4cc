#include "spcp/saa_ppcp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "spcp/error.hpp"
#include "spcp/rng.hpp"
#include "spcp/solve.hpp"

namespace spcp {

PpcpInstance make_ppcp(DistanceMatrix dm, int p, std::vector<double> q) {
  if (p < 2 || p > dm.size()) throw Error(ErrorCode::InvalidP, "p must satisfy 2 <= p <= n");
  if (static_cast<int>(q.size()) != dm.size()) throw Error(ErrorCode::InvalidWeights, "one probability per site expected");
  for (double v : q)
    if (!(v >= 0 && v <= 1)) throw Error(ErrorCode::InvalidWeights, "demand probabilities must lie in [0, 1]");
  return PpcpInstance{std::move(dm), p, std::move(q)};
}

StrataSet sample_scenarios(const std::vector<double>& q, int M, std::uint64_t seed) {
  if (M < 1) throw Error(ErrorCode::InvalidWeights, "sample size must be at least 1");
  try {
    return sample_strata(q, M, seed);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::StrataSamplingFailed) throw Error(ErrorCode::SamplingFailed, e.what());
    throw;
  }
}

StrataSet merge_scenarios(const StrataSet& scenarios) {
  StrataSet out;
  std::map<std::vector<int>, std::size_t> seen;
  for (int s = 0; s < scenarios.count(); ++s) {
    const auto& m = scenarios.members[static_cast<std::size_t>(s)];
    const double w = scenarios.weights[static_cast<std::size_t>(s)];
    auto [it, fresh] = seen.emplace(m, out.members.size());
    if (fresh) {
      out.members.push_back(m);
      out.weights.push_back(w);
    } else {
      out.weights[it->second] += w;
    }
  }
  return out;
}

double expected_max_objective(const PpcpInstance& inst, const std::vector<int>& centers) {
  const int n = inst.dm.size();
  std::vector<int> sorted = centers;
  std::sort(sorted.begin(), sorted.end());
  if (static_cast<int>(sorted.size()) != inst.p || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.front() < 0 || sorted.back() >= n) {
    throw Error(ErrorCode::BadCardinality, "need exactly p distinct centers");
  }
  std::vector<double> a(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  for (int i : sorted)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] = std::min(a[static_cast<std::size_t>(j)], inst.dm(i, j));
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a[static_cast<std::size_t>(x)] > a[static_cast<std::size_t>(y)]; });
  // the largest demanded distance is a_(j) exactly when j has demand and
  // every farther site has none
  double e = 0, none_before = 1;
  for (int j : order) {
    const double qj = inst.q[static_cast<std::size_t>(j)];
    e += a[static_cast<std::size_t>(j)] * qj * none_before;
    none_before *= 1 - qj;
  }
  return e;
}

Solution exact_ppcp(const PpcpInstance& inst, std::int64_t cap) {
  const int n = inst.dm.size(), p = inst.p;
  if (binomial(n, p) > cap) throw Error(ErrorCode::TooLarge, "too many center sets to enumerate");
  std::vector<int> c(static_cast<std::size_t>(p));
  std::iota(c.begin(), c.end(), 0);
  Solution best;
  best.objective = std::numeric_limits<double>::infinity();
  for (;;) {
    ++best.nodes;
    const double v = expected_max_objective(inst, c);
    if (v < best.objective) {
      best.objective = v;
      best.centers = c;
    }
    int k = p - 1;
    while (k >= 0 && c[static_cast<std::size_t>(k)] == n - p + k) --k;
    if (k < 0) break;
    ++c[static_cast<std::size_t>(k)];
    for (int t = k + 1; t < p; ++t) c[static_cast<std::size_t>(t)] = c[static_cast<std::size_t>(t) - 1] + 1;
  }
  best.proof = Proof::Exhaustive;
  return best;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string ids(const std::vector<int>& c) {
  std::string out;
  for (int i : c) out += (out.empty() ? "" : " ") + std::to_string(i + 1);
  return out;
}

}  // namespace

SaaReport saa_run(const PpcpInstance& inst, const SaaParams& params) {
  if (params.max_iters < 1 || params.window < 1 || !(params.tol >= 0)) {
    throw Error(ErrorCode::InvalidWeights, "SAA needs max_iters >= 1, window >= 1 and tol >= 0");
  }
  SaaReport rep;
  rep.seed = params.seed;
  rep.M = params.M;
  rep.solver = params.spec ? canonical_name(*params.spec) : "combinatorial";
  rep.best_value = std::numeric_limits<double>::infinity();
  const CounterRng root(params.seed);
  std::vector<double> values, means;
  SolveOptions opt;
  opt.spec = params.spec;
  opt.preprocess = params.preprocess;

  for (int k = 0; k < params.max_iters; ++k) {
    SaaIteration it;
    it.index = k + 1;
    it.seed = root.split(static_cast<std::uint64_t>(k)).next_u64();
    try {
      const auto scen = merge_scenarios(sample_scenarios(inst.q, params.M, it.seed));
      it.scenarios = scen.count();
      const auto sub = build_instance(inst.dm, scen, inst.p);
      const auto out = solve_spcp(sub, opt);
      if (!out.proven) throw Error(ErrorCode::NumericalFailure, "sample problem not solved to optimality");
      it.sample_value = out.solution.objective;
      it.centers = out.solution.centers;
      it.exact_value = expected_max_objective(inst, it.centers);
    } catch (const Error& e) {
      it.failed = true;
      it.error = e.what();
    }
    if (!it.failed) {
      values.push_back(it.sample_value);
      if (it.exact_value < rep.best_value) {
        rep.best_value = it.exact_value;
        rep.best_centers = it.centers;
      }
    }
    if (!values.empty()) {
      it.running_mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    }
    it.incumbent_value = rep.best_value;
    rep.iterations.push_back(it);
    if (it.failed) continue;
    means.push_back(it.running_mean);
    if (static_cast<int>(means.size()) >= params.window) {
      const auto first = means.end() - params.window;
      const auto [lo, hi] = std::minmax_element(first, means.end());
      if (*hi - *lo <= params.tol * std::fabs(means.back())) {
        rep.converged = true;
        break;
      }
    }
  }

  if (!values.empty()) {
    const double n = static_cast<double>(values.size());
    rep.mean_sample_value = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0;
    for (double v : values) ss += (v - rep.mean_sample_value) * (v - rep.mean_sample_value);
    rep.stderr_sample_value = values.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
  }
  if (params.exact_cap > 0 && binomial(inst.dm.size(), inst.p) <= params.exact_cap) {
    rep.exact_optimum = exact_ppcp(inst, params.exact_cap).objective;
    if (!rep.best_centers.empty()) {
      if (*rep.exact_optimum > 0) rep.gap_pct = 100 * (rep.best_value - *rep.exact_optimum) / *rep.exact_optimum;
      else if (rep.best_value <= 0) rep.gap_pct = 0.0;
    }
  }
  return rep;
}

std::string SaaReport::to_csv() const {
  std::ostringstream os;
  os << "iteration,seed,scenarios,failed,sample_value,exact_value,running_mean,incumbent_value,centers\n";
  for (const auto& it : iterations) {
    os << it.index << ',' << it.seed << ',' << it.scenarios << ',' << (it.failed ? 1 : 0) << ','
       << num(it.sample_value) << ',' << num(it.exact_value) << ',' << num(it.running_mean) << ','
       << num(it.incumbent_value) << ',' << ids(it.centers) << '\n';
  }
  return os.str();
}

std::string SaaReport::to_json() const {
  nlohmann::ordered_json j;
  j["solver"] = solver;
  j["seed"] = seed;
  j["M"] = M;
  j["iterations"] = iterations.size();
  j["failed_iterations"] = std::count_if(iterations.begin(), iterations.end(), [](const auto& it) { return it.failed; });
  j["converged"] = converged;
  j["mean_sample_value"] = mean_sample_value;
  j["stderr_sample_value"] = stderr_sample_value;
  std::vector<int> one_based;
  for (int c : best_centers) one_based.push_back(c + 1);
  j["best_centers"] = one_based;
  if (best_centers.empty()) j["best_value"] = nullptr;
  else j["best_value"] = best_value;
  if (exact_optimum) j["exact_optimum"] = *exact_optimum;
  if (gap_pct) j["gap_pct"] = *gap_pct;
  return j.dump(2) + "\n";
}

}  // namespace spcp
