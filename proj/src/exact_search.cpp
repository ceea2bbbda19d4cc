#include "spcp/exact_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spcp/error.hpp"

namespace spcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Weighted objective from the per-client allocation distances `a`.
double objective_from(const Instance& inst, const std::vector<double>& a, std::vector<double>* maxima = nullptr) {
  double total = 0;
  for (int s = 0; s < inst.strata_count(); ++s) {
    double worst = 0;
    for (int j : inst.strata.members[static_cast<std::size_t>(s)]) worst = std::max(worst, a[static_cast<std::size_t>(j)]);
    if (maxima) maxima->push_back(worst);
    total += inst.strata.weights[static_cast<std::size_t>(s)] * worst;
  }
  return total;
}

std::vector<double> allocation(const Instance& inst, const std::vector<int>& centers) {
  std::vector<double> a(static_cast<std::size_t>(inst.n()), kInf);
  for (int i : centers)
    for (int j = 0; j < inst.n(); ++j) a[static_cast<std::size_t>(j)] = std::min(a[static_cast<std::size_t>(j)], inst.dm(i, j));
  return a;
}

double value_of(const Instance& inst, const std::vector<int>& centers) {
  return objective_from(inst, allocation(inst, centers));
}

// Greedy construction followed by first-improvement swaps.
std::vector<int> heuristic_centers(const Instance& inst) {
  const int n = inst.n();
  std::vector<int> sel;
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  while (static_cast<int>(sel.size()) < inst.p) {
    int best = -1;
    double best_val = kInf;
    for (int i = 0; i < n; ++i) {
      if (in[static_cast<std::size_t>(i)]) continue;
      sel.push_back(i);
      const double v = value_of(inst, sel);
      sel.pop_back();
      if (best < 0 || v < best_val) {
        best = i;
        best_val = v;
      }
    }
    sel.push_back(best);
    in[static_cast<std::size_t>(best)] = 1;
  }
  double cur = value_of(inst, sel);
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t a = 0; a < sel.size() && !improved; ++a) {
      for (int i = 0; i < n && !improved; ++i) {
        if (in[static_cast<std::size_t>(i)]) continue;
        const int old = sel[a];
        sel[a] = i;
        const double v = value_of(inst, sel);
        if (v < cur) {
          cur = v;
          in[static_cast<std::size_t>(old)] = 0;
          in[static_cast<std::size_t>(i)] = 1;
          improved = true;
        } else {
          sel[a] = old;
        }
      }
    }
  }
  std::sort(sel.begin(), sel.end());
  return sel;
}

class SubsetSearch {
 public:
  SubsetSearch(const Instance& inst, const std::vector<double>& lbs) : inst_(inst), n_(inst.n()), p_(inst.p) {
    suffix_.assign(static_cast<std::size_t>(n_ + 1), std::vector<double>(static_cast<std::size_t>(n_), kInf));
    for (int c = n_ - 1; c >= 0; --c)
      for (int j = 0; j < n_; ++j)
        suffix_[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] =
            std::min(suffix_[static_cast<std::size_t>(c) + 1][static_cast<std::size_t>(j)], inst.dm(c, j));
    lb_.assign(static_cast<std::size_t>(inst.strata_count()), 0.0);
    for (std::size_t s = 0; s < lbs.size() && s < lb_.size(); ++s) lb_[s] = snap(static_cast<int>(s), lbs[s]);
    heuristic_ = value_of(inst, heuristic_centers(inst));
  }

  Solution run() {
    std::vector<double> a(static_cast<std::size_t>(n_), kInf);
    dfs(0, a);
    Solution sol = evaluate_centers(inst_, best_);
    sol.proof = Proof::BranchBound;
    sol.nodes = nodes_;
    return sol;
  }

 private:
  // Largest distance of the stratum not above the bound: the stratum value
  // is one of these distances, so snapping keeps the bound valid.
  double snap(int s, double lb) const {
    double out = 0;
    const double limit = lb + 1e-9 * std::max(1.0, std::fabs(lb));
    for (int i = 0; i < n_; ++i)
      for (int j : inst_.strata.members[static_cast<std::size_t>(s)])
        if (inst_.dm(i, j) <= limit) out = std::max(out, inst_.dm(i, j));
    return out;
  }

  double bound(int c, const std::vector<double>& a) const {
    const auto& suf = suffix_[static_cast<std::size_t>(c)];
    double total = 0;
    for (int s = 0; s < inst_.strata_count(); ++s) {
      double worst = lb_[static_cast<std::size_t>(s)];
      for (int j : inst_.strata.members[static_cast<std::size_t>(s)])
        worst = std::max(worst, std::min(a[static_cast<std::size_t>(j)], suf[static_cast<std::size_t>(j)]));
      total += inst_.strata.weights[static_cast<std::size_t>(s)] * worst;
    }
    return total;
  }

  bool prunable(double b) const { return found_ ? b >= best_value_ : b > heuristic_; }

  void dfs(int c, std::vector<double>& a) {
    ++nodes_;
    const int chosen = static_cast<int>(chosen_.size());
    if (chosen == p_) {
      const double v = objective_from(inst_, a);
      if (!found_ || v < best_value_) {
        found_ = true;
        best_value_ = v;
        best_ = chosen_;
      }
      return;
    }
    if (n_ - c < p_ - chosen || prunable(bound(c, a))) return;

    std::vector<double> with = a;
    for (int j = 0; j < n_; ++j) with[static_cast<std::size_t>(j)] = std::min(with[static_cast<std::size_t>(j)], inst_.dm(c, j));
    chosen_.push_back(c);
    dfs(c + 1, with);
    chosen_.pop_back();
    if (n_ - c - 1 >= p_ - chosen) dfs(c + 1, a);
  }

  const Instance& inst_;
  int n_, p_;
  std::vector<std::vector<double>> suffix_;
  std::vector<double> lb_;
  double heuristic_ = kInf;
  bool found_ = false;
  double best_value_ = kInf;
  std::vector<int> chosen_, best_;
  std::int64_t nodes_ = 0;
};

}  // namespace

std::string to_string(Proof p) {
  switch (p) {
    case Proof::None: return "none";
    case Proof::Exhaustive: return "exhaustive";
    case Proof::BranchBound: return "branch_bound";
    case Proof::Milp: return "milp";
  }
  return "none";
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int t = 1; t <= k; ++t) {
    const auto num = static_cast<std::int64_t>(n - k + t);
    if (r > std::numeric_limits<std::int64_t>::max() / num) return std::numeric_limits<std::int64_t>::max();
    r = r * num / t;
  }
  return r;
}

Solution evaluate_centers(const Instance& inst, std::vector<int> centers) {
  std::sort(centers.begin(), centers.end());
  const bool distinct = std::adjacent_find(centers.begin(), centers.end()) == centers.end();
  const bool in_range = centers.empty() || (centers.front() >= 0 && centers.back() < inst.n());
  if (static_cast<int>(centers.size()) != inst.p || !distinct || !in_range) {
    throw Error(ErrorCode::BadCardinality, "need exactly p = " + std::to_string(inst.p) + " distinct sites, got " +
                                               std::to_string(centers.size()));
  }
  Solution sol;
  sol.objective = objective_from(inst, allocation(inst, centers), &sol.per_stratum_max);
  sol.centers = std::move(centers);
  return sol;
}

Solution brute_force(const Instance& inst, std::int64_t cap) {
  const int n = inst.n(), p = inst.p;
  if (binomial(n, p) > cap) {
    throw Error(ErrorCode::TooLarge, "C(" + std::to_string(n) + "," + std::to_string(p) + ") exceeds the enumeration cap");
  }
  std::vector<int> c(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) c[static_cast<std::size_t>(k)] = k;
  std::vector<int> best;
  double best_value = kInf;
  std::int64_t visited = 0;
  for (;;) {
    ++visited;
    const double v = value_of(inst, c);
    if (best.empty() || v < best_value) {
      best_value = v;
      best = c;
    }
    int k = p - 1;
    while (k >= 0 && c[static_cast<std::size_t>(k)] == n - p + k) --k;
    if (k < 0) break;
    ++c[static_cast<std::size_t>(k)];
    for (int t = k + 1; t < p; ++t) c[static_cast<std::size_t>(t)] = c[static_cast<std::size_t>(t) - 1] + 1;
  }
  Solution sol = evaluate_centers(inst, best);
  sol.proof = Proof::Exhaustive;
  sol.nodes = visited;
  return sol;
}

Solution branch_and_bound_combinatorial(const Instance& inst, const std::vector<double>& lbs) {
  return SubsetSearch(inst, lbs).run();
}

}  // namespace spcp
