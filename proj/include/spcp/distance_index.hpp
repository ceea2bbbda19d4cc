#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spcp/formulation_spec.hpp"
#include "spcp/instance.hpp"

namespace spcp {

/// Equality rule for distances: exact when the matrix is integral, otherwise
/// |a-b| <= 1e-9 * max(1, |a|, |b|).
struct DistanceTolerance {
  bool exact = true;

  bool equal(double a, double b) const;
  bool less(double a, double b) const { return a < b && !equal(a, b); }
  bool less_equal(double a, double b) const { return a < b || equal(a, b); }
};

/// Strictly increasing distinct distances, starting at 0. Level 0 is the
/// zero distance; level k holds the (k+1)-th smallest value.
class Ladder {
 public:
  Ladder() = default;
  Ladder(std::vector<double> values, DistanceTolerance tol);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int level) const { return values_[static_cast<std::size_t>(level)]; }
  const std::vector<double>& values() const { return values_; }

  /// Level holding `v`, or -1.
  int find(double v) const;
  /// First level whose value is >= v (size() when none).
  int lower_bound(double v) const;

 private:
  std::vector<double> values_;
  DistanceTolerance tol_;
};

/// Every sorted distance ladder and rank map the covering formulations need.
///
/// Orientation: the allocation distance of client j from center i is
/// dm(i, j). The ladder of site j is the distinct values {dm(i, j) : i}, the
/// ladder of stratum s is {dm(i, j) : i in N, j in N^s}. All level indices
/// are 0-based (1-based rank r is level r-1); `kNoLevel` marks an
/// undefined entry.
struct DistanceIndex {
  static constexpr int kNoLevel = -1;

  int n = 0;
  int strata = 0;
  DistanceTolerance tol;

  Ladder global;
  std::vector<Ladder> site;     // per client j
  std::vector<Ladder> stratum;  // per stratum s

  /// level_of[i * n + j]: level of dm(i, j) in the ladder of client j.
  std::vector<int> level_of;
  /// Centers sorted by distance to client j (ties by center id).
  std::vector<std::vector<int>> centers_by_distance;
  /// closer_count[j][r]: number of centers i with dm(i, j) < site[j][r].
  std::vector<std::vector<int>> closer_count;

  /// stratum_level[s][j][r]: level in the ladder of s with value site[j][r];
  /// filled for j in N^s only.
  std::vector<std::vector<std::vector<int>>> stratum_level;
  /// site_level_at[s][i][k]: level r with site[i][r] == stratum[s][k] when i
  /// is in N^s, else kNoLevel.
  std::vector<std::vector<std::vector<int>>> site_level_at;
  /// first_level_at_least[s][i][k]: min r with site[i][r] >= stratum[s][k],
  /// or site[i].size() when the threshold exceeds every distance of i.
  std::vector<std::vector<std::vector<int>>> first_level_at_least;
  /// hits[s][k]: sites of N^s with stratum[s][k] among their levels >= 1.
  std::vector<std::vector<int>> hits;
  std::vector<int> stratum_size;

  /// cap[i]: the (n - p + 1)-th smallest distance (with multiplicities) from
  /// any site to client i. No allocation distance can exceed it.
  std::vector<double> cap;

  int site_levels(int j) const { return site[static_cast<std::size_t>(j)].size(); }
  int stratum_levels(int s) const { return stratum[static_cast<std::size_t>(s)].size(); }
  int level(int center, int client) const {
    return level_of[static_cast<std::size_t>(center) * static_cast<std::size_t>(n) +
                    static_cast<std::size_t>(client)];
  }
  /// Number of centers strictly closer to client j than site[j][r].
  int closer(int j, int r) const {
    return closer_count[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
  }
  /// Number of centers strictly closer to client j than stratum[s][k].
  int closer_than_stratum_level(int s, int j, int k) const;
};

DistanceIndex build_distance_index(const Instance& inst);

/// Analytic row counts per constraint family of one formulation, computed
/// from the index aggregates (not from a built model).
struct ConstraintCounts {
  std::map<std::string, std::int64_t> exact;
  /// Closed-form counts as usually stated in the literature, for the
  /// families where such a formula exists; these ignore that ranks start at 2.
  std::map<std::string, std::int64_t> closed_form;

  std::int64_t total() const;
};

ConstraintCounts count_constraints(const Instance& inst, const DistanceIndex& idx,
                                   const FormulationSpec& spec);

}  // namespace spcp
