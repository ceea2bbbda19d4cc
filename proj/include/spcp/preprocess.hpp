#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spcp/distance_index.hpp"
#include "spcp/formulation_spec.hpp"
#include "spcp/instance.hpp"

namespace spcp {

/// How per-stratum lower bounds are obtained. BinaryStar uses the binary
/// bounds and additionally asks callers to relax the z tail.
enum class PreprocessMode { None, ClassicRel, Binary, BinaryStar };

std::string to_string(PreprocessMode m);
std::optional<PreprocessMode> parse_preprocess_mode(const std::string& s);

/// (i, r) with site[i][r] > cap[i]: those z can never be 1 at an optimum.
std::set<std::pair<int, int>> z_fixings(const Instance& inst, const DistanceIndex& idx);

/// (s, k) with stratum[s][k] > cap[i] for every i in N^s.
std::set<std::pair<int, int>> u_fixings_cap(const Instance& inst, const DistanceIndex& idx);

/// LP value of the classic p-center model with demand N^s and candidates N.
double stratum_lb_lp(const Instance& inst, int s);

/// Exact p-center optimum of stratum s, found by binary search over the
/// stratum ladder with a set-cover decision per radius.
double stratum_lb_binary(const Instance& inst, const DistanceIndex& idx, int s);

/// Bounds for every stratum, computed on `jobs` worker threads. Mode None
/// yields zeros.
std::vector<double> stratum_bounds(const Instance& inst, const DistanceIndex& idx, PreprocessMode mode,
                                   int jobs = 1);

/// Combines the cap rules with u[s][k] = 1 for every level whose distance
/// does not exceed lbs[s]. Throws InconsistentBound when a bound lies above
/// the stratum ladder or contradicts the cap rule.
FixSet lb_fixings(const Instance& inst, const DistanceIndex& idx, const std::vector<double>& lbs);

/// Full fixing phase for one mode; nullopt for mode None.
std::optional<FixSet> preprocess(const Instance& inst, const DistanceIndex& idx, PreprocessMode mode,
                                 int jobs = 1);

struct ReductionStats {
  double pct_z_fixed = 0;
  double pct_u_fixed = 0;
};

/// Percentages of fixed z and u against sum_i (G_i - 1) and sum_s (G^s - 1).
ReductionStats reduction_stats(const DistanceIndex& idx, const FixSet& fx);

}  // namespace spcp
