#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spcp/exact_search.hpp"
#include "spcp/formulation_spec.hpp"
#include "spcp/instance.hpp"
#include "spcp/preprocess.hpp"

namespace spcp {

/// p-center instance whose clients have independent demand probabilities.
struct PpcpInstance {
  DistanceMatrix dm;
  int p = 0;
  std::vector<double> q;
};

/// Validates p >= 2, p <= n and every q_i in [0, 1].
PpcpInstance make_ppcp(DistanceMatrix dm, int p, std::vector<double> q);

/// M demand scenarios as strata with weight 1/M each. Scenarios without any
/// demand are redrawn; throws SamplingFailed when that keeps happening.
StrataSet sample_scenarios(const std::vector<double>& q, int M, std::uint64_t seed);

/// Merges identical scenarios, summing their weights (first occurrence order).
StrataSet merge_scenarios(const StrataSet& scenarios);

/// Exact expectation of the largest allocation distance over the demand
/// realizations; no demand contributes 0. Throws BadCardinality.
double expected_max_objective(const PpcpInstance& inst, const std::vector<int>& centers);

/// Enumerates all center sets; throws TooLarge beyond the cap.
Solution exact_ppcp(const PpcpInstance& inst, std::int64_t cap = kEnumerationCap);

struct SaaParams {
  int M = 10;
  int max_iters = 20;
  int window = 5;
  double tol = 1e-3;
  /// nullopt selects the combinatorial branch and bound.
  std::optional<FormulationSpec> spec;
  PreprocessMode preprocess = PreprocessMode::None;
  std::uint64_t seed = 1;
  /// Compare against exact_ppcp when C(n, p) is within this cap (0 = never).
  std::int64_t exact_cap = kEnumerationCap;
};

struct SaaIteration {
  int index = 0;
  std::uint64_t seed = 0;
  int scenarios = 0;  // distinct scenarios after merging
  bool failed = false;
  std::string error;
  double sample_value = 0;  // SpCP optimum z^M of the sample
  std::vector<int> centers;
  double exact_value = 0;  // expected_max_objective of the centers
  double running_mean = 0;
  double incumbent_value = 0;
};

struct SaaReport {
  std::vector<SaaIteration> iterations;
  std::uint64_t seed = 0;
  int M = 0;
  std::string solver;
  double mean_sample_value = 0;
  double stderr_sample_value = 0;
  std::vector<int> best_centers;
  double best_value = 0;
  bool converged = false;
  std::optional<double> exact_optimum;
  std::optional<double> gap_pct;

  std::string to_csv() const;
  std::string to_json() const;
};

SaaReport saa_run(const PpcpInstance& inst, const SaaParams& params);

}  // namespace spcp
