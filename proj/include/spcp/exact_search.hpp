#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spcp/instance.hpp"

namespace spcp {

enum class Proof { None, Exhaustive, BranchBound, Milp };

std::string to_string(Proof p);

struct Solution {
  std::vector<int> centers;  // sorted, 0-based
  std::vector<double> per_stratum_max;
  double objective = 0;
  Proof proof = Proof::None;
  std::string method;  // formulation name for Proof::Milp
  std::int64_t nodes = 0;
};

inline constexpr std::int64_t kEnumerationCap = 2'000'000;

/// C(n, k), saturating at INT64_MAX.
std::int64_t binomial(int n, int k);

/// Objective of a center set. Throws BadCardinality unless |centers| = p
/// with distinct ids in range.
Solution evaluate_centers(const Instance& inst, std::vector<int> centers);

/// Exhaustive search in lexicographic order; the first minimizer wins.
/// Throws TooLarge when C(n, p) > cap.
Solution brute_force(const Instance& inst, std::int64_t cap = kEnumerationCap);

/// Depth-first branch and bound over center subsets in lexicographic
/// order. `lbs` are optional valid per-stratum lower bounds (empty = none).
/// Returns the same center set brute_force would.
Solution branch_and_bound_combinatorial(const Instance& inst, const std::vector<double>& lbs = {});

}  // namespace spcp
