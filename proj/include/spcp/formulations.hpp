#pragma once

#include <set>
#include <vector>

#include "spcp/distance_index.hpp"
#include "spcp/formulation_spec.hpp"
#include "spcp/instance.hpp"
#include "spcp/milp.hpp"

namespace spcp {

/// Column indices of every symbol instance in a built model; -1 where the
/// symbol instance does not exist. Level indices are 0-based, so the 1-based
/// u_{sk} lives at u[s][k-1] and z_{ir} at z[i][r-1].
struct VarMap {
  Family family = Family::F1;
  int p = 0;
  std::vector<std::vector<int>> x;       // x[i][j], center i serves client j
  std::vector<int> y;                    // y[i]
  std::vector<int> theta;                // theta[s]
  std::vector<std::vector<int>> ubar;    // ubar[s][k] over the global ladder
  std::vector<std::vector<int>> utilde;  // utilde[s][k] over the stratum ladder
  std::vector<std::vector<int>> u;       // u[s][k], k >= 1
  std::vector<std::vector<int>> z;       // z[i][r], r >= 1
  double objective_offset = 0;

  bool has_u() const { return !u.empty(); }
  bool has_z() const { return !z.empty(); }
};

struct BuiltModel {
  MilpModel model;
  VarMap vars;
};

/// Builds one formulation including its linking variant, relaxations,
/// inequalities and fixings.
BuiltModel build_formulation(const Instance& inst, const DistanceIndex& idx, const FormulationSpec& spec);

/// Appends valid-inequality rows (family "cut_<name>"). Throws
/// SymbolUnavailable when the model lacks the symbols an inequality uses.
void attach_inequalities(BuiltModel& built, const Instance& inst, const DistanceIndex& idx,
                         const std::set<Inequality>& which);

/// Center set (0-based, sorted) encoded by a solution vector. Throws
/// CardinalityMismatch unless exactly p centers are found.
std::vector<int> extract_centers(const VarMap& vars, const std::vector<double>& x);

}  // namespace spcp
