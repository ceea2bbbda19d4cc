#pragma once

#include <optional>

#include "spcp/exact_search.hpp"
#include "spcp/formulation_spec.hpp"
#include "spcp/formulations.hpp"
#include "spcp/milp.hpp"
#include "spcp/preprocess.hpp"

namespace spcp {

struct SolveOptions {
  /// nullopt selects the combinatorial branch and bound.
  std::optional<FormulationSpec> spec;
  PreprocessMode preprocess = PreprocessMode::None;
  int jobs = 1;
  MilpLimits limits;
};

struct SolveOutcome {
  MilpStatus status = MilpStatus::Infeasible;
  bool proven = false;  // optimality proven
  bool has_solution = false;
  std::string method;  // canonical spec name after preprocessing
  Solution solution;
  double bound = 0;
  double root_lp = 0;
  std::int64_t nodes = 0;
  int rows = 0;
  int cols = 0;
  double t_prep = 0;
  double t_solv = 0;
  double t_total = 0;
};

/// Applies the preprocessing mode to the spec (BinaryStar also relaxes the
/// z tail) and returns the model that would be solved.
FormulationSpec prepared_spec(const Instance& inst, const DistanceIndex& idx, FormulationSpec spec,
                              PreprocessMode mode, int jobs = 1);

/// Full pipeline: index, preprocessing, model build and solve. The returned
/// objective is recomputed from the center set; a mismatch with the solver
/// value throws NumericalFailure.
SolveOutcome solve_spcp(const Instance& inst, const SolveOptions& opt);

}  // namespace spcp
