#include "spcp/solve.hpp"

#include <chrono>
#include <cmath>

#include "spcp/error.hpp"

namespace spcp {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

FormulationSpec prepared_spec(const Instance& inst, const DistanceIndex& idx, FormulationSpec spec,
                              PreprocessMode mode, int jobs) {
  if (mode == PreprocessMode::BinaryStar && uses_z(spec.family)) spec.relax_z_tail = true;
  spec.fixings = preprocess(inst, idx, mode, jobs);
  validate_spec(spec);
  return spec;
}

SolveOutcome solve_spcp(const Instance& inst, const SolveOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out;
  const auto idx = build_distance_index(inst);

  if (!opt.spec) {
    const auto lbs = stratum_bounds(inst, idx, opt.preprocess, opt.jobs);
    out.t_prep = seconds_since(start);
    const auto t0 = std::chrono::steady_clock::now();
    out.method = "combinatorial";
    out.solution = branch_and_bound_combinatorial(inst, lbs);
    out.t_solv = seconds_since(t0);
    out.status = MilpStatus::Optimal;
    out.proven = out.has_solution = true;
    out.bound = out.solution.objective;
    out.nodes = out.solution.nodes;
    out.t_total = seconds_since(start);
    return out;
  }

  const auto spec = prepared_spec(inst, idx, *opt.spec, opt.preprocess, opt.jobs);
  out.method = canonical_name(spec);
  const auto built = build_formulation(inst, idx, spec);
  out.rows = built.model.num_rows();
  out.cols = built.model.num_vars();
  out.t_prep = seconds_since(start);
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = milp_solve(built.model, opt.limits);
  out.t_solv = seconds_since(t0);
  out.status = res.status;
  out.proven = res.status == MilpStatus::Optimal;
  out.bound = res.best_bound;
  out.root_lp = res.root_lp_value;
  out.nodes = res.nodes;
  if (res.has_incumbent) {
    out.has_solution = true;
    out.solution = evaluate_centers(inst, extract_centers(built.vars, res.incumbent));
    out.solution.proof = out.proven ? Proof::Milp : Proof::None;
    out.solution.method = out.method;
    out.solution.nodes = res.nodes;
    const double tol = 1e-6 * std::max(1.0, std::fabs(res.incumbent_value));
    // a feasible point never undercuts the value of its center set; at a
    // proven optimum the two coincide
    const double diff = out.solution.objective - res.incumbent_value;
    if (diff > tol || (out.proven && diff < -tol)) {
      throw Error(ErrorCode::NumericalFailure, "solver value " + std::to_string(res.incumbent_value) +
                                                   " differs from the center set value " +
                                                   std::to_string(out.solution.objective));
    }
  }
  out.t_total = seconds_since(start);
  return out;
}

}  // namespace spcp
