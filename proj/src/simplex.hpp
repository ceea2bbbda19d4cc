#pragma once

#include <cstdint>
#include <vector>

#include "spcp/milp.hpp"

namespace spcp::detail {

/// Dense-tableau bounded-variable simplex over [A | I] with one logical
/// (slack) column per row: a_k x + s_k = b_k, with the slack bounds encoding
/// the row sense. Keeps its basis between calls so branch and bound can
/// re-solve after bound changes with the dual method.
class Simplex {
 public:
  explicit Simplex(const MilpModel& model);

  /// Composite phase 1 then phase 2 from the current basis.
  LpStatus solve_primal();
  /// Dual simplex from the current basis; falls back to the primal method
  /// when the basis is not dual feasible.
  LpStatus solve_dual();

  void set_bounds(int col, double lb, double ub);
  double lower(int col) const { return lb_[static_cast<std::size_t>(col)]; }
  double upper(int col) const { return ub_[static_cast<std::size_t>(col)]; }

  double objective() const;
  std::vector<double> values() const;
  std::int64_t iterations() const { return iterations_; }

 private:
  enum class State : unsigned char { Basic, AtLower, AtUpper, Free };

  double& at(int r, int j) { return tab_[static_cast<std::size_t>(r) * stride_ + static_cast<std::size_t>(j)]; }
  double at(int r, int j) const { return tab_[static_cast<std::size_t>(r) * stride_ + static_cast<std::size_t>(j)]; }
  double basic_value(int r) const { return x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])]; }
  double feas_tol(double bound) const;

  void place_nonbasic(int j, bool prefer_lower);
  void shift_nonbasic(int j, double new_value);
  void pivot(int r, int j);
  void reinvert();
  bool residual_small() const;
  bool primal_infeasible_basics() const;
  bool dual_feasible() const;
  void tick();

  int rows_ = 0;
  int structural_ = 0;
  int cols_ = 0;
  std::size_t stride_ = 0;

  std::vector<std::vector<std::pair<int, double>>> a_cols_;  // structural columns of A
  std::vector<double> rhs_;
  std::vector<double> tab_;
  std::vector<double> lb_, ub_, cost_, x_, d_;
  std::vector<int> basis_;
  std::vector<State> state_;

  std::int64_t iterations_ = 0;
  std::int64_t since_reinvert_ = 0;
  std::int64_t call_iterations_ = 0;
  std::int64_t degenerate_run_ = 0;
  std::vector<int> scratch_nz_;
};

}  // namespace spcp::detail
