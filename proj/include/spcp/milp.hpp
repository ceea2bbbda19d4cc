#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace spcp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Term {
  int col = 0;
  double coef = 0;
};

struct Variable {
  std::string name;
  double lb = 0;
  double ub = kInfinity;
  bool integer = false;
  /// Fractional columns of the highest priority are branched on first.
  int branch_priority = 0;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0;
  std::string name;
  /// Constraint family tag used for row accounting (e.g. "level_cover").
  std::string family;
};

/// Minimization model: min c'x + constant subject to linear rows and bounds.
class MilpModel {
 public:
  int add_variable(std::string name, double lb, double ub, bool integer, double cost = 0);
  int add_binary(std::string name, double cost = 0) { return add_variable(std::move(name), 0, 1, true, cost); }
  void add_constraint(std::vector<Term> terms, Sense sense, double rhs, std::string name,
                      std::string family);

  void set_cost(int col, double cost) { cost_[static_cast<std::size_t>(col)] = cost; }
  void set_bounds(int col, double lb, double ub);
  void set_integer(int col, bool integer) { vars_[static_cast<std::size_t>(col)].integer = integer; }
  void set_branch_priority(int col, int priority) { vars_[static_cast<std::size_t>(col)].branch_priority = priority; }
  void add_objective_constant(double c) { constant_ += c; }

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<Variable>& variables() const { return vars_; }
  const Variable& variable(int col) const { return vars_[static_cast<std::size_t>(col)]; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<double>& costs() const { return cost_; }
  double objective_constant() const { return constant_; }

  std::int64_t rows_in_family(const std::string& family) const;
  double evaluate(const std::vector<double>& x) const;
  /// Largest violation of any row or bound by x.
  double max_violation(const std::vector<double>& x) const;

  /// Throws InvalidModel when a row references a missing column, a bound pair
  /// is inverted or an integer column is not binary-ranged.
  void validate() const;

 private:
  std::vector<Variable> vars_;
  std::vector<double> cost_;
  std::vector<Constraint> rows_;
  double constant_ = 0;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class MilpStatus { Optimal, Feasible, Infeasible, LimitReached, Unbounded };

std::string to_string(LpStatus s);
std::string to_string(MilpStatus s);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0;
  std::vector<double> x;
  std::int64_t iterations = 0;
};

struct MilpLimits {
  std::int64_t node_limit = -1;  // < 0: unlimited
  double time_limit_seconds = kInfinity;
  /// Stop as soon as an incumbent with value <= target is found.
  std::optional<double> stop_at_or_below;
  /// Discard nodes whose relaxation value exceeds this.
  std::optional<double> cutoff;
};

struct MilpResult {
  MilpStatus status = MilpStatus::Infeasible;
  bool has_incumbent = false;
  double incumbent_value = kInfinity;
  double best_bound = -kInfinity;
  double root_lp_value = -kInfinity;
  std::vector<double> incumbent;
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  double wall_seconds = 0;
};

struct Tolerances {
  static constexpr double feasibility = 1e-7;
  static constexpr double integrality = 1e-6;
  static constexpr double relative_gap = 1e-6;
};

/// Continuous relaxation (integrality dropped), bounded-variable primal
/// simplex from the slack basis.
LpResult lp_relax_solve(const MilpModel& m);

/// Branch and bound over the integer columns: most-fractional branching,
/// depth-first dives with best-bound backtracking. Deterministic.
MilpResult milp_solve(const MilpModel& m, const MilpLimits& limits = {});

/// 100 * (ip - lp) / ip. Throws ZeroOptimum when ip is 0.
double lp_gap(double ip_value, double lp_value);

/// Fixed-format MPS. Names longer than 8 characters are replaced by a stable
/// 8-character hash; an unresolvable collision throws NameTooLong.
void export_mps(std::ostream& out, const MilpModel& m, const std::string& model_name = "SPCP");
std::string export_mps(const MilpModel& m, const std::string& model_name = "SPCP");

}  // namespace spcp
