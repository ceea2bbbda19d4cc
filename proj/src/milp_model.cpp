#include <algorithm>
#include <cmath>

#include "spcp/error.hpp"
#include "spcp/milp.hpp"

namespace spcp {

int MilpModel::add_variable(std::string name, double lb, double ub, bool integer, double cost) {
  vars_.push_back(Variable{std::move(name), lb, ub, integer});
  cost_.push_back(cost);
  return static_cast<int>(vars_.size()) - 1;
}

void MilpModel::add_constraint(std::vector<Term> terms, Sense sense, double rhs, std::string name,
                               std::string family) {
  // merge repeated columns so every row is a proper sparse vector
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.col < b.col; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().col == t.col) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
  rows_.push_back(Constraint{std::move(merged), sense, rhs, std::move(name), std::move(family)});
}

void MilpModel::set_bounds(int col, double lb, double ub) {
  auto& v = vars_[static_cast<std::size_t>(col)];
  v.lb = lb;
  v.ub = ub;
}

std::int64_t MilpModel::rows_in_family(const std::string& family) const {
  return std::count_if(rows_.begin(), rows_.end(), [&](const Constraint& c) { return c.family == family; });
}

double MilpModel::evaluate(const std::vector<double>& x) const {
  double v = constant_;
  for (std::size_t j = 0; j < cost_.size(); ++j) v += cost_[j] * x[j];
  return v;
}

double MilpModel::max_violation(const std::vector<double>& x) const {
  double worst = 0;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    worst = std::max({worst, vars_[j].lb - x[j], x[j] - vars_[j].ub});
  }
  for (const auto& row : rows_) {
    double act = 0;
    for (const auto& t : row.terms) act += t.coef * x[static_cast<std::size_t>(t.col)];
    switch (row.sense) {
      case Sense::LessEqual: worst = std::max(worst, act - row.rhs); break;
      case Sense::GreaterEqual: worst = std::max(worst, row.rhs - act); break;
      case Sense::Equal: worst = std::max(worst, std::fabs(act - row.rhs)); break;
    }
  }
  return worst;
}

void MilpModel::validate() const {
  for (const auto& v : vars_) {
    if (std::isnan(v.lb) || std::isnan(v.ub) || v.lb > v.ub || v.lb == kInfinity || v.ub == -kInfinity) {
      throw Error(ErrorCode::InvalidModel, "variable " + v.name + " has invalid bounds");
    }
    if (v.integer && (v.lb < 0 || v.ub > 1)) {
      throw Error(ErrorCode::InvalidModel, "integer variable " + v.name + " is not binary");
    }
  }
  for (const auto& row : rows_) {
    if (!std::isfinite(row.rhs)) throw Error(ErrorCode::InvalidModel, "row " + row.name + " has a non-finite rhs");
    for (const auto& t : row.terms) {
      if (t.col < 0 || t.col >= num_vars() || !std::isfinite(t.coef)) {
        throw Error(ErrorCode::InvalidModel, "row " + row.name + " references a missing column");
      }
    }
  }
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

std::string to_string(MilpStatus s) {
  switch (s) {
    case MilpStatus::Optimal: return "Optimal";
    case MilpStatus::Feasible: return "Feasible";
    case MilpStatus::Infeasible: return "Infeasible";
    case MilpStatus::LimitReached: return "LimitReached";
    case MilpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

double lp_gap(double ip_value, double lp_value) {
  if (ip_value == 0) throw Error(ErrorCode::ZeroOptimum, "LP gap undefined for a zero optimum");
  return 100.0 * (ip_value - lp_value) / ip_value;
}

}  // namespace spcp
