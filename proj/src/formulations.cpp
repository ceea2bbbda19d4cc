#include "spcp/formulations.hpp"

#include <algorithm>
#include <string>

#include "spcp/error.hpp"

namespace spcp {

namespace {

std::string nm(const char* sym, int a) { return std::string(sym) + "_" + std::to_string(a + 1); }
std::string nm(const char* sym, int a, int b) { return nm(sym, a) + "_" + std::to_string(b + 1); }
std::string nm(const char* sym, int a, int b, int c) { return nm(sym, a, b) + "_" + std::to_string(c + 1); }

class Builder {
 public:
  Builder(const Instance& inst, const DistanceIndex& idx, const FormulationSpec& spec, BuiltModel& out)
      : inst_(inst), idx_(idx), spec_(spec), m_(out.model), v_(out.vars), n_(inst.n()), S_(inst.strata_count()) {}

  void build() {
    v_.family = spec_.family;
    v_.p = inst_.p;
    switch (spec_.family) {
      case Family::F1: f1(); break;
      case Family::F2: f2(); break;
      case Family::F2prime: f2prime(); break;
      case Family::F3: add_y(); add_u(false); center_count_y(); f3(); break;
      case Family::F3mod: add_y(); add_u(false); center_count_y(); f3mod(); monotone_u(); break;
      case Family::F4: add_z(); add_theta(); z_core(); f4(); break;
      case Family::F4mod: add_z(); add_theta(); z_core(); f4mod(); break;
      case Family::F5: add_z(); add_u(spec_.relax_u); z_core(); monotone_u(); f5_link(); break;
    }
  }

 private:
  double w(int s) const { return inst_.strata.weights[static_cast<std::size_t>(s)]; }
  const std::vector<int>& members(int s) const { return inst_.strata.members[static_cast<std::size_t>(s)]; }
  const Ladder& site(int j) const { return idx_.site[static_cast<std::size_t>(j)]; }
  const Ladder& stratum(int s) const { return idx_.stratum[static_cast<std::size_t>(s)]; }
  // the first `count` centers by distance to client j
  std::vector<int> closest(int j, int count) const {
    const auto& order = idx_.centers_by_distance[static_cast<std::size_t>(j)];
    return std::vector<int>(order.begin(), order.begin() + count);
  }
  int u(int s, int k) const { return v_.u[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)]; }
  int z(int i, int r) const { return v_.z[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]; }
  int y(int i) const { return v_.y[static_cast<std::size_t>(i)]; }

  void add_y() {
    v_.y.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      v_.y[static_cast<std::size_t>(i)] = m_.add_binary(nm("y", i));
      m_.set_branch_priority(y(i), 1);
    }
  }
  void center_count_y() {
    std::vector<Term> t;
    for (int i = 0; i < n_; ++i) t.push_back({y(i), 1});
    m_.add_constraint(t, Sense::Equal, inst_.p, "center_count", "center_count");
  }
  void add_theta() {
    v_.theta.resize(static_cast<std::size_t>(S_));
    for (int s = 0; s < S_; ++s)
      v_.theta[static_cast<std::size_t>(s)] = m_.add_variable(nm("theta", s), 0, kInfinity, false, w(s));
  }
  void add_u(bool relax) {
    v_.u.resize(static_cast<std::size_t>(S_));
    for (int s = 0; s < S_; ++s) {
      const auto& lad = stratum(s);
      auto& row = v_.u[static_cast<std::size_t>(s)];
      row.assign(static_cast<std::size_t>(lad.size()), -1);
      for (int k = 1; k < lad.size(); ++k)
        row[static_cast<std::size_t>(k)] = m_.add_variable(nm("u", s, k), 0, 1, !relax, w(s) * (lad[k] - lad[k - 1]));
    }
  }
  void add_z() {
    v_.z.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      auto& row = v_.z[static_cast<std::size_t>(i)];
      row.assign(static_cast<std::size_t>(site(i).size()), -1);
      for (int r = 1; r < site(i).size(); ++r) {
        const bool integer = !(spec_.relax_z_tail && r >= 2);
        row[static_cast<std::size_t>(r)] = m_.add_variable(nm("z", i, r), 0, 1, integer);
      }
      // z_i at level 1 reads "no center at the site itself": branch on locations first
      if (site(i).size() > 1) m_.set_branch_priority(z(i, 1), 1);
    }
  }
  void monotone_u() {
    for (int s = 0; s < S_; ++s)
      for (int k = 2; k < stratum(s).size(); ++k)
        m_.add_constraint({{u(s, k), 1}, {u(s, k - 1), -1}}, Sense::LessEqual, 0, nm("monotone_u", s, k), "monotone_u");
  }

  void f1() {
    v_.x.assign(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_), -1));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) v_.x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m_.add_binary(nm("x", i, j));
    add_theta();
    auto x = [&](int i, int j) { return v_.x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    std::vector<Term> t;
    for (int i = 0; i < n_; ++i) {
      t.push_back({x(i, i), 1});
      m_.set_branch_priority(x(i, i), 1);
    }
    m_.add_constraint(t, Sense::Equal, inst_.p, "center_count", "center_count");
    for (int j = 0; j < n_; ++j) {
      t.clear();
      for (int i = 0; i < n_; ++i) t.push_back({x(i, j), 1});
      m_.add_constraint(t, Sense::Equal, 1, nm("assign", j), "assign");
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j) m_.add_constraint({{x(i, j), 1}, {x(i, i), -1}}, Sense::LessEqual, 0, nm("open", i, j), "open");
    for (int s = 0; s < S_; ++s) {
      for (int j : members(s)) {
        t.assign(1, Term{v_.theta[static_cast<std::size_t>(s)], 1});
        for (int i = 0; i < n_; ++i) t.push_back({x(i, j), -inst_.dm(i, j)});
        m_.add_constraint(t, Sense::GreaterEqual, 0, nm("stratum_max", s, j), "stratum_max");
      }
    }
  }

  void one_level(const std::vector<std::vector<int>>& vars) {
    for (int s = 0; s < S_; ++s) {
      std::vector<Term> t;
      for (int c : vars[static_cast<std::size_t>(s)]) t.push_back({c, 1});
      m_.add_constraint(t, Sense::Equal, 1, nm("one_level", s), "one_level");
    }
  }
  // sum_{k' < level} var[s][k'] <= sum of y over the `closer` nearest centers
  void level_cover_assign(const std::vector<int>& vars, int level, int j, int closer, std::string name) {
    std::vector<Term> t;
    for (int k = 0; k < level; ++k) t.push_back({vars[static_cast<std::size_t>(k)], 1});
    for (int i : closest(j, closer)) t.push_back({y(i), -1});
    m_.add_constraint(t, Sense::LessEqual, 0, std::move(name), "level_cover");
  }

  void f2() {
    add_y();
    const auto& g = idx_.global;
    v_.ubar.resize(static_cast<std::size_t>(S_));
    for (int s = 0; s < S_; ++s)
      for (int k = 0; k < g.size(); ++k)
        v_.ubar[static_cast<std::size_t>(s)].push_back(m_.add_binary(nm("ubar", s, k), w(s) * g[k]));
    center_count_y();
    one_level(v_.ubar);
    for (int s = 0; s < S_; ++s)
      for (int j : members(s))
        for (int k = 1; k < g.size(); ++k) {
          const int closer = idx_.closer(j, site(j).lower_bound(g[k]));
          level_cover_assign(v_.ubar[static_cast<std::size_t>(s)], k, j, closer, nm("level_cover", s, j, k));
        }
  }

  void f2prime() {
    add_y();
    v_.utilde.resize(static_cast<std::size_t>(S_));
    for (int s = 0; s < S_; ++s)
      for (int k = 0; k < stratum(s).size(); ++k)
        v_.utilde[static_cast<std::size_t>(s)].push_back(m_.add_binary(nm("utilde", s, k), w(s) * stratum(s)[k]));
    center_count_y();
    one_level(v_.utilde);
    for (int s = 0; s < S_; ++s)
      for (int j : members(s))
        for (int r = 1; r < site(j).size(); ++r) {
          const int level = idx_.stratum_level[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
          level_cover_assign(v_.utilde[static_cast<std::size_t>(s)], level, j, idx_.closer(j, r), nm("level_cover", s, j, r));
        }
  }

  // u + sum of y over the nearest centers >= 1
  void covered_or_reached(int ucol, int j, int closer, std::string name) {
    std::vector<Term> t{{ucol, 1}};
    for (int i : closest(j, closer)) t.push_back({y(i), 1});
    m_.add_constraint(t, Sense::GreaterEqual, 1, std::move(name), "level_cover");
  }

  void f3() {
    for (int s = 0; s < S_; ++s)
      for (int j : members(s))
        for (int k = 1; k < stratum(s).size(); ++k)
          covered_or_reached(u(s, k), j, idx_.closer_than_stratum_level(s, j, k), nm("level_cover", s, j, k));
  }

  void f3mod() {
    for (int s = 0; s < S_; ++s)
      for (int j : members(s))
        for (int r = 1; r < site(j).size(); ++r) {
          const int k = idx_.stratum_level[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
          covered_or_reached(u(s, k), j, idx_.closer(j, r), nm("level_cover", s, j, r));
        }
  }

  void z_core() {
    std::vector<Term> t;
    for (int i = 0; i < n_; ++i) t.push_back({z(i, 1), 1});
    m_.add_constraint(t, Sense::Equal, n_ - inst_.p, "z_center_count", "z_center_count");
    // sum_{closer i} (1 - z_i1) >= 1 - z_jr
    for (int j = 0; j < n_; ++j)
      for (int r = 2; r < site(j).size(); ++r) {
        const int closer = idx_.closer(j, r);
        t.assign(1, Term{z(j, r), 1});
        for (int i : closest(j, closer)) t.push_back({z(i, 1), -1});
        m_.add_constraint(t, Sense::GreaterEqual, 1 - closer, nm("site_cover", j, r), "site_cover");
      }
  }

  void f4() {
    for (int s = 0; s < S_; ++s)
      for (int j : members(s))
        for (int r = 1; r < site(j).size(); ++r)
          m_.add_constraint({{v_.theta[static_cast<std::size_t>(s)], 1}, {z(j, r), -site(j)[r]}}, Sense::GreaterEqual, 0,
                            nm("theta_level", s, j, r), "theta_level");
  }

  void f4mod() {
    for (int s = 0; s < S_; ++s)
      for (int j : members(s)) {
        std::vector<Term> t{{v_.theta[static_cast<std::size_t>(s)], 1}};
        for (int r = 1; r < site(j).size(); ++r) t.push_back({z(j, r), -(site(j)[r] - site(j)[r - 1])});
        m_.add_constraint(t, Sense::GreaterEqual, 0, nm("theta_telescope", s, j), "theta_telescope");
      }
  }

  void f5_link() {
    const char* fam = "link";
    switch (*spec_.linking) {
      case F5Linking::F55:
        for (int s = 0; s < S_; ++s)
          for (int i : members(s))
            for (int k = 1; k < stratum(s).size(); ++k) {
              const int r = idx_.site_level_at[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
              if (r >= 1) m_.add_constraint({{u(s, k), 1}, {z(i, r), -1}}, Sense::GreaterEqual, 0, nm("link", s, i, k), fam);
            }
        break;
      case F5Linking::F2_3: site_level_links("link", fam); break;
      case F5Linking::desagregada:
        for (int s = 0; s < S_; ++s)
          for (int i : members(s))
            for (int k = 1; k < stratum(s).size(); ++k) {
              const int r = first_at_least(s, i, k);
              if (r < site(i).size()) m_.add_constraint({{u(s, k), 1}, {z(i, r), -1}}, Sense::GreaterEqual, 0, nm("link", s, i, k), fam);
            }
        break;
      case F5Linking::F52:
        for (int s = 0; s < S_; ++s)
          for (int k = 1; k < stratum(s).size(); ++k) {
            std::vector<Term> t{{u(s, k), static_cast<double>(idx_.hits[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)])}};
            for (int i : members(s)) {
              const int r = idx_.site_level_at[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
              if (r >= 1) t.push_back({z(i, r), -1});
            }
            m_.add_constraint(t, Sense::GreaterEqual, 0, nm("link", s, k), fam);
          }
        break;
      case F5Linking::agg53:
        for (int s = 0; s < S_; ++s)
          for (int k = 1; k < stratum(s).size(); ++k) {
            std::vector<Term> t{{u(s, k), static_cast<double>(members(s).size())}};
            for (int i : members(s)) {
              const int r = first_at_least(s, i, k);
              if (r < site(i).size()) t.push_back({z(i, r), -1});
            }
            m_.add_constraint(t, Sense::GreaterEqual, 0, nm("link", s, k), fam);
          }
        break;
      case F5Linking::F6:
        for (int i = 0; i < n_; ++i) {
          std::vector<int> in;
          for (int s = 0; s < S_; ++s)
            if (inst_.strata.contains(s, i)) in.push_back(s);
          if (in.empty()) continue;
          for (int r = 1; r < site(i).size(); ++r) {
            std::vector<Term> t{{z(i, r), -static_cast<double>(in.size())}};
            for (int s : in) t.push_back({u(s, idx_.stratum_level[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]), 1});
            m_.add_constraint(t, Sense::GreaterEqual, 0, nm("link", i, r), fam);
          }
        }
        break;
    }
  }

 public:
  int first_at_least(int s, int i, int k) const {
    return idx_.first_level_at_least[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  }
  // u[s][level of site level r] >= z[i][r]
  void site_level_links(const char* prefix, const char* family) {
    for (int s = 0; s < S_; ++s)
      for (int i : members(s))
        for (int r = 1; r < site(i).size(); ++r) {
          const int k = idx_.stratum_level[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
          m_.add_constraint({{u(s, k), 1}, {z(i, r), -1}}, Sense::GreaterEqual, 0, nm(prefix, s, i, r), family);
        }
  }

 private:
  const Instance& inst_;
  const DistanceIndex& idx_;
  const FormulationSpec& spec_;
  MilpModel& m_;
  VarMap& v_;
  int n_, S_;
};

bool nested(const std::vector<int>& inner, const std::vector<int>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

void apply_fixings(BuiltModel& b, const Instance& inst, const DistanceIndex& idx, const FixSet& fx) {
  auto& m = b.model;
  auto& v = b.vars;
  for (const auto& key : fx.u_one) {
    if (fx.u_zero.count(key)) {
      throw Error(ErrorCode::InconsistentBound, "u_" + std::to_string(key.first + 1) + "_" + std::to_string(key.second + 1) +
                                                    " fixed to both 0 and 1");
    }
  }
  auto column = [](const std::vector<std::vector<int>>& table, std::pair<int, int> key, const char* sym) {
    const auto a = static_cast<std::size_t>(key.first);
    if (key.first < 0 || a >= table.size() || key.second < 1 ||
        static_cast<std::size_t>(key.second) >= table[a].size()) {
      throw Error(ErrorCode::IndexOutOfRange, std::string("fixing refers to a missing ") + sym + " variable");
    }
    return table[a][static_cast<std::size_t>(key.second)];
  };
  if (v.has_z()) {
    for (const auto& key : fx.z_zero) m.set_bounds(column(v.z, key, "z"), 0, 0);
  }
  if (v.has_u()) {
    for (const auto& key : fx.u_zero) m.set_bounds(column(v.u, key, "u"), 0, 0);
    double offset = 0;
    for (const auto& key : fx.u_one) {
      const int col = column(v.u, key, "u");
      m.set_bounds(col, 1, 1);
      offset += m.costs()[static_cast<std::size_t>(col)];
      m.set_cost(col, 0);
    }
    m.add_objective_constant(offset);
    v.objective_offset = offset;
  }
  (void)inst;
  (void)idx;
}

}  // namespace

BuiltModel build_formulation(const Instance& inst, const DistanceIndex& idx, const FormulationSpec& spec) {
  validate_spec(spec);
  BuiltModel out;
  Builder(inst, idx, spec, out).build();
  attach_inequalities(out, inst, idx, spec.inequalities);
  if (spec.fixings) apply_fixings(out, inst, idx, *spec.fixings);
  return out;
}

void attach_inequalities(BuiltModel& built, const Instance& inst, const DistanceIndex& idx,
                         const std::set<Inequality>& which) {
  auto& m = built.model;
  const auto& v = built.vars;
  const int n = inst.n();
  const int S = inst.strata_count();
  auto z = [&](int i, int r) { return v.z[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]; };
  auto u = [&](int s, int k) { return v.u[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)]; };
  for (auto q : which) {
    const bool need_z = q == Inequality::R1mod || q == Inequality::Restz || q == Inequality::F2_3;
    const bool need_u = q != Inequality::R1mod && q != Inequality::Restz;
    if ((need_z && !v.has_z()) || (need_u && !v.has_u())) {
      throw Error(ErrorCode::SymbolUnavailable, "inequality " + to_string(q) + " needs symbols the model lacks");
    }
    const std::string fam = "cut_" + to_string(q);
    switch (q) {
      case Inequality::R1mod:
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const int r = idx.level(j, i) + 1;
            if (r < idx.site_levels(i)) m.add_constraint({{z(i, r), 1}, {z(j, 1), -1}}, Sense::LessEqual, 0, nm("R1mod", i, j), fam);
          }
        break;
      case Inequality::Restz:
        for (int i = 0; i < n; ++i)
          for (int r = 1; r + 1 < idx.site_levels(i); ++r)
            m.add_constraint({{z(i, r), 1}, {z(i, r + 1), -1}}, Sense::GreaterEqual, 0, nm("Restz", i, r), fam);
        break;
      case Inequality::escenarios2:
      case Inequality::escenarios3:
        for (int a = 0; a < S; ++a)
          for (int b = 0; b < S; ++b) {
            if (a == b || !nested(inst.strata.members[static_cast<std::size_t>(a)], inst.strata.members[static_cast<std::size_t>(b)])) continue;
            const auto& la = idx.stratum[static_cast<std::size_t>(a)];
            const auto& lb = idx.stratum[static_cast<std::size_t>(b)];
            if (q == Inequality::escenarios2) {
              for (int k = 1; k < la.size(); ++k) {
                const int l = lb.find(la[k]);
                if (l < 1) throw Error(ErrorCode::NumericalFailure, "nested stratum ladder is not a subset");
                m.add_constraint({{u(a, k), 1}, {u(b, l), -1}}, Sense::LessEqual, 0, nm("esc2", a, b, k), fam);
              }
            } else {
              std::vector<Term> t;
              for (int k = 1; k < la.size(); ++k) t.push_back({u(a, k), 1});
              for (int l = 1; l < lb.size(); ++l) t.push_back({u(b, l), -1});
              m.add_constraint(t, Sense::LessEqual, 0, nm("esc3", a, b), fam);
            }
          }
        break;
      case Inequality::F2_3:
        for (int s = 0; s < S; ++s)
          for (int i : inst.strata.members[static_cast<std::size_t>(s)])
            for (int r = 1; r < idx.site_levels(i); ++r) {
              const int k = idx.stratum_level[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
              m.add_constraint({{u(s, k), 1}, {z(i, r), -1}}, Sense::GreaterEqual, 0, nm("F2_3", s, i, r), fam);
            }
        break;
    }
  }
}

std::vector<int> extract_centers(const VarMap& vars, const std::vector<double>& x) {
  std::vector<int> centers;
  auto val = [&](int col) { return x[static_cast<std::size_t>(col)]; };
  switch (vars.family) {
    case Family::F1:
      for (std::size_t i = 0; i < vars.x.size(); ++i)
        if (val(vars.x[i][i]) >= 0.5) centers.push_back(static_cast<int>(i));
      break;
    case Family::F2:
    case Family::F2prime:
    case Family::F3:
    case Family::F3mod:
      for (std::size_t i = 0; i < vars.y.size(); ++i)
        if (val(vars.y[i]) >= 0.5) centers.push_back(static_cast<int>(i));
      break;
    case Family::F4:
    case Family::F4mod:
    case Family::F5:
      for (std::size_t i = 0; i < vars.z.size(); ++i)
        if (val(vars.z[i][1]) <= 0.5) centers.push_back(static_cast<int>(i));
      break;
  }
  if (static_cast<int>(centers.size()) != vars.p) {
    throw Error(ErrorCode::CardinalityMismatch, "solution encodes " + std::to_string(centers.size()) +
                                                    " centers, expected " + std::to_string(vars.p));
  }
  return centers;
}

}  // namespace spcp
