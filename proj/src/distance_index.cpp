#include "spcp/distance_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spcp/error.hpp"

namespace spcp {

bool DistanceTolerance::equal(double a, double b) const {
  if (exact) return a == b;
  return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

Ladder::Ladder(std::vector<double> values, DistanceTolerance tol) : tol_(tol) {
  std::sort(values.begin(), values.end());
  for (double v : values) {
    if (values_.empty() || !tol_.equal(values_.back(), v)) values_.push_back(v);
  }
}

int Ladder::find(double v) const {
  int k = lower_bound(v);
  if (k < size() && tol_.equal(values_[static_cast<std::size_t>(k)], v)) return k;
  return -1;
}

int Ladder::lower_bound(double v) const {
  // first level that is not strictly below v under the tolerance rule
  auto it = std::partition_point(values_.begin(), values_.end(),
                                 [&](double x) { return tol_.less(x, v); });
  return static_cast<int>(it - values_.begin());
}

int DistanceIndex::closer_than_stratum_level(int s, int j, int k) const {
  const int r = first_level_at_least[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)]
                                    [static_cast<std::size_t>(k)];
  return closer(j, r);
}

DistanceIndex build_distance_index(const Instance& inst) {
  const auto& dm = inst.dm;
  const int n = dm.size();
  const int S = inst.strata_count();
  const auto un = static_cast<std::size_t>(n);

  DistanceIndex idx;
  idx.n = n;
  idx.strata = S;
  idx.tol.exact = dm.integral();

  idx.global = Ladder(std::vector<double>(dm.entries().begin(), dm.entries().end()), idx.tol);

  idx.site.resize(un);
  idx.level_of.assign(un * un, DistanceIndex::kNoLevel);
  idx.centers_by_distance.resize(un);
  idx.closer_count.resize(un);
  idx.cap.resize(un);
  std::vector<double> column(un);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] = dm(i, j);
    idx.site[static_cast<std::size_t>(j)] = Ladder(column, idx.tol);
    const auto& lad = idx.site[static_cast<std::size_t>(j)];

    std::vector<int> histogram(static_cast<std::size_t>(lad.size()), 0);
    for (int i = 0; i < n; ++i) {
      int r = lad.find(dm(i, j));
      idx.level_of[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j)] = r;
      ++histogram[static_cast<std::size_t>(r)];
    }
    auto& closer = idx.closer_count[static_cast<std::size_t>(j)];
    closer.assign(static_cast<std::size_t>(lad.size()) + 1, 0);
    for (int r = 0; r < lad.size(); ++r) {
      closer[static_cast<std::size_t>(r) + 1] = closer[static_cast<std::size_t>(r)] + histogram[static_cast<std::size_t>(r)];
    }

    auto& order = idx.centers_by_distance[static_cast<std::size_t>(j)];
    order.resize(un);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dm(a, j) < dm(b, j); });

    std::sort(column.begin(), column.end());
    idx.cap[static_cast<std::size_t>(j)] = column[static_cast<std::size_t>(n - inst.p)];
  }

  idx.stratum.resize(static_cast<std::size_t>(S));
  idx.stratum_level.resize(static_cast<std::size_t>(S));
  idx.site_level_at.resize(static_cast<std::size_t>(S));
  idx.first_level_at_least.resize(static_cast<std::size_t>(S));
  idx.hits.resize(static_cast<std::size_t>(S));
  idx.stratum_size.resize(static_cast<std::size_t>(S));
  for (int s = 0; s < S; ++s) {
    const auto& members = inst.strata.members[static_cast<std::size_t>(s)];
    const auto us = static_cast<std::size_t>(s);
    std::vector<double> values;
    values.reserve(members.size() * un);
    for (int j : members)
      for (int i = 0; i < n; ++i) values.push_back(dm(i, j));
    idx.stratum[us] = Ladder(std::move(values), idx.tol);
    const auto& lad = idx.stratum[us];
    const auto G = static_cast<std::size_t>(lad.size());
    idx.stratum_size[us] = static_cast<int>(members.size());

    idx.stratum_level[us].assign(un, {});
    idx.site_level_at[us].assign(un, std::vector<int>(G, DistanceIndex::kNoLevel));
    idx.first_level_at_least[us].assign(un, std::vector<int>(G, 0));
    idx.hits[us].assign(G, 0);
    for (int i = 0; i < n; ++i) {
      const auto& site = idx.site[static_cast<std::size_t>(i)];
      auto& first = idx.first_level_at_least[us][static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < G; ++k) first[k] = site.lower_bound(lad[static_cast<int>(k)]);
    }
    for (int j : members) {
      const auto uj = static_cast<std::size_t>(j);
      const auto& site = idx.site[uj];
      auto& to_stratum = idx.stratum_level[us][uj];
      to_stratum.resize(static_cast<std::size_t>(site.size()));
      for (int r = 0; r < site.size(); ++r) {
        int k = lad.find(site[r]);
        to_stratum[static_cast<std::size_t>(r)] = k;
        idx.site_level_at[us][uj][static_cast<std::size_t>(k)] = r;
        if (r >= 1) ++idx.hits[us][static_cast<std::size_t>(k)];
      }
    }
  }
  return idx;
}

std::int64_t ConstraintCounts::total() const {
  std::int64_t t = 0;
  for (const auto& [_, c] : exact) t += c;
  return t;
}

namespace {

bool nested(const std::vector<int>& inner, const std::vector<int>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

ConstraintCounts count_constraints(const Instance& inst, const DistanceIndex& idx,
                                   const FormulationSpec& spec) {
  validate_spec(spec);
  const int n = idx.n;
  const int S = idx.strata;
  const auto& members = inst.strata.members;

  std::int64_t memberships = 0;     // sum_s |N^s|
  std::int64_t site_levels_in = 0;  // sum_s sum_{j in N^s} G_j
  std::int64_t stratum_steps = 0;   // sum_s |N^s| (G^s - 1)
  std::int64_t stratum_rungs = 0;   // sum_s (G^s - 1)
  std::int64_t stratum_mono = 0;    // sum_s max(G^s - 2, 0)
  for (int s = 0; s < S; ++s) {
    const auto Gs = static_cast<std::int64_t>(idx.stratum_levels(s));
    const auto size = static_cast<std::int64_t>(members[static_cast<std::size_t>(s)].size());
    memberships += size;
    stratum_steps += size * (Gs - 1);
    stratum_rungs += Gs - 1;
    stratum_mono += std::max<std::int64_t>(Gs - 2, 0);
    for (int j : members[static_cast<std::size_t>(s)]) site_levels_in += idx.site_levels(j);
  }
  std::int64_t site_cover = 0;
  for (int j = 0; j < n; ++j) site_cover += std::max(idx.site_levels(j) - 2, 0);

  ConstraintCounts c;
  auto& e = c.exact;
  auto& cf = c.closed_form;
  const auto G = static_cast<std::int64_t>(idx.global.size());
  switch (spec.family) {
    case Family::F1:
      e["center_count"] = 1;
      e["assign"] = n;
      e["open"] = static_cast<std::int64_t>(n) * (n - 1);
      e["stratum_max"] = memberships;
      break;
    case Family::F2:
      e["center_count"] = 1;
      e["one_level"] = S;
      e["level_cover"] = memberships * (G - 1);
      cf["level_cover"] = memberships * G;
      break;
    case Family::F2prime:
      e["center_count"] = 1;
      e["one_level"] = S;
      e["level_cover"] = site_levels_in - memberships;
      cf["level_cover"] = site_levels_in;
      break;
    case Family::F3:
      e["center_count"] = 1;
      e["level_cover"] = stratum_steps;
      break;
    case Family::F3mod:
      e["center_count"] = 1;
      e["level_cover"] = site_levels_in - memberships;
      e["monotone_u"] = stratum_mono;
      break;
    case Family::F4:
      e["z_center_count"] = 1;
      e["site_cover"] = site_cover;
      e["theta_level"] = site_levels_in - memberships;
      cf["theta_level"] = site_levels_in;
      break;
    case Family::F4mod:
      e["z_center_count"] = 1;
      e["site_cover"] = site_cover;
      e["theta_telescope"] = memberships;
      cf["theta_telescope"] = memberships;
      break;
    case Family::F5: {
      e["z_center_count"] = 1;
      e["site_cover"] = site_cover;
      e["monotone_u"] = stratum_mono;
      switch (*spec.linking) {
        case F5Linking::F55:
        case F5Linking::F2_3:
          e["link"] = site_levels_in - memberships;
          cf["link"] = site_levels_in - memberships;
          break;
        case F5Linking::desagregada: {
          std::int64_t rows = 0;
          for (int s = 0; s < S; ++s) {
            for (int i : members[static_cast<std::size_t>(s)]) {
              // stratum levels 1..(level of i's largest distance)
              const auto& site = idx.site[static_cast<std::size_t>(i)];
              rows += idx.stratum[static_cast<std::size_t>(s)].find(site[site.size() - 1]);
            }
          }
          e["link"] = rows;
          cf["link"] = stratum_steps;
          break;
        }
        case F5Linking::F52:
        case F5Linking::agg53:
          e["link"] = stratum_rungs;
          break;
        case F5Linking::F6: {
          std::int64_t rows = 0;
          for (int i = 0; i < n; ++i) {
            bool covered = false;
            for (int s = 0; s < S && !covered; ++s) covered = inst.strata.contains(s, i);
            if (covered) rows += idx.site_levels(i) - 1;
          }
          e["link"] = rows;
          break;
        }
      }
      break;
    }
  }

  for (auto q : spec.inequalities) {
    std::int64_t rows = 0;
    switch (q) {
      case Inequality::R1mod:
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (j != i && idx.level(j, i) <= idx.site_levels(i) - 2) ++rows;
        break;
      case Inequality::Restz: rows = site_cover; break;
      case Inequality::escenarios2:
      case Inequality::escenarios3:
        for (int a = 0; a < S; ++a)
          for (int b = 0; b < S; ++b)
            if (a != b && nested(members[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(b)]))
              rows += q == Inequality::escenarios2 ? idx.stratum_levels(a) - 1 : 1;
        break;
      case Inequality::F2_3: rows = site_levels_in - memberships; break;
    }
    e["cut_" + to_string(q)] = rows;
  }
  return c;
}

}  // namespace spcp
