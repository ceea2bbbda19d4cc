#include "spcp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "spcp/error.hpp"
#include "spcp/rng.hpp"

namespace spcp {

namespace {

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

// Reads exactly `count` integers from `line`; fails on trailing garbage.
bool read_ints(const std::string& line, std::int64_t* out, int count) {
  std::istringstream ss(line);
  for (int k = 0; k < count; ++k) {
    if (!(ss >> out[k])) return false;
  }
  std::string rest;
  return !(ss >> rest);
}

std::string where(int line_no, const std::string& line) {
  return "line " + std::to_string(line_no) + ": '" + line + "'";
}

}  // namespace

RawGraph parse_orlib(std::istream& in, DuplicateEdgePolicy policy) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) {
      have_header = true;
      break;
    }
  }
  std::int64_t header[3];
  if (!have_header) throw Error(ErrorCode::MalformedHeader, "empty input");
  if (!read_ints(line, header, 3) || header[0] < 1 || header[1] < 0 || header[2] < 0) {
    throw Error(ErrorCode::MalformedHeader, "expected 'n m p', got '" + line + "'");
  }
  RawGraph g;
  g.n = static_cast<int>(header[0]);
  g.p_default = static_cast<int>(header[2]);
  const std::int64_t m = header[1];

  std::map<std::pair<int, int>, std::size_t> seen;
  std::int64_t read = 0;
  while (read < m) {
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::MalformedLine, "expected " + std::to_string(m) + " edge lines, found " +
                                                std::to_string(read));
    }
    ++line_no;
    if (blank(line)) continue;
    ++read;
    std::int64_t e[3];
    if (!read_ints(line, e, 3) || e[2] < 0) {
      throw Error(ErrorCode::MalformedLine, where(line_no, line));
    }
    if (e[0] < 1 || e[0] > g.n || e[1] < 1 || e[1] > g.n) {
      throw Error(ErrorCode::EdgeIndexOutOfRange, where(line_no, line) + " with n=" + std::to_string(g.n));
    }
    if (e[0] == e[1]) throw Error(ErrorCode::MalformedLine, where(line_no, line) + " is a self loop");

    RawGraph::Edge edge{static_cast<int>(e[0]), static_cast<int>(e[1]), e[2]};
    auto [it, fresh] = seen.emplace(std::minmax(edge.i, edge.j), g.edges.size());
    if (fresh) {
      g.edges.push_back(edge);
    } else if (policy == DuplicateEdgePolicy::KeepLast) {
      g.edges[it->second] = edge;
    } else {
      throw Error(ErrorCode::DuplicateEdge, where(line_no, line) + " repeats an earlier pair");
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) throw Error(ErrorCode::MalformedLine, "trailing content at " + where(line_no, line));
  }
  return g;
}

RawGraph parse_orlib(const std::string& text, DuplicateEdgePolicy policy) {
  std::istringstream in(text);
  return parse_orlib(in, policy);
}

void write_orlib(std::ostream& out, const RawGraph& g) {
  out << g.n << ' ' << g.edges.size() << ' ' << g.p_default << '\n';
  for (const auto& e : g.edges) out << e.i << ' ' << e.j << ' ' << e.cost << '\n';
}

DistanceMatrix::DistanceMatrix(int n, std::vector<double> entries) : n_(n), d_(std::move(entries)) {
  if (n < 1 || d_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidMatrix, "matrix must be n x n with n >= 1");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = (*this)(i, j);
      if (!std::isfinite(v) || v < 0) {
        throw Error(ErrorCode::InvalidMatrix, "entry (" + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + ") is not a finite nonnegative number");
      }
      if (i == j && v != 0) {
        throw Error(ErrorCode::InvalidMatrix, "diagonal entry " + std::to_string(i + 1) + " is nonzero");
      }
      if (i != j && v == 0) {
        throw Error(ErrorCode::InvalidMatrix, "off-diagonal entry (" + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + ") is zero");
      }
      if (v != std::floor(v)) integral_ = false;
    }
  }
}

bool DistanceMatrix::symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

DistanceMatrix all_pairs_shortest(const RawGraph& g) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const auto n = static_cast<std::size_t>(g.n);
  std::vector<std::int64_t> dist(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) dist[i * n + i] = 0;
  for (const auto& e : g.edges) {
    auto a = static_cast<std::size_t>(e.i - 1), b = static_cast<std::size_t>(e.j - 1);
    dist[a * n + b] = std::min(dist[a * n + b], e.cost);
    dist[b * n + a] = std::min(dist[b * n + a], e.cost);
  }
  // Floyd-Warshall
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto dik = dist[i * n + k];
      if (dik == kInf) continue;
      auto* row = &dist[i * n];
      const auto* via = &dist[k * n];
      for (std::size_t j = 0; j < n; ++j) {
        if (via[j] != kInf && dik + via[j] < row[j]) row[j] = dik + via[j];
      }
    }
  }
  std::vector<double> out(n * n);
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    if (dist[idx] == kInf) {
      throw Error(ErrorCode::DisconnectedGraph, "no path between sites " + std::to_string(idx / n + 1) +
                                                    " and " + std::to_string(idx % n + 1));
    }
    out[idx] = static_cast<double>(dist[idx]);
  }
  return DistanceMatrix(g.n, std::move(out));
}

DistanceMatrix parse_matrix(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n < 1) throw Error(ErrorCode::MalformedHeader, "matrix file must start with n >= 1");
  std::vector<double> entries(static_cast<std::size_t>(n * n));
  for (auto& v : entries) {
    if (!(in >> v)) throw Error(ErrorCode::MalformedLine, "matrix file ends before n*n entries");
  }
  std::string rest;
  if (in >> rest) throw Error(ErrorCode::MalformedLine, "trailing content after matrix: '" + rest + "'");
  return DistanceMatrix(static_cast<int>(n), std::move(entries));
}

void write_matrix(std::ostream& out, const DistanceMatrix& dm) {
  const int n = dm.size();
  out << n << '\n';
  auto old = out.precision(17);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out << (j ? " " : "") << dm(i, j);
    out << '\n';
  }
  out.precision(old);
}

bool StrataSet::contains(int s, int site) const {
  const auto& m = members[static_cast<std::size_t>(s)];
  return std::binary_search(m.begin(), m.end(), site);
}

std::vector<double> strata_probabilities(int n, std::uint64_t seed) {
  CounterRng rng = CounterRng(seed).split(1);
  std::vector<double> q(static_cast<std::size_t>(n));
  for (auto& v : q) v = rng.uniform_open();
  return q;
}

StrataSet sample_strata(std::span<const double> q, int strata, std::uint64_t seed) {
  if (strata < 1 || q.empty()) throw Error(ErrorCode::InvalidWeights, "need S >= 1 and n >= 1");
  StrataSet out;
  const CounterRng base = CounterRng(seed).split(2);
  for (int s = 0; s < strata; ++s) {
    CounterRng rng = base.split(static_cast<std::uint64_t>(s));
    std::vector<int> members;
    for (int attempt = 0; attempt < kStrataRetryCap && members.empty(); ++attempt) {
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (rng.uniform() < q[i]) members.push_back(static_cast<int>(i));
      }
    }
    if (members.empty()) {
      throw Error(ErrorCode::StrataSamplingFailed,
                  "stratum " + std::to_string(s + 1) + " stayed empty after " +
                      std::to_string(kStrataRetryCap) + " draws");
    }
    out.members.push_back(std::move(members));
  }
  out.weights.assign(static_cast<std::size_t>(strata), 1.0 / strata);
  return out;
}

StrataSet sample_strata(int n, int strata, std::uint64_t seed) {
  auto q = strata_probabilities(n, seed);
  return sample_strata(q, strata, seed);
}

StrataSet parse_strata_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedLine, std::string("strata JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("members") || !j["members"].is_array()) {
    throw Error(ErrorCode::MalformedHeader, "strata JSON needs a 'members' array");
  }
  StrataSet out;
  try {
    for (const auto& row : j["members"]) {
      std::vector<int> m;
      for (const auto& id : row) m.push_back(id.get<int>() - 1);
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
      out.members.push_back(std::move(m));
    }
    if (j.contains("weights")) {
      out.weights = j["weights"].get<std::vector<double>>();
    } else {
      out.weights.assign(out.members.size(), out.members.empty() ? 0.0 : 1.0 / out.members.size());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedLine, std::string("strata JSON: ") + e.what());
  }
  return out;
}

std::string strata_to_json(const StrataSet& strata) {
  nlohmann::json j;
  j["weights"] = strata.weights;
  auto members = nlohmann::json::array();
  for (const auto& m : strata.members) {
    auto row = nlohmann::json::array();
    for (int v : m) row.push_back(v + 1);
    members.push_back(row);
  }
  j["members"] = members;
  return j.dump();
}

Instance build_instance(DistanceMatrix dm, StrataSet strata, int p) {
  const int n = dm.size();
  if (p < 2 || p > n) {
    throw Error(ErrorCode::InvalidP, "p=" + std::to_string(p) + " outside [2, n=" + std::to_string(n) + "]");
  }
  if (strata.members.empty()) throw Error(ErrorCode::EmptyStratum, "at least one stratum is required");
  if (strata.weights.size() != strata.members.size()) {
    throw Error(ErrorCode::InvalidWeights, "weights count differs from strata count");
  }
  double total = 0;
  for (double w : strata.weights) {
    if (!std::isfinite(w) || w < 0) throw Error(ErrorCode::InvalidWeights, "weights must be nonnegative");
    total += w;
  }
  if (!(total > 0)) throw Error(ErrorCode::InvalidWeights, "weights must have a positive sum");
  for (std::size_t s = 0; s < strata.members.size(); ++s) {
    auto& m = strata.members[s];
    if (m.empty()) throw Error(ErrorCode::EmptyStratum, "stratum " + std::to_string(s + 1) + " is empty");
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (m.front() < 0 || m.back() >= n) {
      int bad = m.front() < 0 ? m.front() : m.back();
      throw Error(ErrorCode::IndexOutOfRange, "stratum " + std::to_string(s + 1) + " references site " +
                                                  std::to_string(bad + 1) + " with n=" + std::to_string(n));
    }
  }
  return Instance{std::move(dm), std::move(strata), p};
}

RawGraph random_connected_graph(int n, int extra_edges, std::int64_t cost_lo, std::int64_t cost_hi,
                                std::uint64_t seed) {
  CounterRng rng(seed);
  RawGraph g;
  g.n = n;
  g.p_default = std::min(n, 2);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  for (int k = n - 1; k > 0; --k) {
    std::swap(order[static_cast<std::size_t>(k)],
              order[static_cast<std::size_t>(rng.uniform_int(0, k))]);
  }
  std::map<std::pair<int, int>, bool> used;
  for (int k = 1; k < n; ++k) {
    int a = order[static_cast<std::size_t>(k)];
    int b = order[static_cast<std::size_t>(rng.uniform_int(0, k - 1))];
    used[std::minmax(a, b)] = true;
    g.edges.push_back({a, b, rng.uniform_int(cost_lo, cost_hi)});
  }
  const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  int added = 0;
  while (added < extra_edges && static_cast<long long>(g.edges.size()) < max_edges) {
    int a = static_cast<int>(rng.uniform_int(1, n));
    int b = static_cast<int>(rng.uniform_int(1, n));
    if (a == b || used.count(std::minmax(a, b))) continue;
    used[std::minmax(a, b)] = true;
    g.edges.push_back({a, b, rng.uniform_int(cost_lo, cost_hi)});
    ++added;
  }
  return g;
}

}  // namespace spcp
