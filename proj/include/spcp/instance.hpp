#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spcp {

/// Edge list as read from an ORLIB p-median file. Site ids are 1-based, as in
/// the file.
struct RawGraph {
  struct Edge {
    int i = 0;
    int j = 0;
    std::int64_t cost = 0;
    bool operator==(const Edge&) const = default;
  };

  int n = 0;
  int p_default = 0;
  std::vector<Edge> edges;
};

enum class DuplicateEdgePolicy { Reject, KeepLast };

RawGraph parse_orlib(std::istream& in, DuplicateEdgePolicy policy = DuplicateEdgePolicy::Reject);
RawGraph parse_orlib(const std::string& text,
                     DuplicateEdgePolicy policy = DuplicateEdgePolicy::Reject);
void write_orlib(std::ostream& out, const RawGraph& g);

/// Square matrix of allocation distances, indexed (center, client), 0-based.
/// Integral matrices (every entry an integer) are flagged so ladder
/// construction can compare exactly.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(int n, std::vector<double> entries);

  int size() const { return n_; }
  double operator()(int center, int client) const {
    return d_[static_cast<std::size_t>(center) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(client)];
  }
  bool integral() const { return integral_; }
  bool symmetric() const;
  std::span<const double> entries() const { return d_; }

 private:
  int n_ = 0;
  std::vector<double> d_;
  bool integral_ = true;
};

DistanceMatrix all_pairs_shortest(const RawGraph& g);
DistanceMatrix parse_matrix(std::istream& in);
void write_matrix(std::ostream& out, const DistanceMatrix& dm);

/// Strata over sites: members[s] is the sorted, 0-based site list of N^s.
struct StrataSet {
  std::vector<std::vector<int>> members;
  std::vector<double> weights;

  int count() const { return static_cast<int>(members.size()); }
  bool contains(int s, int site) const;
};

inline constexpr int kStrataRetryCap = 1000;

/// Draws q_i ~ U(0,1) per site, then each stratum independently with
/// membership i in N^s iff r < q_i. Empty strata are redrawn.
StrataSet sample_strata(int n, int strata, std::uint64_t seed);
/// Same procedure with a caller-supplied probability vector.
StrataSet sample_strata(std::span<const double> q, int strata, std::uint64_t seed);
/// The q vector `sample_strata(n, S, seed)` draws internally.
std::vector<double> strata_probabilities(int n, std::uint64_t seed);

StrataSet parse_strata_json(std::istream& in);
std::string strata_to_json(const StrataSet& strata);

struct Instance {
  DistanceMatrix dm;
  StrataSet strata;
  int p = 0;

  int n() const { return dm.size(); }
  int strata_count() const { return strata.count(); }
};

Instance build_instance(DistanceMatrix dm, StrataSet strata, int p);

/// Random connected graph: a random spanning tree plus `extra_edges` chords,
/// costs uniform in [cost_lo, cost_hi].
RawGraph random_connected_graph(int n, int extra_edges, std::int64_t cost_lo,
                                std::int64_t cost_hi, std::uint64_t seed);

}  // namespace spcp
