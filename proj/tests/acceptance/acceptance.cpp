// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "spcp/distance_index.hpp"
#include "spcp/error.hpp"
#include "spcp/exact_search.hpp"
#include "spcp/formulations.hpp"
#include "spcp/milp.hpp"
#include "spcp/preprocess.hpp"
#include "spcp/rng.hpp"
#include "spcp/saa_ppcp.hpp"
#include "spcp/solve.hpp"

using namespace spcp;
using namespace spcp::testing;

namespace {

// Tolerances pinned by the acceptance criteria.
constexpr double kOptRelTol = 1e-6;
constexpr double kLpAgreeTol = 1e-6;
constexpr double kLpOrderTol = 1e-9;
constexpr double kExpectTol = 1e-10;
constexpr double kSaaMedianGapPct = 2.0;
constexpr double kScaleSeconds = 300.0;
constexpr int kSuiteSize = 50;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool close_rel(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b)); }

struct Criterion {
  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> issues;
  std::string summary;
  double seconds = 0;

  void fail(const std::string& why) {
    pass = false;
    if (issues.size() < 8) issues.push_back(why);
  }
};

struct SuiteInstance {
  std::string name;
  Instance inst;
  DistanceIndex idx;
  double optimum = 0;
};

std::vector<SuiteInstance> make_suite() {
  std::vector<SuiteInstance> out;
  for (int k = 0; k < kSuiteSize; ++k) {
    const int n = 6 + k % 10;
    const int p = std::min(2 + k % 4, n - 1);
    const int S = 1 + (k / 2) % 4;
    auto inst = random_instance(static_cast<std::uint64_t>(1000 + k), n, p, S);
    auto idx = build_distance_index(inst);
    const double opt = brute_force(inst).objective;
    char name[64];
    std::snprintf(name, sizeof name, "suite%02d(n=%d,p=%d,S=%d)", k, n, p, S);
    out.push_back({name, std::move(inst), std::move(idx), opt});
  }
  return out;
}

double milp_value(const SuiteInstance& si, const FormulationSpec& spec) {
  const auto res = milp_solve(build_formulation(si.inst, si.idx, spec).model);
  if (res.status != MilpStatus::Optimal) throw Error(ErrorCode::NumericalFailure, "MILP not optimal: " + to_string(res.status));
  return res.incumbent_value;
}

double lp_value(const SuiteInstance& si, const FormulationSpec& spec) {
  const auto res = lp_relax_solve(build_formulation(si.inst, si.idx, spec).model);
  if (res.status != LpStatus::Optimal) throw Error(ErrorCode::NumericalFailure, "LP not optimal");
  return res.objective;
}

FormulationSpec make(Family f, std::optional<F5Linking> l = std::nullopt) {
  FormulationSpec s;
  s.family = f;
  s.linking = l;
  return s;
}

// Legal inequality subsets (nonempty) for a base spec.
std::vector<std::set<Inequality>> cut_subsets(const FormulationSpec& base) {
  const std::array<Inequality, 5> all{Inequality::R1mod, Inequality::escenarios2, Inequality::escenarios3, Inequality::Restz,
                                      Inequality::F2_3};
  std::vector<Inequality> legal;
  for (auto q : all) {
    FormulationSpec s = base;
    s.inequalities = {q};
    try {
      validate_spec(s);
      legal.push_back(q);
    } catch (const Error&) {
    }
  }
  std::vector<std::set<Inequality>> out;
  for (unsigned mask = 1; mask < (1u << legal.size()); ++mask) {
    std::set<Inequality> sub;
    for (std::size_t b = 0; b < legal.size(); ++b)
      if (mask >> b & 1u) sub.insert(legal[b]);
    out.push_back(sub);
  }
  return out;
}

template <class Fn>
void guarded(Criterion& c, const std::string& where, Fn fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    c.fail(where + ": exception " + e.what());
  }
}

// --- criteria ---------------------------------------------------------------

void oracle_equivalence(Criterion& c, const std::vector<SuiteInstance>& suite,
                        std::map<std::pair<int, std::string>, double>& milp) {
  int solves = 0;
  for (std::size_t k = 0; k < suite.size(); ++k) {
    const auto& si = suite[k];
    for (const auto& spec : all_legal_specs()) {
      guarded(c, si.name + " " + canonical_name(spec), [&] {
        const double v = milp_value(si, spec);
        milp[{static_cast<int>(k), canonical_name(spec)}] = v;
        ++solves;
        if (!close_rel(v, si.optimum, kOptRelTol)) {
          c.fail(si.name + " " + canonical_name(spec) + ": " + std::to_string(v) + " vs brute force " + std::to_string(si.optimum));
        }
      });
    }
    guarded(c, si.name + " combinatorial", [&] {
      const double v = branch_and_bound_combinatorial(si.inst).objective;
      if (!close_rel(v, si.optimum, kOptRelTol)) c.fail(si.name + " combinatorial B&B disagrees");
    });
  }
  c.summary = std::to_string(suite.size()) + " instances x " + std::to_string(all_legal_specs().size()) +
              " specs (" + std::to_string(solves) + " MILP solves) + combinatorial B&B vs brute force";
}

void lp_coincidence(Criterion& c, const std::vector<SuiteInstance>& suite) {
  const std::vector<FormulationSpec> group{make(Family::F2), make(Family::F2prime), make(Family::F3), make(Family::F3mod),
                                           make(Family::F5, F5Linking::F55), make(Family::F5, F5Linking::desagregada)};
  double worst = 0;
  for (const auto& si : suite) {
    guarded(c, si.name, [&] {
      std::vector<double> v;
      for (const auto& s : group) v.push_back(lp_value(si, s));
      for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b) {
          worst = std::max(worst, std::fabs(v[a] - v[b]));
          if (!close_rel(v[a], v[b], kLpAgreeTol)) {
            c.fail(si.name + ": LP " + canonical_name(group[a]) + "=" + std::to_string(v[a]) + " vs " +
                   canonical_name(group[b]) + "=" + std::to_string(v[b]));
          }
        }
    });
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "6 LP values per instance, max pairwise difference %.3g", worst);
  c.summary = buf;
}

void lp_dominance(Criterion& c, const std::vector<SuiteInstance>& suite) {
  int strict4 = 0, strict5 = 0;
  for (const auto& si : suite) {
    guarded(c, si.name, [&] {
      const double f4 = lp_value(si, make(Family::F4)), f4m = lp_value(si, make(Family::F4mod));
      const double agg = lp_value(si, make(Family::F5, F5Linking::agg53));
      const double des = lp_value(si, make(Family::F5, F5Linking::desagregada));
      if (f4m < f4 - kLpOrderTol) c.fail(si.name + ": LP(F4mod) < LP(F4)");
      if (des < agg - kLpOrderTol) c.fail(si.name + ": LP(F5-desagregada) < LP(F5-agg53)");
      strict4 += f4m > f4 + kLpOrderTol;
      strict5 += des > agg + kLpOrderTol;
    });
  }
  c.summary = "F4mod strictly above F4 on " + std::to_string(strict4) + ", desagregada strictly above agg53 on " +
              std::to_string(strict5) + " of " + std::to_string(suite.size());
}

void relaxation_validity(Criterion& c, const std::vector<SuiteInstance>& suite,
                         const std::map<std::pair<int, std::string>, double>& milp) {
  int pairs = 0;
  for (std::size_t k = 0; k < suite.size(); ++k) {
    for (const auto& spec : all_legal_specs()) {
      if (!spec.relax_z_tail && !spec.relax_u) continue;
      FormulationSpec plain = spec;
      plain.relax_z_tail = plain.relax_u = false;
      const auto a = milp.find({static_cast<int>(k), canonical_name(spec)});
      const auto b = milp.find({static_cast<int>(k), canonical_name(plain)});
      if (a == milp.end() || b == milp.end()) {
        c.fail(suite[k].name + " " + canonical_name(spec) + ": missing solve");
        continue;
      }
      ++pairs;
      if (!close_rel(a->second, b->second, kOptRelTol)) c.fail(suite[k].name + " " + canonical_name(spec) + " changes the optimum");
    }
  }
  c.summary = std::to_string(pairs) + " relaxed/unrelaxed optimum pairs compared";
}

void preprocessing_safety(Criterion& c, const std::vector<SuiteInstance>& suite) {
  int solves = 0, bounds = 0;
  for (const auto& si : suite) {
    guarded(c, si.name, [&] {
      for (auto mode : {PreprocessMode::ClassicRel, PreprocessMode::Binary, PreprocessMode::BinaryStar}) {
        for (const auto& spec : all_legal_specs()) {
          if (!uses_u(spec.family) && !uses_z(spec.family)) continue;
          FormulationSpec prepared;
          try {
            prepared = prepared_spec(si.inst, si.idx, spec, mode);
          } catch (const Error& e) {
            if (e.code() == ErrorCode::IllegalRelaxation) continue;  // relax_z on a family without z tail
            throw;
          }
          const double v = milp_value(si, prepared);
          ++solves;
          if (!close_rel(v, si.optimum, kOptRelTol)) {
            c.fail(si.name + " " + canonical_name(prepared) + " with " + to_string(mode) + ": " + std::to_string(v) +
                   " vs " + std::to_string(si.optimum));
          }
        }
      }
      if (binomial(si.inst.n(), si.inst.p) <= 100000) {
        for (int s = 0; s < si.inst.strata_count(); ++s) {
          ++bounds;
          const double b = stratum_lb_binary(si.inst, si.idx, s);
          const double exact = pcenter_enumerate(si.inst, si.inst.strata.members[static_cast<std::size_t>(s)]);
          if (b != exact) c.fail(si.name + ": binary bound of stratum " + std::to_string(s + 1) + " is not the pCP_s optimum");
        }
      }
    });
  }
  c.summary = std::to_string(solves) + " fixed-model solves; " + std::to_string(bounds) + " binary bounds equal brute-force pCP_s";
}

void inequality_safety(Criterion& c, const std::vector<SuiteInstance>& suite) {
  int solves = 0;
  for (const auto& si : suite) {
    for (const auto& base : base_specs()) {
      const auto subsets = cut_subsets(base);
      if (subsets.empty()) continue;
      guarded(c, si.name + " " + canonical_name(base), [&] {
        const double lp0 = lp_value(si, base);
        for (const auto& sub : subsets) {
          FormulationSpec s = base;
          s.inequalities = sub;
          const double v = milp_value(si, s);
          const double lp = lp_value(si, s);
          ++solves;
          if (!close_rel(v, si.optimum, kOptRelTol)) c.fail(si.name + " " + canonical_name(s) + " changes the optimum");
          if (lp < lp0 - kLpOrderTol) c.fail(si.name + " " + canonical_name(s) + " lowers the LP value");
        }
      });
    }
  }
  c.summary = std::to_string(solves) + " (instance, base spec, inequality subset) MILP+LP solves";
}

void count_conformance(Criterion& c) {
  int models = 0;
  for (int k = 0; k < 10; ++k) {
    const auto inst = random_instance(static_cast<std::uint64_t>(500 + k), 8 + k, 2 + k % 4, 1 + k % 4);
    const auto idx = build_distance_index(inst);
    std::vector<FormulationSpec> specs = all_legal_specs();
    for (const auto& base : base_specs()) {
      const auto subs = cut_subsets(base);
      if (subs.empty()) continue;
      FormulationSpec s = base;
      s.inequalities = subs.back();  // every legal inequality at once
      specs.push_back(s);
    }
    for (const auto& spec : specs) {
      guarded(c, canonical_name(spec), [&] {
        const auto built = build_formulation(inst, idx, spec);
        std::map<std::string, std::int64_t> seen;
        for (const auto& r : built.model.constraints()) ++seen[r.family];
        auto expected = count_constraints(inst, idx, spec).exact;
        std::erase_if(expected, [](const auto& kv) { return kv.second == 0; });
        ++models;
        if (seen != expected) c.fail("instance " + std::to_string(k) + " " + canonical_name(spec) + ": row counts differ");
      });
    }
  }
  c.summary = std::to_string(models) + " built models, every family's row count equal to the analytic count";
}

PpcpInstance random_ppcp(std::uint64_t seed, int n, int p) {
  const auto inst = random_instance(seed, n, p, 1);
  CounterRng rng(seed ^ 0x5151ULL);
  std::vector<double> q(static_cast<std::size_t>(n));
  for (auto& v : q) v = rng.uniform();
  return make_ppcp(inst.dm, p, q);
}

double expected_by_subsets(const PpcpInstance& inst, const std::vector<int>& centers) {
  const int n = inst.dm.size();
  std::vector<double> a(static_cast<std::size_t>(n), 1e300);
  for (int i : centers)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] = std::min(a[static_cast<std::size_t>(j)], inst.dm(i, j));
  double e = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double prob = 1, worst = 0;
    for (int j = 0; j < n; ++j) {
      const double q = inst.q[static_cast<std::size_t>(j)];
      if (mask >> j & 1u) {
        prob *= q;
        worst = std::max(worst, a[static_cast<std::size_t>(j)]);
      } else {
        prob *= 1 - q;
      }
    }
    e += prob * worst;
  }
  return e;
}

void expected_max(Criterion& c) {
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const int n = 5 + k % 8;
    const auto inst = random_ppcp(static_cast<std::uint64_t>(70 + k), n, 2 + k % 2);
    std::vector<int> centers;
    for (int i = 0; i < inst.p; ++i) centers.push_back((i * 3 + k) % n);
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    for (int i = 0; static_cast<int>(centers.size()) < inst.p; ++i)
      if (!std::binary_search(centers.begin(), centers.end(), i)) {
        centers.push_back(i);
        std::sort(centers.begin(), centers.end());
      }
    const double d = std::fabs(expected_max_objective(inst, centers) - expected_by_subsets(inst, centers));
    worst = std::max(worst, d);
    if (d > kExpectTol) c.fail("instance " + std::to_string(k) + ": difference " + std::to_string(d));

    auto ones = inst, zeros = inst;
    std::fill(ones.q.begin(), ones.q.end(), 1.0);
    std::fill(zeros.q.begin(), zeros.q.end(), 0.0);
    double max_a = 0;
    for (int j = 0; j < n; ++j) {
      double a = 1e300;
      for (int i : centers) a = std::min(a, inst.dm(i, j));
      max_a = std::max(max_a, a);
    }
    if (expected_max_objective(ones, centers) != max_a) c.fail("q = 1 is not the deterministic max");
    if (expected_max_objective(zeros, centers) != 0) c.fail("q = 0 is not zero");
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "20 instances vs 2^n enumeration, max difference %.3g; q=1 and q=0 exact", worst);
  c.summary = buf;
}

void saa_quality(Criterion& c) {
  std::vector<double> gaps;
  for (int k = 0; k < 20; ++k) {
    const int n = 8 + k % 5;
    const auto inst = random_ppcp(static_cast<std::uint64_t>(900 + k), n, 2 + k % 2);
    SaaParams prm;
    prm.M = 10;
    prm.max_iters = 20;
    prm.tol = 0;  // run every iteration
    prm.seed = static_cast<std::uint64_t>(k + 1);
    prm.spec = make(Family::F5, F5Linking::agg53);
    prm.preprocess = PreprocessMode::BinaryStar;
    guarded(c, "saa " + std::to_string(k), [&] {
      const auto rep = saa_run(inst, prm);
      if (!rep.exact_optimum || !rep.gap_pct) {
        c.fail("instance " + std::to_string(k) + ": no exact comparison");
        return;
      }
      if (rep.best_value < *rep.exact_optimum - 1e-12) c.fail("instance " + std::to_string(k) + ": incumbent below the optimum");
      if (rep.iterations.size() != 20) c.fail("instance " + std::to_string(k) + ": stopped early");
      gaps.push_back(*rep.gap_pct);
    });
  }
  std::sort(gaps.begin(), gaps.end());
  const double median = gaps.empty() ? 1e300 : (gaps.size() % 2 ? gaps[gaps.size() / 2]
                                                                : 0.5 * (gaps[gaps.size() / 2 - 1] + gaps[gaps.size() / 2]));
  if (median > kSaaMedianGapPct) c.fail("median gap " + std::to_string(median) + "% above 2%");
  char buf[128];
  std::snprintf(buf, sizeof buf, "20 instances, median gap %.4f%%, max gap %.4f%%", median, gaps.empty() ? 0.0 : gaps.back());
  c.summary = buf;
}

void determinism(Criterion& c) {
  auto once = [] {
    std::ostringstream os;
    const auto inst = random_instance(4242, 12, 3, 3);
    const auto idx = build_distance_index(inst);
    os << strata_to_json(inst.strata);
    for (const auto& spec : {make(Family::F4mod), make(Family::F5, F5Linking::agg53)}) {
      const auto res = milp_solve(build_formulation(inst, idx, prepared_spec(inst, idx, spec, PreprocessMode::Binary)).model);
      os << res.nodes << ' ' << res.lp_iterations;
      for (double v : res.incumbent) os << ' ' << std::hexfloat << v;
      os << '\n';
    }
    const auto bb = branch_and_bound_combinatorial(inst, stratum_bounds(inst, idx, PreprocessMode::ClassicRel, 3));
    os << std::hexfloat << bb.objective << ' ' << bb.nodes << '\n';
    os << export_mps(build_formulation(inst, idx, make(Family::F4mod)).model, "DET");
    const auto sc = sample_scenarios(std::vector<double>(12, 0.3), 10, 77);
    os << strata_to_json(sc);
    SaaParams prm;
    prm.max_iters = 5;
    prm.seed = 11;
    const auto rep = saa_run(random_ppcp(31, 9, 2), prm);
    os << rep.to_csv() << rep.to_json();
    return os.str();
  };
  const auto a = once(), b = once();
  if (a != b) c.fail("two identical runs produced different output");
  c.summary = "instance generation, MILP, combinatorial B&B, MPS, sampling and SAA outputs byte-identical across runs (" +
              std::to_string(a.size()) + " bytes)";
}

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

std::string run_capture(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  pclose(pipe);
  return out;
}

// The ORLIB file if available, else a seeded graph of the same shape.
std::pair<RawGraph, std::string> pmed1() {
  std::vector<std::string> paths;
  if (const char* env = std::getenv("SPCP_PMED1")) paths.push_back(env);
  paths.push_back(std::string(SPCP_DATA) + "/pmed1.txt");
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (in) return {parse_orlib(in), path};
  }
  RawGraph g = random_connected_graph(100, 101, 1, 100, 20240601);
  g.p_default = 5;
  std::ostringstream os;
  write_orlib(os, g);
  return {parse_orlib(os.str()), "surrogate (n=100, 200 edges, p=5; pmed1.txt not found)"};
}

void scale_smoke(Criterion& c) {
  // part a: ORLIB-shaped instance through binary-star preprocessing, MPS and HiGHS
  const auto [graph, source] = pmed1();
  const auto dm = all_pairs_shortest(graph);
  const auto inst = build_instance(dm, sample_strata(dm.size(), 5, 17), graph.p_default);
  const auto idx = build_distance_index(inst);
  std::string part_a;
  guarded(c, "pmed1", [&] {
    const auto t0 = Clock::now();
    const auto spec = prepared_spec(inst, idx, make(Family::F5, F5Linking::agg53), PreprocessMode::BinaryStar);
    const auto built = build_formulation(inst, idx, spec);
    const double t_prep = since(t0);
    const std::string path = std::string(SPCP_BINARY_DIR) + "/pmed1_f5_agg53_binary_star.mps";
    {
      std::ofstream f(path);
      export_mps(f, built.model, "PMED1");
    }
    const auto t1 = Clock::now();
    const auto out = run_capture(std::string(SPCP_PYTHON) + " " + shell_quote(SPCP_HIGHS_SCRIPT) + " " + shell_quote(path) +
                                 " --time-limit 1800");
    const double t_solv = since(t1);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(out);
    } catch (const std::exception&) {
      c.fail("external solver produced no summary: " + out);
      return;
    }
    if (j.value("status", "") != "Optimal") {
      c.fail("external solver status: " + j.value("status", std::string("?")));
      return;
    }
    const double ext = j["objective"].get<double>();
    const auto bb = branch_and_bound_combinatorial(inst, spec.fixings->lower_bound);
    if (!close_rel(ext, bb.objective, kOptRelTol)) {
      c.fail("external optimum " + std::to_string(ext) + " differs from combinatorial optimum " + std::to_string(bb.objective));
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: %d rows x %d cols, HiGHS optimum %.6g (internal B&B %.6g), t_prep %.2fs t_solv %.2fs",
                  source.c_str(), built.model.num_rows(), built.model.num_vars(), ext, bb.objective, t_prep, t_solv);
    part_a = buf;
  });

  // part b: combinatorial B&B on n = 30
  std::string part_b;
  for (int p : {3, 7, 10}) {
    guarded(c, "n=30 p=" + std::to_string(p), [&] {
      const auto r = random_instance(static_cast<std::uint64_t>(3000 + p), 30, p, 4, 20);
      const auto ridx = build_distance_index(r);
      const auto t0 = Clock::now();
      const auto sol = branch_and_bound_combinatorial(r, stratum_bounds(r, ridx, PreprocessMode::Binary));
      const double t = since(t0);
      if (sol.proof != Proof::BranchBound) c.fail("n=30 p=" + std::to_string(p) + ": no proof");
      if (t > kScaleSeconds) c.fail("n=30 p=" + std::to_string(p) + ": " + std::to_string(t) + "s");
      char buf[96];
      std::snprintf(buf, sizeof buf, "%sp=%d %.2fs/%lld nodes", part_b.empty() ? "" : ", ", p, t, static_cast<long long>(sol.nodes));
      part_b += buf;
    });
  }
  c.summary = part_a + "; n=30 B&B: " + part_b;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  std::vector<Criterion> crit{{1, "oracle equivalence"},      {2, "LP coincidence"},
                              {3, "LP dominance"},            {4, "relaxation validity"},
                              {5, "preprocessing safety"},    {6, "valid-inequality safety and strength"},
                              {7, "constraint-count conformance"}, {8, "expected-max evaluator"},
                              {9, "SAA quality"},             {10, "determinism"},
                              {11, "scale smoke test"}};
  std::fprintf(stderr, "building the oracle suite...\n");
  const auto suite = make_suite();
  std::map<std::pair<int, std::string>, double> milp;

  const std::vector<std::function<void(Criterion&)>> runs{
      [&](Criterion& c) { oracle_equivalence(c, suite, milp); },
      [&](Criterion& c) { lp_coincidence(c, suite); },
      [&](Criterion& c) { lp_dominance(c, suite); },
      [&](Criterion& c) { relaxation_validity(c, suite, milp); },
      [&](Criterion& c) { preprocessing_safety(c, suite); },
      [&](Criterion& c) { inequality_safety(c, suite); },
      [&](Criterion& c) { count_conformance(c); },
      [&](Criterion& c) { expected_max(c); },
      [&](Criterion& c) { saa_quality(c); },
      [&](Criterion& c) { determinism(c); },
      [&](Criterion& c) { scale_smoke(c); },
  };
  bool all = true;
  for (std::size_t k = 0; k < crit.size(); ++k) {
    const auto t0 = Clock::now();
    try {
      runs[k](crit[k]);
    } catch (const std::exception& e) {
      crit[k].fail(std::string("exception: ") + e.what());
    }
    crit[k].seconds = since(t0);
    const auto& c = crit[k];
    std::printf("%s criterion %2d (%s): %s [%.1fs]\n", c.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), c.summary.c_str(),
                c.seconds);
    for (const auto& why : c.issues) std::printf("     - %s\n", why.c_str());
    std::fflush(stdout);
    all = all && c.pass;
  }
  std::printf("%s: %d criteria, %.1fs total\n", all ? "ALL PASS" : "SOME FAILED", static_cast<int>(crit.size()), since(start));
  return all ? 0 : 1;
}
