// Command-line front end: solve, compare, preprocess-stats, saa, export.
//
// Exit codes: 0 success, 2 configuration error, 3 limit reached without an
// optimality proof, 4 internal invariant violation.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "spcp/distance_index.hpp"
#include "spcp/error.hpp"
#include "spcp/exact_search.hpp"
#include "spcp/formulations.hpp"
#include "spcp/instance.hpp"
#include "spcp/milp.hpp"
#include "spcp/preprocess.hpp"
#include "spcp/saa_ppcp.hpp"
#include "spcp/solve.hpp"

using namespace spcp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitLimit = 3;
constexpr int kExitInvariant = 4;

struct Config {
  std::vector<std::string> orlib, matrix, random;
  std::string strata_path, gen_strata, weights;
  int p = 0;
  std::string formulation = "F1", linking, ineq, specs = "all", preprocess = "none";
  bool relax_z = false, relax_u = false;
  double time_limit = kInfinity;
  std::int64_t node_limit = -1;
  std::string out, q_path;
  int M = 10, iters = 20, jobs = 1;
  double tol = 1e-3;
  std::uint64_t seed = 1;
};

struct NamedInstance {
  std::string name;
  Instance inst;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NumericalFailure:
    case ErrorCode::CardinalityMismatch:
    case ErrorCode::DisagreementDetected:
      return kExitInvariant;
    default:
      return kExitConfig;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<long long> integers(const std::string& s, const char* what) {
  std::vector<long long> out;
  for (const auto& t : split(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw Error(ErrorCode::MalformedLine, std::string("bad ") + what + " value '" + s + "'");
    }
  }
  return out;
}

struct RawInstance {
  std::string name;
  DistanceMatrix dm;
  int p_default = 0;
};

std::vector<RawInstance> load_matrices(const Config& cfg) {
  std::vector<RawInstance> out;
  for (const auto& path : cfg.orlib) {
    const auto g = parse_orlib(read_file(path));
    out.push_back({path, all_pairs_shortest(g), g.p_default});
  }
  for (const auto& path : cfg.matrix) {
    std::istringstream in(read_file(path));
    out.push_back({path, parse_matrix(in), 0});
  }
  for (const auto& r : cfg.random) {
    const auto v = integers(r, "--random");
    if (v.size() < 2 || v.size() > 3 || v[0] < 2) throw Error(ErrorCode::MalformedLine, "--random expects n,seed[,count]");
    const long long count = v.size() == 3 ? v[2] : 1;
    for (long long k = 0; k < count; ++k) {
      const auto seed = static_cast<std::uint64_t>(v[1] + k);
      const auto g = random_connected_graph(static_cast<int>(v[0]), static_cast<int>(v[0]), 1, 9, seed);
      out.push_back({"random-" + std::to_string(v[0]) + "-" + std::to_string(seed), all_pairs_shortest(g), 0});
    }
  }
  if (out.empty()) throw Error(ErrorCode::Io, "no instance given (use --instance, --matrix or --random)");
  return out;
}

int effective_p(const Config& cfg, const RawInstance& raw) {
  const int p = cfg.p != 0 ? cfg.p : raw.p_default;
  if (p == 0) throw Error(ErrorCode::InvalidP, raw.name + ": --p is required");
  return p;
}

StrataSet load_strata(const Config& cfg, int n) {
  StrataSet st;
  if (!cfg.strata_path.empty()) {
    std::istringstream in(read_file(cfg.strata_path));
    st = parse_strata_json(in);
  } else if (!cfg.gen_strata.empty()) {
    const auto v = integers(cfg.gen_strata, "--gen-strata");
    if (v.size() != 2 || v[0] < 1) throw Error(ErrorCode::MalformedLine, "--gen-strata expects S,seed");
    st = sample_strata(n, static_cast<int>(v[0]), static_cast<std::uint64_t>(v[1]));
  } else {
    throw Error(ErrorCode::EmptyStratum, "strata required (use --strata or --gen-strata)");
  }
  if (!cfg.weights.empty()) {
    st.weights.clear();
    for (const auto& t : split(cfg.weights, ',')) {
      try {
        st.weights.push_back(std::stod(t));
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidWeights, "bad --weights entry '" + t + "'");
      }
    }
  }
  return st;
}

std::vector<NamedInstance> load_instances(const Config& cfg) {
  std::vector<NamedInstance> out;
  for (auto& raw : load_matrices(cfg)) {
    const int p = effective_p(cfg, raw);
    auto st = load_strata(cfg, raw.dm.size());
    out.push_back({raw.name, build_instance(std::move(raw.dm), std::move(st), p)});
  }
  return out;
}

std::optional<FormulationSpec> spec_from(const Config& cfg) {
  if (cfg.formulation == "combinatorial") return std::nullopt;
  FormulationSpec spec;
  if (auto fam = parse_family(cfg.formulation)) {
    spec.family = *fam;
  } else if (auto named = parse_spec_name(cfg.formulation)) {
    spec = *named;
  } else {
    throw Error(ErrorCode::UnsupportedVariant, "unknown formulation '" + cfg.formulation + "'");
  }
  if (!cfg.linking.empty()) {
    auto l = parse_linking(cfg.linking);
    if (!l) throw Error(ErrorCode::UnsupportedVariant, "unknown F5 linking '" + cfg.linking + "'");
    spec.linking = l;
  } else if (spec.family == Family::F5 && !spec.linking) {
    spec.linking = F5Linking::F55;
  }
  spec.relax_z_tail = spec.relax_z_tail || cfg.relax_z;
  spec.relax_u = spec.relax_u || cfg.relax_u;
  for (const auto& t : split(cfg.ineq, ',')) {
    auto q = parse_inequality(t);
    if (!q) throw Error(ErrorCode::UnsupportedVariant, "unknown inequality '" + t + "'");
    spec.inequalities.insert(*q);
  }
  validate_spec(spec);
  return spec;
}

PreprocessMode mode_from(const Config& cfg) {
  auto m = parse_preprocess_mode(cfg.preprocess);
  if (!m) throw Error(ErrorCode::UnsupportedVariant, "unknown preprocessing mode '" + cfg.preprocess + "'");
  return *m;
}

// Writes to --out, or standard output when no path was given.
void emit(const Config& cfg, const std::string& text, const std::string& suffix = "") {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out + suffix);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + cfg.out + suffix);
  f << text;
}

std::string num(double v) {
  if (!std::isfinite(v)) return "NA";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<int> one_based(const std::vector<int>& c) {
  std::vector<int> out;
  for (int v : c) out.push_back(v + 1);
  return out;
}

// Runs fn(k) for k in [0, count) on `jobs` threads; the first error wins.
template <class Fn>
void fan_out(int count, int jobs, Fn fn) {
  jobs = std::clamp(jobs, 1, std::max(count, 1));
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (int k = next++; k < count; k = next++) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

int cmd_solve(const Config& cfg) {
  const auto all = load_instances(cfg);
  if (all.size() != 1) throw Error(ErrorCode::Io, "solve takes exactly one instance");
  const auto& [name, inst] = all.front();
  SolveOptions opt;
  opt.spec = spec_from(cfg);
  opt.preprocess = mode_from(cfg);
  opt.jobs = cfg.jobs;
  opt.limits.time_limit_seconds = cfg.time_limit;
  opt.limits.node_limit = cfg.node_limit;
  const auto out = solve_spcp(inst, opt);

  nlohmann::ordered_json j;
  j["instance"] = name;
  j["n"] = inst.n();
  j["p"] = inst.p;
  j["strata"] = inst.strata_count();
  j["formulation"] = out.method;
  j["preprocess"] = to_string(opt.preprocess);
  j["status"] = to_string(out.status);
  j["proven"] = out.proven;
  if (out.has_solution) {
    j["centers"] = one_based(out.solution.centers);
    j["per_stratum_max"] = out.solution.per_stratum_max;
    j["objective"] = out.solution.objective;
  } else {
    j["centers"] = nullptr;
    j["objective"] = nullptr;
  }
  if (std::isfinite(out.bound)) j["bound"] = out.bound;
  else j["bound"] = nullptr;
  if (opt.spec) {
    j["root_lp"] = out.root_lp;
    j["rows"] = out.rows;
    j["cols"] = out.cols;
  }
  j["nodes"] = out.nodes;
  j["t_prep"] = out.t_prep;
  j["t_solv"] = out.t_solv;
  j["t_total"] = out.t_total;
  emit(cfg, j.dump(2) + "\n");
  return out.proven ? kExitOk : kExitLimit;
}

std::vector<FormulationSpec> compare_specs(const Config& cfg) {
  if (cfg.specs == "all") return all_legal_specs();
  if (cfg.specs == "base") return base_specs();
  std::vector<FormulationSpec> out;
  for (const auto& t : split(cfg.specs, ',')) {
    auto s = parse_spec_name(t);
    if (!s) throw Error(ErrorCode::UnsupportedVariant, "unknown spec '" + t + "'");
    validate_spec(*s);
    out.push_back(*s);
  }
  return out;
}

int cmd_compare(const Config& cfg) {
  const auto all = load_instances(cfg);
  const auto specs = compare_specs(cfg);
  const auto mode = mode_from(cfg);
  struct Row {
    std::string spec, status;
    bool proven = false;
    double optimum = kInfinity, lp = kInfinity, gap = kInfinity, time = 0;
    std::int64_t nodes = 0;
  };
  std::vector<std::vector<Row>> rows(all.size());
  fan_out(static_cast<int>(all.size()), cfg.jobs, [&](int k) {
    const auto& inst = all[static_cast<std::size_t>(k)].inst;
    const auto idx = build_distance_index(inst);
    for (const auto& spec : specs) {
      Row r;
      r.spec = canonical_name(spec);
      SolveOptions opt;
      opt.spec = spec;
      opt.preprocess = mode;
      opt.limits.time_limit_seconds = cfg.time_limit;
      opt.limits.node_limit = cfg.node_limit;
      const auto out = solve_spcp(inst, opt);
      r.status = to_string(out.status);
      r.proven = out.proven;
      r.nodes = out.nodes;
      r.time = out.t_total;
      if (out.has_solution) r.optimum = out.solution.objective;
      const auto lp = lp_relax_solve(build_formulation(inst, idx, prepared_spec(inst, idx, spec, mode)).model);
      if (lp.status == LpStatus::Optimal) r.lp = lp.objective;
      if (r.proven && std::isfinite(r.lp) && r.optimum != 0) r.gap = lp_gap(r.optimum, r.lp);
      rows[static_cast<std::size_t>(k)].push_back(r);
    }
  });

  std::ostringstream csv;
  csv << "instance,n,p,spec,status,optimum,lp_value,lp_gap_pct,nodes,time\n";
  int disagreements = 0;
  bool unproven = false;
  for (std::size_t k = 0; k < all.size(); ++k) {
    std::optional<double> ref;
    for (const auto& r : rows[k]) {
      csv << all[k].name << ',' << all[k].inst.n() << ',' << all[k].inst.p << ',' << r.spec << ',' << r.status << ','
          << num(r.optimum) << ',' << num(r.lp) << ',' << num(r.gap) << ',' << r.nodes << ',' << num(r.time) << '\n';
      if (!r.proven) {
        unproven = true;
        continue;
      }
      if (!ref) ref = r.optimum;
      else if (std::fabs(*ref - r.optimum) > 1e-6 * std::max(1.0, std::fabs(*ref))) ++disagreements;
    }
  }
  emit(cfg, csv.str());
  if (disagreements > 0) {
    throw Error(ErrorCode::DisagreementDetected, std::to_string(disagreements) + " optimum disagreement(s) across specs");
  }
  return unproven ? kExitLimit : kExitOk;
}

int cmd_preprocess_stats(const Config& cfg) {
  const auto all = load_instances(cfg);
  std::vector<std::array<double, 3>> stats(all.size());
  fan_out(static_cast<int>(all.size()), cfg.jobs, [&](int k) {
    const auto& inst = all[static_cast<std::size_t>(k)].inst;
    const auto idx = build_distance_index(inst);
    const auto classic = reduction_stats(idx, *preprocess(inst, idx, PreprocessMode::ClassicRel));
    const auto binary = reduction_stats(idx, *preprocess(inst, idx, PreprocessMode::Binary));
    stats[static_cast<std::size_t>(k)] = {binary.pct_z_fixed, classic.pct_u_fixed, binary.pct_u_fixed};
  });
  std::ostringstream csv;
  csv << "instance,n,p,pct_z,pct_u_classic,pct_u_binary\n";
  for (std::size_t k = 0; k < all.size(); ++k) {
    csv << all[k].name << ',' << all[k].inst.n() << ',' << all[k].inst.p;
    for (double v : stats[k]) csv << ',' << num(v);
    csv << '\n';
  }
  emit(cfg, csv.str());
  return kExitOk;
}

std::vector<double> read_q(const std::string& path, int n) {
  if (path.empty()) throw Error(ErrorCode::InvalidWeights, "--q file with one probability per site is required");
  std::istringstream in(read_file(path));
  std::vector<double> q;
  std::string tok;
  while (in >> tok) {
    try {
      q.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw Error(ErrorCode::MalformedLine, "bad probability '" + tok + "' in " + path);
    }
  }
  if (static_cast<int>(q.size()) != n) {
    throw Error(ErrorCode::InvalidWeights, path + " holds " + std::to_string(q.size()) + " values, expected " + std::to_string(n));
  }
  return q;
}

int cmd_saa(const Config& cfg) {
  auto raws = load_matrices(cfg);
  if (raws.size() != 1) throw Error(ErrorCode::Io, "saa takes exactly one instance");
  auto& raw = raws.front();
  const int p = effective_p(cfg, raw);
  const auto q = read_q(cfg.q_path, raw.dm.size());
  const auto inst = make_ppcp(std::move(raw.dm), p, q);
  SaaParams prm;
  prm.M = cfg.M;
  prm.max_iters = cfg.iters;
  prm.tol = cfg.tol;
  prm.seed = cfg.seed;
  prm.spec = spec_from(cfg);
  prm.preprocess = mode_from(cfg);
  const auto rep = saa_run(inst, prm);
  if (cfg.out.empty()) {
    std::cout << rep.to_csv() << rep.to_json();
  } else {
    emit(cfg, rep.to_csv(), ".csv");
    emit(cfg, rep.to_json(), ".json");
  }
  return kExitOk;
}

int cmd_export(const Config& cfg) {
  const auto all = load_instances(cfg);
  if (all.size() != 1) throw Error(ErrorCode::Io, "export takes exactly one instance");
  const auto& inst = all.front().inst;
  const auto spec = spec_from(cfg);
  if (!spec) throw Error(ErrorCode::UnsupportedVariant, "export needs a MILP formulation");
  const auto idx = build_distance_index(inst);
  const auto built = build_formulation(inst, idx, prepared_spec(inst, idx, *spec, mode_from(cfg), cfg.jobs));
  emit(cfg, export_mps(built.model, "SPCP"));
  return kExitOk;
}

void add_instance_flags(CLI::App* sub, Config& cfg) {
  sub->add_option("--instance", cfg.orlib, "ORLIB p-median file (repeatable)");
  sub->add_option("--matrix", cfg.matrix, "distance matrix file: n, then n*n entries (repeatable)");
  sub->add_option("--random", cfg.random, "random graph instance n,seed[,count] (repeatable)");
  sub->add_option("--p", cfg.p, "number of centers (defaults to the ORLIB header)");
}

void add_strata_flags(CLI::App* sub, Config& cfg) {
  sub->add_option("--strata", cfg.strata_path, "strata JSON file");
  sub->add_option("--gen-strata", cfg.gen_strata, "sample S strata with the given seed: S,seed");
  sub->add_option("--weights", cfg.weights, "comma-separated stratum weights");
}

void add_model_flags(CLI::App* sub, Config& cfg) {
  sub->add_option("--formulation", cfg.formulation, "F1..F5, a canonical spec name, or 'combinatorial'");
  sub->add_option("--f5-linking", cfg.linking, "F55, F2_3, desagregada, F52, agg53, F6");
  sub->add_flag("--relax-z", cfg.relax_z, "relax z for levels 3 and up");
  sub->add_flag("--relax-u", cfg.relax_u, "relax u in F5");
  sub->add_option("--ineq", cfg.ineq, "comma list of R1mod, escenarios2, escenarios3, Restz, F2_3");
}

void add_run_flags(CLI::App* sub, Config& cfg) {
  sub->add_option("--preprocess", cfg.preprocess, "none, classic-rel, binary, binary-star");
  sub->add_option("--time-limit", cfg.time_limit, "seconds per solve");
  sub->add_option("--node-limit", cfg.node_limit, "branch-and-bound nodes per solve");
  sub->add_option("--jobs", cfg.jobs, "worker threads");
  sub->add_option("--out", cfg.out, "output path (default: standard output)");
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Stratified p-center solver toolkit"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "solve one instance with one formulation");
  add_instance_flags(solve, cfg);
  add_strata_flags(solve, cfg);
  add_model_flags(solve, cfg);
  add_run_flags(solve, cfg);

  auto* compare = app.add_subcommand("compare", "solve instances with many formulations and cross-check optima");
  add_instance_flags(compare, cfg);
  add_strata_flags(compare, cfg);
  add_run_flags(compare, cfg);
  compare->add_option("--specs", cfg.specs, "'all', 'base', or a comma list of canonical spec names");

  auto* stats = app.add_subcommand("preprocess-stats", "percentages of fixed z and u variables");
  add_instance_flags(stats, cfg);
  add_strata_flags(stats, cfg);
  stats->add_option("--jobs", cfg.jobs, "worker threads");
  stats->add_option("--out", cfg.out, "output path (default: standard output)");

  auto* saa = app.add_subcommand("saa", "sample average approximation for the probabilistic p-center problem");
  add_instance_flags(saa, cfg);
  add_model_flags(saa, cfg);
  saa->add_option("--preprocess", cfg.preprocess, "none, classic-rel, binary, binary-star");
  saa->add_option("--q", cfg.q_path, "file with one demand probability per site");
  saa->add_option("--M", cfg.M, "scenarios per sample");
  saa->add_option("--iters", cfg.iters, "maximum iterations");
  saa->add_option("--tol", cfg.tol, "relative convergence tolerance of the running mean");
  saa->add_option("--seed", cfg.seed, "sampling seed");
  saa->add_option("--out", cfg.out, "output prefix: writes <out>.csv and <out>.json");
  cfg.formulation = "F1";

  auto* exp = app.add_subcommand("export", "write the configured model as fixed-format MPS");
  add_instance_flags(exp, cfg);
  add_strata_flags(exp, cfg);
  add_model_flags(exp, cfg);
  add_run_flags(exp, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*solve) return cmd_solve(cfg);
    if (*compare) return cmd_compare(cfg);
    if (*stats) return cmd_preprocess_stats(cfg);
    if (*saa) return cmd_saa(cfg);
    if (*exp) return cmd_export(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitConfig;
}
