#pragma once

// Instance generation, run reports, report verification and sweeps.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "wtap/adversary.hpp"
#include "wtap/decomposition.hpp"
#include "wtap/fractional_path.hpp"
#include "wtap/instance.hpp"
#include "wtap/io.hpp"
#include "wtap/oracles.hpp"
#include "wtap/path_online.hpp"
#include "wtap/pruning.hpp"
#include "wtap/tree_online.hpp"

namespace wtap {

using json = nlohmann::json;

inline constexpr const char* kReportFormatVersion = "wtap-report-v1";

// ---- random instances ------------------------------------------------------

struct GenOptions {
  std::string kind = "random-tree";  // random-tree | random-path
  int n = 8;                         // vertices
  int links = 10;                    // random links, not counting the feasibility layer
  double spread = 16.0;              // raw costs log-uniform in [1, spread]
  int requests = 5;
  std::uint64_t seed = 1;
  bool feasibility = true;           // one cost-1 link parallel to every tree edge
};

// Uniform labeled tree on n vertices from a random Pruefer sequence.
inline std::vector<std::pair<Vertex, Vertex>> pruefer_decode(const std::vector<int>& seq, int n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (n == 2) return {{0, 1}};
  std::vector<int> degree(n, 1);
  for (const int x : seq) ++degree[x];
  std::vector<int> leaves;  // min-heap of current leaves
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push_back(v);
  std::make_heap(leaves.begin(), leaves.end(), std::greater<>());
  for (const int x : seq) {
    std::pop_heap(leaves.begin(), leaves.end(), std::greater<>());
    const int leaf = leaves.back();
    leaves.pop_back();
    edges.push_back({leaf, x});
    if (--degree[x] == 1) {
      leaves.push_back(x);
      std::push_heap(leaves.begin(), leaves.end(), std::greater<>());
    }
  }
  std::sort(leaves.begin(), leaves.end());
  edges.push_back({leaves[0], leaves[1]});
  return edges;
}

inline Rational log_uniform_cost(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double v = std::exp(u(rng) * std::log(spread));
  return Rational(std::max<std::int64_t>(1000, std::llround(v * 1000.0)), 1000);
}

inline TreeInstance gen_random(const GenOptions& o) {
  if (o.n < 2) throw InputError("generator needs n >= 2");
  if (!(o.spread >= 1.0)) throw InputError("cost spread must be at least 1");
  if (o.links < 0 || o.requests < 0) throw InputError("link and request counts must be nonnegative");
  std::mt19937_64 rng(o.seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (o.kind == "random-path") {
    for (int v = 0; v + 1 < o.n; ++v) edges.push_back({v, v + 1});
  } else if (o.kind == "random-tree") {
    std::vector<int> seq(std::max(0, o.n - 2));
    for (auto& x : seq) x = pick(0, o.n - 1);
    edges = pruefer_decode(seq, o.n);
  } else {
    throw InputError("unknown generator kind '" + o.kind + "'");
  }
  std::vector<std::pair<Vertex, Vertex>> ends;
  std::vector<Rational> costs;
  if (o.feasibility)
    for (const auto& e : edges) {
      ends.push_back(e);
      costs.push_back(Rational(1));
    }
  for (int i = 0; i < o.links; ++i) {
    const int a = pick(0, o.n - 1);
    int b = pick(0, o.n - 2);
    if (b >= a) ++b;
    ends.push_back({a, b});
    costs.push_back(log_uniform_cost(rng, o.spread));
  }
  std::vector<Request> reqs;
  for (int i = 0; i < o.requests; ++i) {
    const int s = pick(0, o.n - 1);
    int t = pick(0, o.n - 2);
    if (t >= s) ++t;
    reqs.push_back(Request::pair(s, t));
  }
  return TreeInstance(o.n, 0, std::move(edges), std::move(ends), std::move(costs), std::move(reqs));
}

// Random minimal rooted-path instance: random intervals (a third of them
// rooted) over powers of two, plus one link per edge, then pruned.
inline MinimalPathInstance gen_minimal_path(int num_edges, int links, int max_class, std::uint64_t seed) {
  if (num_edges < 1) throw InputError("path needs at least one edge");
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<PathLink> raw;
  auto add = [&](int l, int r) {
    const int c = pick(0, max_class);
    const int id = static_cast<int>(raw.size());
    raw.push_back(PathLink{id, id, l, r, c, Cost{1} << c});
  };
  for (int e = 0; e < num_edges; ++e) add(e, e + 1);
  for (int i = 0; i < links; ++i) {
    int a = pick(0, num_edges - 1), b = pick(0, num_edges - 1);
    if (a > b) std::swap(a, b);
    if (pick(0, 2) == 0) a = 0;
    add(a, b + 1);
  }
  return prune(num_edges, raw).instance;
}

inline std::vector<int> random_path_requests(int num_edges, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<int> d(0, num_edges - 1);
  std::vector<int> out(count);
  for (auto& e : out) e = d(rng);
  return out;
}

// ---- invariant records -----------------------------------------------------

struct InvariantRecord {
  std::string check;     // short name
  std::string property;  // the bound being checked
  bool ok = true;
  std::string detail;
};

inline json to_json(const InvariantRecord& r) {
  return json{{"check", r.check}, {"property", r.property}, {"ok", r.ok}, {"detail", r.detail}};
}

inline bool all_ok(const std::vector<InvariantRecord>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const InvariantRecord& r) { return r.ok; });
}

inline std::string config_hash(const std::string& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : config) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex << h;
  return o.str();
}

inline std::string selection_name(RootedSelection s) {
  return s == RootedSelection::kIncludePurchased ? "include-purchased" : "unpurchased-only";
}

inline std::string hex_digest(std::uint64_t d) {
  std::ostringstream o;
  o << std::hex << d;
  return o.str();
}

// Loads and charging inequalities of a finished path run.
inline std::vector<InvariantRecord> check_path_run(const PathSolver& s, long long n_global,
                                                   const std::string& prefix = "") {
  std::vector<InvariantRecord> out;
  const auto& inst = s.instance();
  auto cost_of = [&](const std::vector<int>& ids) {
    Cost c = 0;
    for (const int id : ids) c += inst.links[id].cost;
    return c;
  };

  InvariantRecord rooted{prefix + "rooted-load", "sum over P(l) of lambda*y <= 3 c(l) for rooted l", true, ""};
  double worst = 0;
  for (const auto& l : inst.links) {
    if (!l.rooted()) continue;
    const Cost load = s.charge_load(l);
    worst = std::max(worst, static_cast<double>(load) / static_cast<double>(l.cost));
    if (load > 3 * l.cost) rooted.ok = false;
  }
  rooted.detail = "max ratio " + std::to_string(worst);
  out.push_back(rooted);

  Cost total = 0;
  for (int e = 0; e < inst.num_edges; ++e) total += s.lambda()[e] * s.y()[e];
  const Cost f1 = cost_of(s.tight_links()), f2 = cost_of(s.overloaded_links()), f3 = cost_of(s.crossing_links());
  out.push_back({prefix + "charge-vs-tight", "sum lambda*y <= c(F1)", total <= f1,
                 std::to_string(total) + " <= " + std::to_string(f1)});
  Cost last_load = 0;
  if (!s.overloaded_links().empty()) last_load = s.charge_load(inst.links[s.overloaded_links().back()]);
  out.push_back({prefix + "overloaded-vs-last", "c(F2) <= 2 load(last selected rooted link)", f2 <= 2 * last_load,
                 std::to_string(f2) + " <= 2*" + std::to_string(last_load)});
  out.push_back({prefix + "crossing-vs-overloaded", "c(F3) <= 2 c(F2)", f3 <= 2 * f2,
                 std::to_string(f3) + " <= 2*" + std::to_string(f2)});

  const auto dual = verify_dual_feasible(s.y(), inst.links);
  out.push_back({prefix + "dual-feasible", "sum of y over P(l) <= c(l) for every link", dual.feasible,
                 std::to_string(dual.violators.size()) + " violators"});
  if (!s.served_requests().empty()) {
    Cost ysum = 0;
    for (const Cost v : s.y()) ysum += v;
    const Cost opt = opt_path_dp(inst, s.served_requests()).opt_cost;
    out.push_back({prefix + "weak-duality", "sum y <= OPT", ysum <= opt,
                   std::to_string(ysum) + " <= " + std::to_string(opt)});
  }
  bool covered = true;
  for (const int e : s.served_requests()) covered = covered && s.covered(e);
  out.push_back({prefix + "feasible", "every served request covered", covered, ""});
  (void)n_global;
  return out;
}

inline std::vector<InvariantRecord> check_nice(const PathSolver& s, long long n_global, const std::string& prefix = "") {
  const auto cert = verify_nice(s, s.served_requests(), n_global);
  std::vector<InvariantRecord> out;
  out.push_back({prefix + "nice-dual-cost", "c(F) <= 24 sum(y_hat)", cert.cost_ok,
                 "constant " + std::to_string(cert.cost_constant)});
  out.push_back({prefix + "nice-nonrooted-load", "hat load <= 2(2 log2 n + 1) c(l) for non-rooted l",
                 cert.nonrooted_ok, "max ratio " + std::to_string(cert.max_nonrooted_ratio)});
  out.push_back({prefix + "nice-rooted-load", "hat load <= 3 c(l) for rooted l", cert.rooted_ok,
                 "max ratio " + std::to_string(cert.max_rooted_ratio)});
  if (cert.enumerated)
    out.push_back({prefix + "nice-enumerated", "c(F) <= 24 (c(R*) + (2 log2 n + 1) c(S*)) for all feasible (R*, S*)",
                   cert.enum_ok, "max constant " + std::to_string(cert.max_enum_constant)});
  return out;
}

// ---- run reports -----------------------------------------------------------

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline json records_json(const std::vector<InvariantRecord>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return a;
}

// The tree must be a path rooted at one of its ends; its single
// decomposition path is the path instance.
inline const DecompPath& require_rooted_path(const RootedPathDecomposition& d) {
  if (d.paths.size() != 1) throw InputError("instance is not a path rooted at an endpoint");
  return d.paths[0];
}

inline std::vector<PathLink> projected_links(const TreeInstance& inst, const RootedPathDecomposition& d, int path_id) {
  std::vector<PathLink> out;
  for (const auto& l : inst.links())
    for (const auto& p : project(inst, d, l))
      if (p.path == path_id) out.push_back(PathLink{0, l.id, p.left, p.right, l.cls, l.cost});
  return out;
}

// Path request positions of the instance's requests, elementary expanded.
inline std::vector<int> path_requests(const TreeInstance& inst, const RootedPathDecomposition& d) {
  std::vector<int> out;
  for (const auto& r : inst.requests())
    for (const EdgeId e : inst.expand_request(r)) out.push_back(d.position(inst.child_of(e)) - 1);
  return out;
}

inline json run_path_report(const TreeInstance& inst, const PathSolverOptions& opts = {}, bool trace = false) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto d = decompose(inst);
  const auto& path = require_rooted_path(d);
  const auto pr = prune(path.num_edges(), projected_links(inst, d, path.id));
  PathSolver s(pr.instance, opts);
  const auto reqs = path_requests(inst, d);
  json steps = json::array();
  std::vector<Cost> incremental;
  for (const int e : reqs) {
    const auto st = s.serve(e);
    incremental.push_back(st.incremental_cost);
    if (trace) {
      json t{{"request", st.request}, {"served", st.served}, {"y_raise", st.y_raise},
             {"type1", st.tight_link >= 0 ? json(st.tight_link) : json(nullptr)},
             {"type2", st.overloaded_rooted ? json(*st.overloaded_rooted) : json(nullptr)},
             {"type2_bought", st.overloaded_was_bought}, {"type3", st.crossing},
             {"Z_right_endpoint", st.frontier}};
      steps.push_back(t);
    }
  }
  auto records = check_path_run(s, inst.n());
  for (auto& r : check_nice(s, inst.n())) records.push_back(r);
  std::vector<LinkId> sources;
  for (const int id : s.purchased_links()) sources.push_back(pr.instance.links[id].source);
  json rep{{"format", kReportFormatVersion},
           {"instance_format", kInstanceFormatVersion},
           {"mode", "run-path"},
           {"config", {{"rooted_selection", selection_name(opts.rooted_selection)}}},
           {"config_hash", config_hash(std::string("run-path;") + selection_name(opts.rooted_selection))},
           {"instance_digest", hex_digest(instance_digest(inst))},
           {"instance", format_instance(inst)},
           {"requests", reqs},
           {"incremental_costs", incremental},
           {"final_links", sorted_unique(sources)},
           {"final_cost", s.cost()},
           {"invariants", records_json(records)}};
  if (trace) rep["trace"] = steps;
  if (!reqs.empty()) {
    const Cost opt = opt_path_dp(pr.instance, reqs).opt_cost;
    rep["opt"] = opt;
    rep["ratio"] = opt > 0 ? static_cast<double>(s.cost()) / static_cast<double>(opt) : 1.0;
  }
  rep["wall_ms"] = elapsed_ms(t0);
  return rep;
}

struct TreeRunResult {
  Cost cost = 0;
  std::optional<Cost> opt;
  std::optional<double> ratio;
  std::vector<InvariantRecord> records;
  json report;
};

inline bool oracle_fits(const TreeInstance& inst) {
  if (inst.links().size() > kEnumLinkGuard) return false;
  std::vector<int> req;
  for (const auto& r : inst.requests())
    for (const EdgeId e : inst.expand_request(r)) req.push_back(e);
  return sorted_unique(req).size() <= 64;
}

inline TreeRunResult run_tree(const TreeInstance& inst, const PathSolverOptions& opts = {}, bool use_oracle = true,
                              bool check_niceness = false) {
  const auto t0 = std::chrono::steady_clock::now();
  TreeSolver solver(inst, opts);
  TreeRunResult res;
  json per_request = json::array();
  std::vector<Cost> incremental;
  bool covered = true;
  for (const auto& r : inst.requests()) {
    const auto rep = solver.serve(r);
    incremental.push_back(rep.incremental_cost);
    for (const EdgeId e : rep.elementary) covered = covered && solver.covered(e);
    per_request.push_back({{"s", rep.s}, {"t", rep.t}, {"elementary", rep.elementary}, {"bought", rep.bought},
                           {"incremental_cost", rep.incremental_cost}});
  }
  res.cost = solver.cost();
  const auto& d = solver.decomposition();
  res.records.push_back({"feasible", "every requested tree edge covered", covered, ""});
  const int w = width(inst, d);
  res.records.push_back({"decomposition-width", "width <= 2 ceil(log2 n) + 1", w <= d.width_bound,
                         std::to_string(w) + " <= " + std::to_string(d.width_bound)});
  bool minimal = true;
  for (const auto& t : solver.tasks()) minimal = minimal && minimality_violations(t.pruned.instance).empty();
  res.records.push_back({"pruned-minimal", "every path instance is minimal", minimal, ""});
  res.records.push_back({"cost-vs-paths", "c(ALG) <= sum of per-path costs", solver.cost() <= solver.per_path_cost(),
                         std::to_string(solver.cost()) + " <= " + std::to_string(solver.per_path_cost())});
  for (const auto& t : solver.tasks()) {
    if (t.solver.served_requests().empty()) continue;
    const std::string pre = "path" + std::to_string(t.path_id) + ".";
    for (auto& r : check_path_run(t.solver, inst.n(), pre)) res.records.push_back(r);
    if (check_niceness)
      for (auto& r : check_nice(t.solver, inst.n(), pre)) res.records.push_back(r);
  }
  if (use_oracle && oracle_fits(inst)) {
    res.opt = opt_tree_enum(inst, inst.requests()).opt_cost;
    res.ratio = *res.opt > 0 ? static_cast<double>(res.cost) / static_cast<double>(*res.opt) : 1.0;
  }
  const std::string cfg = std::string("run-tree;") + selection_name(opts.rooted_selection);
  res.report = json{{"format", kReportFormatVersion},
                    {"instance_format", kInstanceFormatVersion},
                    {"mode", "run-tree"},
                    {"config", {{"rooted_selection", selection_name(opts.rooted_selection)}}},
                    {"config_hash", config_hash(cfg)},
                    {"instance_digest", hex_digest(instance_digest(inst))},
                    {"instance", format_instance(inst)},
                    {"decomposition_width", w},
                    {"requests", per_request},
                    {"incremental_costs", incremental},
                    {"final_links", solver.purchased()},
                    {"final_cost", res.cost},
                    {"invariants", records_json(res.records)}};
  if (res.opt) {
    res.report["opt"] = *res.opt;
    res.report["ratio"] = *res.ratio;
  }
  res.report["wall_ms"] = elapsed_ms(t0);
  return res;
}

inline json run_frac_report(const TreeInstance& inst) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto d = decompose(inst);
  const auto& path = require_rooted_path(d);
  const auto pr = prune(path.num_edges(), projected_links(inst, d, path.id));
  FractionalSolver s(pr.instance);
  const auto reqs = path_requests(inst, d);
  json steps = json::array();
  std::vector<double> incremental;
  bool feasible = true;
  for (const int e : reqs) {
    const auto st = s.serve(e);
    feasible = feasible && st.coverage >= 1.0 - kCoverageTolerance;
    incremental.push_back(st.incremental_cost);
    steps.push_back({{"request", st.request},
                     {"class", st.skipped ? "covered" : (st.small ? "small" : "large")},
                     {"opt_i", st.opt_i},
                     {"t_star", st.t_star},
                     {"band", st.band},
                     {"incremental_cost", st.incremental_cost},
                     {"coverage", st.coverage}});
  }
  const auto audit = audit_fractional(s);
  std::vector<InvariantRecord> records{
      {"feasible", "coverage >= 1 - 1e-9 after every request", feasible, ""},
      {"small-cost", "cost of small requests <= OPT", audit.small_ok, std::to_string(audit.small_cost)},
      {"band-size", "|L_i| <= 2 (floor(log2 2n) + 1)", audit.band_ok,
       std::to_string(audit.max_band) + " <= " + std::to_string(audit.band_bound)},
      {"restricted-in-band", "each phase optimum covers its large requests from their bands", audit.restricted_in_band,
       ""},
      {"restricted-cost", "cost of the union of per-phase restricted covers <= 4 OPT", audit.restricted_ok,
       std::to_string(audit.restricted_cost)},
      {"phases-monotone", "floor(log2 OPT_i) nondecreasing", audit.phases_monotone && audit.opt_monotone, ""}};
  json rep{{"format", kReportFormatVersion},
           {"instance_format", kInstanceFormatVersion},
           {"mode", "run-frac"},
           {"config", {{"theta", s.theta()}}},
           {"config_hash", config_hash("run-frac")},
           {"instance_digest", hex_digest(instance_digest(inst))},
           {"instance", format_instance(inst)},
           {"requests", reqs},
           {"steps", steps},
           {"incremental_costs", incremental},
           {"final_cost", s.cost()},
           {"x", s.x()},
           {"invariants", records_json(records)}};
  if (!reqs.empty()) {
    rep["opt"] = audit.opt;
    rep["ratio"] = audit.opt > 0 ? s.cost() / static_cast<double>(audit.opt) : 1.0;
  }
  rep["wall_ms"] = elapsed_ms(t0);
  return rep;
}

// ---- report verification ---------------------------------------------------

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> problems;
};

// Re-runs the recorded configuration on the embedded instance and compares
// everything except wall time.
inline VerifyResult verify_report(const json& rep) {
  VerifyResult v;
  auto fail = [&](const std::string& why) {
    v.ok = false;
    v.problems.push_back(why);
  };
  if (!rep.is_object() || !rep.contains("mode") || !rep.contains("instance"))
    throw InputError("not a wtap run report");
  if (rep.value("format", "") != kReportFormatVersion) throw InputError("unsupported report format");
  const auto inst = parse_instance_string(rep.at("instance").get<std::string>());
  if (hex_digest(instance_digest(inst)) != rep.value("instance_digest", ""))
    fail("instance digest mismatch");
  const std::string mode = rep.at("mode");
  PathSolverOptions opts;
  if (rep.contains("config") && rep["config"].value("rooted_selection", "") == "unpurchased-only")
    opts.rooted_selection = RootedSelection::kUnpurchasedOnly;
  json fresh;
  if (mode == "run-tree") {
    fresh = run_tree(inst, opts, rep.contains("opt")).report;
  } else if (mode == "run-path") {
    fresh = run_path_report(inst, opts, rep.contains("trace"));
  } else if (mode == "run-frac") {
    fresh = run_frac_report(inst);
  } else {
    throw InputError("unknown report mode '" + mode + "'");
  }
  for (const auto& [key, value] : fresh.items()) {
    if (key == "wall_ms") continue;
    if (!rep.contains(key)) {
      fail("missing field " + key);
      continue;
    }
    if (rep[key] != value) fail("field " + key + " does not reproduce");
  }
  if (rep.contains("opt") != rep.contains("ratio")) fail("ratio present without OPT or vice versa");
  if (rep.contains("invariants"))
    for (const auto& r : rep["invariants"])
      if (!r.value("ok", false)) fail("invariant " + r.value("check", std::string("?")) + " failed");
  return v;
}

// ---- sweeps ----------------------------------------------------------------

struct ExperimentSpec {
  std::string generator = "random-tree";  // random-tree | random-path | lowerbound | file
  std::vector<int> sizes;                 // n, or k for lowerbound
  int seeds = 1;
  std::uint64_t seed = 1;
  std::string algorithm = "alg1";         // lowerbound: greedy | alg1 | top
  bool oracle = true;
  int links = 10;
  int requests = 5;
  double spread = 16.0;
  int B = 2;
  std::vector<std::string> files;         // generator = file
  int threads = 0;                        // 0: hardware concurrency
};

struct SweepRow {
  std::string generator;
  int size = 0;
  std::uint64_t seed = 0;
  Cost alg_cost = 0;
  std::optional<Cost> opt;
  std::optional<double> ratio;
  bool invariants_ok = true;
  std::string error;
};

struct SweepSummary {
  std::vector<std::pair<int, double>> max_ratio;  // per size
  double slope = 0;                               // least-squares max ratio / log2 n
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepSummary summary;
  std::string config_hash;
};

inline SweepRow run_cell(const ExperimentSpec& spec, int size, std::uint64_t seed, const std::string& file) {
  SweepRow row;
  row.generator = spec.generator;
  row.size = size;
  row.seed = seed;
  try {
    if (spec.generator == "lowerbound") {
      const auto h = build_lb_instance(spec.B, size);
      auto alg = make_contestant(spec.algorithm, h);
      const auto r = adversary_drive(*alg, h);
      row.alg_cost = r.alg_cost;
      row.opt = r.opt;
      row.ratio = r.ratio;
      row.invariants_ok = r.certificate_ok && r.classes_feasible;
      return row;
    }
    TreeInstance inst;
    if (spec.generator == "file") {
      inst = load_instance(file);
      row.size = inst.n();
    } else {
      GenOptions g;
      g.kind = spec.generator;
      g.n = size;
      g.links = spec.links;
      g.requests = spec.requests;
      g.spread = spec.spread;
      g.seed = seed;
      inst = gen_random(g);
    }
    const auto r = run_tree(inst, {}, spec.oracle);
    row.alg_cost = r.cost;
    row.opt = r.opt;
    row.ratio = r.ratio;
    row.invariants_ok = all_ok(r.records);
  } catch (const std::exception& e) {
    row.error = e.what();
    row.invariants_ok = false;
  }
  return row;
}

inline SweepSummary summarize(const std::vector<SweepRow>& rows, bool lowerbound) {
  SweepSummary s;
  std::map<int, double> mx;
  for (const auto& r : rows)
    if (r.ratio) mx[r.size] = std::max(mx[r.size], *r.ratio);
  double num = 0, den = 0;
  for (const auto& [size, ratio] : mx) {
    s.max_ratio.push_back({size, ratio});
    // For lowerbound rows the size is k and n = (2B)^k, so log2 n is
    // proportional to k; fit against k itself there.
    const double x = lowerbound ? static_cast<double>(size) : std::log2(static_cast<double>(size));
    num += x * ratio;
    den += x * x;
  }
  s.slope = den > 0 ? num / den : 0.0;
  return s;
}

inline std::string spec_config(const ExperimentSpec& spec) {
  std::ostringstream o;
  o << kReportFormatVersion << ";" << spec.generator << ";alg=" << spec.algorithm << ";oracle=" << spec.oracle
    << ";links=" << spec.links << ";requests=" << spec.requests << ";spread=" << spec.spread << ";B=" << spec.B;
  return o.str();
}

inline SweepResult sweep(const ExperimentSpec& spec) {
  struct Cell {
    int size;
    std::uint64_t seed;
    std::string file;
  };
  std::vector<Cell> cells;
  if (spec.generator == "file") {
    for (const auto& f : spec.files) cells.push_back({0, 0, f});
  } else if (spec.generator == "lowerbound") {
    for (const int k : spec.sizes) cells.push_back({k, 0, ""});
  } else {
    for (const int n : spec.sizes)
      for (int i = 0; i < spec.seeds; ++i) cells.push_back({n, spec.seed + static_cast<std::uint64_t>(i), ""});
  }
  SweepResult out;
  out.rows.resize(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();)
      out.rows[i] = run_cell(spec, cells[i].size, cells[i].seed, cells[i].file);
  };
  unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, cells.size()))));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  out.summary = summarize(out.rows, spec.generator == "lowerbound");
  out.config_hash = config_hash(spec_config(spec));
  return out;
}

inline std::string sweep_csv(const SweepResult& r) {
  std::ostringstream o;
  o << "generator,size,seed,alg_cost,opt,ratio,invariants_ok,error\n";
  for (const auto& row : r.rows) {
    o << row.generator << "," << row.size << "," << row.seed << "," << row.alg_cost << ",";
    if (row.opt) o << *row.opt;
    o << ",";
    if (row.ratio) o << *row.ratio;
    std::string err = row.error;
    std::replace(err.begin(), err.end(), ',', ';');
    o << "," << (row.invariants_ok ? 1 : 0) << "," << err << "\n";
  }
  return o.str();
}

inline json sweep_json(const SweepResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j{{"generator", row.generator}, {"size", row.size}, {"seed", row.seed}, {"alg_cost", row.alg_cost},
           {"invariants_ok", row.invariants_ok}};
    if (row.opt) j["opt"] = *row.opt;
    if (row.ratio) j["ratio"] = *row.ratio;
    if (!row.error.empty()) j["error"] = row.error;
    rows.push_back(j);
  }
  json mx = json::array();
  for (const auto& [size, ratio] : r.summary.max_ratio) mx.push_back({{"size", size}, {"max_ratio", ratio}});
  return json{{"format", kReportFormatVersion},
              {"instance_format", kInstanceFormatVersion},
              {"config_hash", r.config_hash},
              {"rows", rows},
              {"summary", {{"max_ratio", mx}, {"slope", r.summary.slope}}}};
}

// "1..6", "3", or "2,4,8".
inline std::vector<int> parse_range(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(s, &pos);
      if (pos != s.size()) throw InputError("");
      return v;
    } catch (const std::exception&) {
      throw InputError("bad integer range '" + text + "'");
    }
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int a = to_int(text.substr(0, dots)), b = to_int(text.substr(dots + 2));
    if (a > b) throw InputError("empty range '" + text + "'");
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');)
    if (!part.empty()) out.push_back(to_int(part));
  return out;
}

}  // namespace wtap
