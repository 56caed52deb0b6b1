// wtap: command-line front end for the online tree augmentation library.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wtap/harness.hpp"

using namespace wtap;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string format = "json";
  bool quiet = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

void emit(const Globals& g, const json& j) {
  if (!g.quiet) std::cout << j.dump(2) << "\n";
}

json link_json(const PathLink& l) {
  return json{{"id", l.id}, {"source", l.source}, {"left", l.left}, {"right", l.right},
              {"class", l.cls}, {"cost", l.cost}};
}

int invariant_exit(const json& rep) {
  for (const auto& r : rep.value("invariants", json::array()))
    if (!r.value("ok", false)) return kExitInvariant;
  return kExitOk;
}

int cmd_decompose(const Globals& g, const std::string& file) {
  const auto inst = load_instance(file);
  const auto d = decompose(inst);
  json paths = json::array();
  for (const auto& p : d.paths) {
    std::vector<EdgeId> edges;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) edges.push_back(inst.parent_edge(p.vertices[i]));
    paths.push_back({{"id", p.id}, {"root", p.root}, {"vertices", p.vertices}, {"edges", edges}});
  }
  const int w = width(inst, d);
  emit(g, {{"paths", paths}, {"width", w}, {"width_bound", d.width_bound}});
  return w <= d.width_bound ? kExitOk : kExitInvariant;
}

int cmd_prune(const Globals& g, const std::string& file, int path_id) {
  const auto inst = load_instance(file);
  const auto d = decompose(inst);
  if (path_id < 0 || path_id >= static_cast<int>(d.paths.size())) throw InputError("no such decomposition path");
  const auto input = projected_links(inst, d, path_id);
  const auto pr = prune(d.paths[path_id].num_edges(), input);
  json kept = json::array(), removed = json::array();
  for (const auto& l : pr.instance.links) kept.push_back(link_json(l));
  for (const auto& r : pr.removed) {
    json j{{"link", link_json(r.link)}};
    if (r.dominated_by) j["dominated_by"] = link_json(*r.dominated_by);
    json rep = json::array();
    for (const auto& x : r.replacement) rep.push_back(link_json(x));
    j["replacement"] = rep;
    removed.push_back(j);
  }
  const auto viol = minimality_violations(pr.instance);
  emit(g, {{"path", path_id}, {"edges", d.paths[path_id].num_edges()}, {"input_links", input.size()},
           {"kept", kept}, {"removed", removed}, {"minimality_violations", viol}});
  return viol.empty() ? kExitOk : kExitInvariant;
}

PathSolverOptions solver_options(bool literal) {
  PathSolverOptions o;
  if (literal) o.rooted_selection = RootedSelection::kUnpurchasedOnly;
  return o;
}

int finish_report(const Globals& g, const json& rep, const std::string& out) {
  if (!out.empty()) write_file(out, rep.dump(2) + "\n");
  if (g.quiet) return invariant_exit(rep);
  if (out.empty()) {
    std::cout << rep.dump(2) << "\n";
  } else {
    json brief{{"final_cost", rep["final_cost"]}, {"report", out}};
    if (rep.contains("opt")) brief["opt"] = rep["opt"];
    if (rep.contains("ratio")) brief["ratio"] = rep["ratio"];
    std::cout << brief.dump(2) << "\n";
  }
  return invariant_exit(rep);
}

int cmd_oracle(const Globals& g, const std::string& file) {
  const auto inst = load_instance(file);
  OracleResult r;
  if (oracle_fits(inst)) {
    r = opt_tree_enum(inst, inst.requests());
  } else {
    const auto d = decompose(inst);
    if (d.paths.size() != 1) throw InputError("instance too large for the exhaustive oracle and not a rooted path");
    r = opt_path_dp(projected_links(inst, d, 0), path_requests(inst, d));
    for (auto& id : r.witness) id = projected_links(inst, d, 0)[id].source;
  }
  emit(g, {{"opt", r.opt_cost}, {"witness", r.witness}, {"method", r.method}});
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open report " + file);
  json rep;
  try {
    rep = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }
  const auto v = verify_report(rep);
  emit(g, {{"ok", v.ok}, {"problems", v.problems}});
  return v.ok ? kExitOk : kExitInvariant;
}

int cmd_lowerbound(const Globals& g, int B, const std::string& ks, const std::string& algo, const std::string& csv,
                   bool raw) {
  std::ostringstream table;
  table << "B,k,n,alg_cost,opt,ratio,cert_ok\n";
  json rows = json::array();
  bool all = true;
  for (const int k : parse_range(ks)) {
    const auto h = build_lb_instance(B, k);
    auto alg = make_contestant(algo, h, !raw);
    const auto r = adversary_drive(*alg, h);
    const bool ok = r.certificate_ok && r.classes_feasible;
    all = all && ok;
    table << B << "," << k << "," << h.n << "," << r.alg_cost << "," << r.opt << "," << r.ratio << ","
          << (ok ? 1 : 0) << "\n";
    rows.push_back({{"B", B}, {"k", k}, {"n", h.n}, {"alg_cost", r.alg_cost}, {"opt", r.opt}, {"ratio", r.ratio},
                    {"cert_ok", ok}, {"requests", r.requests.size()}, {"lower_bound", r.lower_bound},
                    {"algorithm", r.algorithm}});
  }
  if (!csv.empty()) write_file(csv, table.str());
  if (!g.quiet) {
    if (g.format == "csv") {
      std::cout << table.str();
    } else {
      std::cout << json{{"rows", rows}}.dump(2) << "\n";
    }
  }
  return all ? kExitOk : kExitInvariant;
}

int cmd_gen(const Globals& g, GenOptions o, const std::string& out) {
  o.seed = g.seed;
  const auto text = format_instance(gen_random(o));
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
  return kExitOk;
}

int cmd_sweep(const Globals& g, ExperimentSpec spec, const std::string& sizes, const std::string& csv,
              const std::string& json_out) {
  spec.seed = g.seed;
  if (!sizes.empty()) spec.sizes = parse_range(sizes);
  const auto r = sweep(spec);
  if (!csv.empty()) write_file(csv, sweep_csv(r));
  const auto j = sweep_json(r);
  if (!json_out.empty()) write_file(json_out, j.dump(2) + "\n");
  if (!g.quiet) {
    if (g.format == "csv") {
      std::cout << sweep_csv(r);
    } else {
      std::cout << j.dump(2) << "\n";
    }
  }
  bool all = true;
  for (const auto& row : r.rows) all = all && row.invariants_ok;
  std::cerr << "cells " << r.rows.size() << ", config " << r.config_hash << "\n";
  for (const auto& [size, ratio] : r.summary.max_ratio) std::cerr << "  size " << size << ": max ratio " << ratio << "\n";
  std::cerr << "  fitted slope " << r.summary.slope << "\n";
  return all ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online weighted tree augmentation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--format", g.format, "tabular output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--quiet", g.quiet, "suppress standard output");

  std::string file, out, csv, json_out;
  bool trace = false, literal = false, raw = false;
  int path_id = 0;

  auto* dec = app.add_subcommand("decompose", "rooted path decomposition and its exact width");
  dec->add_option("instance", file)->required();

  auto* pru = app.add_subcommand("prune", "prune the projections onto one decomposition path");
  pru->add_option("instance", file)->required();
  pru->add_option("--path", path_id, "decomposition path id");

  auto* rp = app.add_subcommand("run-path", "primal-dual algorithm on a rooted path instance");
  rp->add_option("instance", file)->required();
  rp->add_flag("--trace", trace, "per-iteration records");
  rp->add_option("--report", out, "write the run report here");
  rp->add_flag("--literal-rooted", literal, "only unpurchased rooted links may be selected as overloaded");

  auto* rt = app.add_subcommand("run-tree", "online tree augmentation");
  rt->add_option("instance", file)->required();
  rt->add_option("--report", out, "write the run report here");
  rt->add_flag("--literal-rooted", literal, "only unpurchased rooted links may be selected as overloaded");

  auto* rf = app.add_subcommand("run-frac", "fractional algorithm on a rooted path instance");
  rf->add_option("instance", file)->required();
  rf->add_option("--report", out, "write the run report here");

  auto* orc = app.add_subcommand("oracle", "exact offline optimum");
  orc->add_option("instance", file)->required();

  auto* ver = app.add_subcommand("verify", "re-run and check a run report");
  ver->add_option("report", file)->required();

  int B = 2;
  std::string ks = "1..6", algo = "greedy";
  auto* lb = app.add_subcommand("lowerbound", "adaptive adversary on the hierarchical instance");
  lb->add_option("--B", B)->capture_default_str();
  lb->add_option("--k", ks, "depths, e.g. 1..6")->capture_default_str();
  lb->add_option("--algo", algo)->check(CLI::IsMember({"greedy", "alg1", "top"}))->capture_default_str();
  lb->add_option("--csv", csv, "write the table here");
  lb->add_flag("--no-canonical", raw, "do not wrap the algorithm in the canonical closure");

  GenOptions go;
  bool no_feas = false;
  auto* gen = app.add_subcommand("gen", "random instance");
  gen->add_option("--kind", go.kind)->check(CLI::IsMember({"random-tree", "random-path"}))->capture_default_str();
  gen->add_option("--n", go.n)->capture_default_str();
  gen->add_option("--links", go.links)->capture_default_str();
  gen->add_option("--spread", go.spread)->capture_default_str();
  gen->add_option("--requests", go.requests)->capture_default_str();
  gen->add_flag("--no-feasibility", no_feas, "omit the per-edge cost-1 links");
  gen->add_option("-o,--out", out, "output file (default stdout)");

  ExperimentSpec spec;
  std::string sizes;
  bool no_oracle = false;
  auto* sw = app.add_subcommand("sweep", "grid of runs");
  sw->add_option("--generator", spec.generator)
      ->check(CLI::IsMember({"random-tree", "random-path", "lowerbound", "file"}))
      ->capture_default_str();
  sw->add_option("--sizes", sizes, "vertex counts, or depths k for lowerbound (e.g. 6..9)");
  sw->add_option("--seeds", spec.seeds)->capture_default_str();
  sw->add_option("--links", spec.links)->capture_default_str();
  sw->add_option("--requests", spec.requests)->capture_default_str();
  sw->add_option("--spread", spec.spread)->capture_default_str();
  sw->add_option("--algo", spec.algorithm, "lowerbound contestant")->capture_default_str();
  sw->add_option("--B", spec.B)->capture_default_str();
  sw->add_option("--files", spec.files, "instance files for the file generator");
  sw->add_option("--threads", spec.threads)->capture_default_str();
  sw->add_flag("--no-oracle", no_oracle);
  sw->add_option("--csv", csv);
  sw->add_option("--json", json_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*dec) return cmd_decompose(g, file);
    if (*pru) return cmd_prune(g, file, path_id);
    if (*rp) return finish_report(g, run_path_report(load_instance(file), solver_options(literal), trace), out);
    if (*rt) return finish_report(g, run_tree(load_instance(file), solver_options(literal)).report, out);
    if (*rf) return finish_report(g, run_frac_report(load_instance(file)), out);
    if (*orc) return cmd_oracle(g, file);
    if (*ver) return cmd_verify(g, file);
    if (*lb) return cmd_lowerbound(g, B, ks, algo, csv, raw);
    if (*gen) {
      go.feasibility = !no_feas;
      return cmd_gen(g, go, out);
    }
    if (*sw) {
      spec.oracle = !no_oracle;
      return cmd_sweep(g, spec, sizes, csv, json_out);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
