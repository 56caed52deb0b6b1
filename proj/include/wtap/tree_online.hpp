#pragma once

// Online tree augmentation by reduction to rooted paths: one path solver per
// decomposition path, fed with the projections of all links; buying a
// projected link buys its source link.

#include <map>
#include <utility>
#include <vector>

#include "wtap/decomposition.hpp"
#include "wtap/instance.hpp"
#include "wtap/path_online.hpp"
#include "wtap/pruning.hpp"

namespace wtap {

struct PathTask {
  int path_id = 0;
  std::vector<PathLink> projected;  // deduplicated projections, `source` = link id
  PruneResult pruned;
  PathSolver solver;
};

struct PairReport {
  Vertex s = 0;
  Vertex t = 0;
  std::vector<EdgeId> elementary;
  std::vector<LinkId> bought;
  Cost incremental_cost = 0;
};

class TreeSolver {
 public:
  explicit TreeSolver(const TreeInstance& inst, PathSolverOptions opts = {})
      : inst_(&inst), decomp_(decompose(inst)), covered_(inst.num_edges(), 0), bought_(inst.links().size(), 0) {
    std::vector<std::map<std::pair<int, int>, PathLink>> per_path(decomp_.paths.size());
    projections_.resize(inst.links().size());
    for (const auto& l : inst.links()) {
      projections_[l.id] = project(inst, decomp_, l);
      for (const auto& p : projections_[l.id]) {
        PathLink pl{0, l.id, p.left, p.right, l.cls, l.cost};
        auto [it, fresh] = per_path[p.path].try_emplace({p.left, p.right}, pl);
        if (!fresh && (pl.cost < it->second.cost || (pl.cost == it->second.cost && pl.source < it->second.source)))
          it->second = pl;
      }
    }
    tasks_.reserve(decomp_.paths.size());
    for (std::size_t q = 0; q < decomp_.paths.size(); ++q) {
      std::vector<PathLink> links;
      for (auto& [key, pl] : per_path[q]) links.push_back(pl);
      const int edges = decomp_.paths[q].num_edges();
      auto pruned = prune(edges, links);
      PathSolver solver(pruned.instance, opts);
      tasks_.push_back(PathTask{static_cast<int>(q), std::move(links), std::move(pruned), std::move(solver)});
    }
  }

  const TreeInstance& instance() const { return *inst_; }
  const RootedPathDecomposition& decomposition() const { return decomp_; }
  const std::vector<PathTask>& tasks() const { return tasks_; }
  const std::vector<ProjectedLink>& projections(LinkId l) const { return projections_[l]; }
  bool covered(EdgeId e) const { return covered_[e] != 0; }
  bool bought(LinkId l) const { return bought_[l] != 0; }
  Cost cost() const { return cost_; }
  const std::vector<PairReport>& history() const { return history_; }

  std::vector<LinkId> purchased() const {
    std::vector<LinkId> out;
    for (std::size_t i = 0; i < bought_.size(); ++i)
      if (bought_[i]) out.push_back(static_cast<LinkId>(i));
    return out;
  }

  // Total of the per-path solvers' own costs; at least cost() because a
  // source link bought through several paths is paid once.
  Cost per_path_cost() const {
    Cost c = 0;
    for (const auto& t : tasks_) c += t.solver.cost();
    return c;
  }

  PairReport serve_pair(Vertex s, Vertex t) { return serve(Request::pair(s, t)); }

  PairReport serve(const Request& r) {
    PairReport rep;
    rep.s = r.s;
    rep.t = r.t;
    rep.elementary = inst_->expand_request(r);
    for (const EdgeId e : rep.elementary) {
      if (covered_[e]) continue;
      const Vertex c = inst_->child_of(e);
      auto& task = tasks_[decomp_.path_of_vertex(c)];
      const int local = decomp_.position(c) - 1;
      const auto step = task.solver.serve(local);
      for (const int id : step.bought) {
        const LinkId src = task.solver.instance().links[id].source;
        if (bought_[src]) continue;
        buy(src);
        rep.bought.push_back(src);
        rep.incremental_cost += inst_->links()[src].cost;
      }
      if (!covered_[e]) throw InvariantError("request edge left uncovered after serving");
    }
    history_.push_back(rep);
    return rep;
  }

 private:
  void buy(LinkId id) {
    bought_[id] = 1;
    cost_ += inst_->links()[id].cost;
    for (const EdgeId e : inst_->link_path(inst_->links()[id]).edges) covered_[e] = 1;
  }

  const TreeInstance* inst_;
  RootedPathDecomposition decomp_;
  std::vector<std::vector<ProjectedLink>> projections_;
  std::vector<PathTask> tasks_;
  std::vector<char> covered_;
  std::vector<char> bought_;
  Cost cost_ = 0;
  std::vector<PairReport> history_;
};

}  // namespace wtap
