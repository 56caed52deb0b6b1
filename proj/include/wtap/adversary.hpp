#pragma once

// Hierarchical lower-bound instance and the adaptive adversary that always
// requests the leftmost uncovered edge.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "wtap/oracles.hpp"
#include "wtap/path_online.hpp"
#include "wtap/pruning.hpp"

namespace wtap {

// Links of class j are the disjoint intervals [i (2B)^j, (i+1) (2B)^j] of
// cost B^j, for j = 0..k, on a path of (2B)^k edges.
struct HierarchicalInstance {
  int B = 2;
  int k = 1;
  int n = 0;                  // path edges
  std::vector<PathLink> links;
  std::vector<int> class_offset;  // first link id of each class; size k+2

  int span(int cls) const {
    int s = 1;
    for (int j = 0; j < cls; ++j) s *= 2 * B;
    return s;
  }
  // The class-j link containing edge e.
  int link_containing(int cls, int edge) const { return class_offset[cls] + edge / span(cls); }
  int top() const { return class_offset[k]; }
};

inline constexpr long long kLowerBoundEdgeGuard = 1 << 22;

inline HierarchicalInstance build_lb_instance(int B, int k) {
  if (B < 2) throw InputError("B must be at least 2");
  if (k < 1) throw InputError("k must be at least 1");
  long long n = 1;
  for (int j = 0; j < k; ++j) {
    n *= 2LL * B;
    if (n > kLowerBoundEdgeGuard) throw InputError("(2B)^k exceeds the instance size guard");
  }
  HierarchicalInstance h;
  h.B = B;
  h.k = k;
  h.n = static_cast<int>(n);
  Cost cost = 1;
  for (int j = 0; j <= k; ++j) {
    h.class_offset.push_back(static_cast<int>(h.links.size()));
    const int span = h.span(j);
    // Classes carry the exponent of B; costs need not be powers of two.
    for (int i = 0; i * span < h.n; ++i) {
      const int id = static_cast<int>(h.links.size());
      h.links.push_back(PathLink{id, id, i * span, (i + 1) * span, j, cost});
    }
    cost *= B;
  }
  h.class_offset.push_back(static_cast<int>(h.links.size()));
  return h;
}

// An online algorithm on a hierarchical instance: receives an uncovered edge
// and returns the link ids it buys for it.
class Contestant {
 public:
  virtual ~Contestant() = default;
  virtual std::string name() const = 0;
  virtual std::vector<int> serve(int edge) = 0;
};

// Buys the cheapest covering link not owned yet (ties: smallest id).
class GreedyContestant : public Contestant {
 public:
  explicit GreedyContestant(const HierarchicalInstance& h) : h_(&h), owned_(h.links.size(), 0) {}
  std::string name() const override { return "greedy"; }
  std::vector<int> serve(int edge) override {
    int best = -1;
    for (const auto& l : h_->links)
      if (!owned_[l.id] && l.covers(edge) && (best < 0 || l.cost < h_->links[best].cost)) best = l.id;
    if (best < 0) return {};
    owned_[best] = 1;
    return {best};
  }

 private:
  const HierarchicalInstance* h_;
  std::vector<char> owned_;
};

// Buys the top link on the first request.
class TopContestant : public Contestant {
 public:
  explicit TopContestant(const HierarchicalInstance& h) : h_(&h) {}
  std::string name() const override { return "top"; }
  std::vector<int> serve(int) override {
    if (done_) return {};
    done_ = true;
    return {h_->top()};
  }

 private:
  const HierarchicalInstance* h_;
  bool done_ = false;
};

// The primal-dual path algorithm. Costs are rounded up to powers of two for
// its decisions; the instance is already minimal.
class Alg1Contestant : public Contestant {
 public:
  explicit Alg1Contestant(const HierarchicalInstance& h, PathSolverOptions opts = {})
      : solver_(make_instance(h), opts) {}
  std::string name() const override { return "alg1"; }
  std::vector<int> serve(int edge) override { return solver_.serve(edge).bought; }

 private:
  static MinimalPathInstance make_instance(const HierarchicalInstance& h) {
    std::vector<PathLink> links = h.links;
    for (auto& l : links) {
      int cls = 0;
      while ((Cost{1} << cls) < l.cost) ++cls;
      l.cls = cls;
      l.cost = Cost{1} << cls;
    }
    return make_path_instance(h.n, std::move(links));
  }
  PathSolver solver_;
};

// With every purchase of a class-j link containing the request, also buys the
// links of all lower classes containing the request.
class CanonicalContestant : public Contestant {
 public:
  CanonicalContestant(const HierarchicalInstance& h, std::unique_ptr<Contestant> inner)
      : h_(&h), inner_(std::move(inner)), owned_(h.links.size(), 0) {}
  std::string name() const override { return "canonical-" + inner_->name(); }
  std::vector<int> serve(int edge) override {
    std::vector<int> out;
    auto take = [&](int id) {
      if (owned_[id]) return;
      owned_[id] = 1;
      out.push_back(id);
    };
    for (const int id : inner_->serve(edge)) {
      inner_cost_ += h_->links[id].cost;
      take(id);
      const auto& l = h_->links[id];
      if (!l.covers(edge)) continue;
      for (int j = l.cls - 1; j >= 0; --j) {
        const int id2 = h_->link_containing(j, edge);
        if (!owned_[id2]) added_cost_ += h_->links[id2].cost;
        take(id2);
      }
    }
    return out;
  }
  // Cost of the links the wrapped algorithm chose, and of the links only
  // the closure added.
  Cost inner_cost() const { return inner_cost_; }
  Cost added_cost() const { return added_cost_; }

 private:
  const HierarchicalInstance* h_;
  std::unique_ptr<Contestant> inner_;
  std::vector<char> owned_;
  Cost inner_cost_ = 0;
  Cost added_cost_ = 0;
};

inline std::unique_ptr<Contestant> make_contestant(const std::string& algo, const HierarchicalInstance& h,
                                                   bool canonical = true) {
  std::unique_ptr<Contestant> c;
  if (algo == "greedy") {
    c = std::make_unique<GreedyContestant>(h);
  } else if (algo == "top") {
    c = std::make_unique<TopContestant>(h);
  } else if (algo == "alg1") {
    c = std::make_unique<Alg1Contestant>(h);
  } else {
    throw InputError("unknown algorithm '" + algo + "' (greedy|alg1|top)");
  }
  if (canonical) c = std::make_unique<CanonicalContestant>(h, std::move(c));
  return c;
}

struct AdversaryReport {
  std::string algorithm;
  int B = 2;
  int k = 1;
  int n = 0;
  std::vector<int> requests;
  std::vector<int> bought;
  Cost alg_cost = 0;
  Cost opt = 0;
  double ratio = 0;
  std::vector<Cost> class_solution_cost;  // c(F'_j)
  Cost class_solution_total = 0;
  bool classes_feasible = true;  // every F'_j covers every request
  bool certificate_ok = true;    // sum_j c(F'_j) <= 2 c(F)
  double lower_bound = 0;        // (log_{2B} n) / 2 = k / 2
};

// Runs the adversary until the whole path is covered.
inline AdversaryReport adversary_drive(Contestant& alg, const HierarchicalInstance& h) {
  AdversaryReport r;
  r.algorithm = alg.name();
  r.B = h.B;
  r.k = h.k;
  r.n = h.n;
  std::vector<char> covered(h.n, 0), owned(h.links.size(), 0);
  int leftmost = 0;
  while (true) {
    while (leftmost < h.n && covered[leftmost]) ++leftmost;
    if (leftmost >= h.n) break;
    if (static_cast<int>(r.requests.size()) >= h.n) throw InvariantError("adversary exceeded n requests");
    const int e = leftmost;
    r.requests.push_back(e);
    for (const int id : alg.serve(e)) {
      if (owned[id]) continue;
      owned[id] = 1;
      r.bought.push_back(id);
      r.alg_cost += h.links[id].cost;
      for (int x = h.links[id].left; x < h.links[id].right; ++x) covered[x] = 1;
    }
    if (!covered[e]) throw InvariantError(alg.name() + " left its request uncovered");
  }

  r.opt = opt_path_dp(h.links, r.requests).opt_cost;
  r.ratio = r.opt > 0 ? static_cast<double>(r.alg_cost) / static_cast<double>(r.opt) : 0.0;

  // F'_j: class-j links containing some request.
  for (int j = 0; j <= h.k; ++j) {
    std::vector<char> used(h.links.size(), 0);
    Cost c = 0;
    for (const int e : r.requests) {
      const int id = h.link_containing(j, e);
      if (!h.links[id].covers(e)) r.classes_feasible = false;
      if (!used[id]) {
        used[id] = 1;
        c += h.links[id].cost;
      }
    }
    r.class_solution_cost.push_back(c);
    r.class_solution_total += c;
  }
  r.certificate_ok = r.class_solution_total <= 2 * r.alg_cost;
  r.lower_bound = static_cast<double>(h.k) / 2.0;
  return r;
}

}  // namespace wtap
