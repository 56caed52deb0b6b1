#pragma once

// Primal-dual online algorithm for rooted path augmentation on minimal
// instances. Each uncovered request raises its dual until a covering link is
// tight and buys it (type 1); charges are recorded per edge; an overloaded
// rooted link is then selected (type 2, bought if not owned yet), every link
// of no higher class crossing it is bought (type 3), and the frontier Z moves
// to that rooted link.
//
// All duals are integers: costs are integers and every raise equals a
// residual cost difference, so equality tests are exact.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "wtap/pruning.hpp"

namespace wtap {

enum class LinkType : int { kNone = 0, kTight = 1, kOverloadedRooted = 2, kCrossing = 3 };

// Which rooted links may be selected as the overloaded rooted link.
enum class RootedSelection {
  // Only links not yet bought (the rule exactly as usually stated). A rooted
  // link bought earlier as a tight link can then keep collecting charge.
  kUnpurchasedOnly,
  // Bought links qualify too; selecting one only moves the frontier and buys
  // its crossing links. Keeps every rooted load at most 3 c(l).
  kIncludePurchased,
};

struct PathSolverOptions {
  RootedSelection rooted_selection = RootedSelection::kIncludePurchased;
};

struct ServeStep {
  int request = 0;
  bool served = false;  // false when the edge was already covered
  Cost y_raise = 0;
  int tight_link = -1;
  std::optional<int> overloaded_rooted;  // selected rooted link, bought or not
  bool overloaded_was_bought = false;    // true when selection bought it now
  std::vector<int> crossing;             // type-3 purchases
  int frontier = 0;                      // right end of Z after the step
  Cost incremental_cost = 0;
  std::vector<int> bought;  // every link bought this step, in order
};

class PathSolver {
 public:
  explicit PathSolver(MinimalPathInstance inst, PathSolverOptions opts = {})
      : inst_(std::move(inst)),
        opts_(opts),
        y_(inst_.num_edges, 0),
        lambda_(inst_.num_edges, 0),
        covered_(inst_.num_edges, 0),
        type_(inst_.links.size(), LinkType::kNone),
        charged_(inst_.links.size()) {}

  const MinimalPathInstance& instance() const { return inst_; }
  const std::vector<Cost>& y() const { return y_; }
  const std::vector<Cost>& lambda() const { return lambda_; }
  // Z is the edge prefix [0, frontier).
  int frontier() const { return z_; }
  bool covered(int edge) const { return covered_[edge] != 0; }
  bool purchased(int link) const { return type_[link] != LinkType::kNone; }
  LinkType type_of(int link) const { return type_[link]; }
  const std::vector<int>& tight_links() const { return f1_; }
  // Every selected overloaded rooted link in selection order, including
  // ones that were already bought as tight links.
  const std::vector<int>& overloaded_links() const { return f2_; }
  const std::vector<int>& crossing_links() const { return f3_; }
  // C(l): edges whose charge count was raised when l was bought tight.
  const std::vector<int>& charged(int link) const { return charged_[link]; }
  const std::vector<ServeStep>& trace() const { return trace_; }
  const std::vector<int>& served_requests() const { return served_; }
  Cost cost() const { return cost_; }

  std::vector<int> purchased_links() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < type_.size(); ++i)
      if (type_[i] != LinkType::kNone) out.push_back(static_cast<int>(i));
    return out;
  }

  Cost dual_load(const PathLink& l) const {
    Cost s = 0;
    for (int e = l.left; e < l.right; ++e) s += y_[e];
    return s;
  }

  // Sum over P(l) of lambda(e) y(e).
  Cost charge_load(const PathLink& l) const {
    Cost s = 0;
    for (int e = l.left; e < l.right; ++e) s += lambda_[e] * y_[e];
    return s;
  }

  ServeStep serve(int edge) {
    if (edge < 0 || edge >= inst_.num_edges) throw InputError("request outside the path");
    ServeStep step;
    step.request = edge;
    step.frontier = z_;
    if (covered_[edge]) {
      trace_.push_back(step);
      return step;
    }
    step.served = true;
    served_.push_back(edge);

    // Raise y(edge) until a covering link is tight.
    const PathLink* best = nullptr;
    Cost raise = 0;
    for (const auto& l : inst_.links) {
      if (!l.covers(edge)) continue;
      const Cost residual = l.cost - dual_load(l);
      if (!best || residual < raise || (residual == raise && prefer(l, *best))) {
        best = &l;
        raise = residual;
      }
    }
    if (!best) throw InfeasibleError("no link covers path edge " + std::to_string(edge));
    if (raise < 0) throw InvariantError("dual infeasible before raise");
    y_[edge] += raise;
    step.y_raise = raise;
    step.tight_link = best->id;
    buy(*best, LinkType::kTight, step);
    for (int e = best->left; e < best->right; ++e) {
      if (e < z_ || y_[e] <= 0) continue;
      ++lambda_[e];
      charged_[best->id].push_back(e);
    }

    // Overloaded rooted link of highest class.
    const PathLink* over = nullptr;
    for (const auto& l : inst_.links) {
      if (!l.rooted() || l.right <= z_) continue;
      if (purchased(l.id) && opts_.rooted_selection == RootedSelection::kUnpurchasedOnly) continue;
      if (charge_load(l) < l.cost) continue;
      if (!over || prefer(l, *over)) over = &l;
    }
    if (over) {
      step.overloaded_rooted = over->id;
      f2_.push_back(over->id);
      if (!purchased(over->id)) {
        buy(*over, LinkType::kOverloadedRooted, step);
        step.overloaded_was_bought = true;
      }
      for (const auto& l : inst_.links) {
        if (purchased(l.id) || l.cls > over->cls || !l.crosses(*over)) continue;
        buy(l, LinkType::kCrossing, step);
        step.crossing.push_back(l.id);
      }
      z_ = over->right;
    }
    step.frontier = z_;
    trace_.push_back(step);
    return step;
  }

  void run(const std::vector<int>& requests) {
    for (const int e : requests) serve(e);
  }

  struct HatDual {
    Cost c_max = 0;
    std::vector<char> in_hat;  // per link: member of the high-cost tight set
    std::vector<Cost> lambda_hat;
    std::vector<Cost> y_hat;
    Cost total = 0;
  };

  // Dual restricted to charges from tight links costing at least
  // c_max / n^2; an analysis artifact only.
  HatDual hat_dual(long long n_global) const {
    HatDual h;
    h.in_hat.assign(inst_.links.size(), 0);
    h.lambda_hat.assign(inst_.num_edges, 0);
    h.y_hat.assign(inst_.num_edges, 0);
    for (const int id : f1_) h.c_max = std::max(h.c_max, inst_.links[id].cost);
    if (f1_.empty()) return h;
    const long double n2 = static_cast<long double>(n_global) * n_global;
    for (const int id : f1_) {
      if (static_cast<long double>(inst_.links[id].cost) * n2 < static_cast<long double>(h.c_max)) continue;
      h.in_hat[id] = 1;
      for (const int e : charged_[id]) ++h.lambda_hat[e];
    }
    for (int e = 0; e < inst_.num_edges; ++e) {
      h.y_hat[e] = h.lambda_hat[e] * y_[e];
      h.total += h.y_hat[e];
    }
    return h;
  }

 private:
  // Tie-break among simultaneously eligible links: higher class, then
  // further right, then smaller id.
  static bool prefer(const PathLink& a, const PathLink& b) {
    if (a.cls != b.cls) return a.cls > b.cls;
    if (a.right != b.right) return a.right > b.right;
    return a.id < b.id;
  }

  void buy(const PathLink& l, LinkType t, ServeStep& step) {
    if (type_[l.id] != LinkType::kNone) throw InvariantError("link bought twice");
    type_[l.id] = t;
    if (t == LinkType::kTight) f1_.push_back(l.id);
    if (t == LinkType::kCrossing) f3_.push_back(l.id);
    cost_ += l.cost;
    step.incremental_cost += l.cost;
    step.bought.push_back(l.id);
    for (int e = l.left; e < l.right; ++e) covered_[e] = 1;
  }

  MinimalPathInstance inst_;
  PathSolverOptions opts_;
  std::vector<Cost> y_;
  std::vector<Cost> lambda_;
  std::vector<char> covered_;
  std::vector<LinkType> type_;
  std::vector<std::vector<int>> charged_;
  std::vector<int> f1_, f2_, f3_;
  std::vector<int> served_;
  std::vector<ServeStep> trace_;
  int z_ = 0;
  Cost cost_ = 0;
};

}  // namespace wtap
