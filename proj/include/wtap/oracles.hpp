#pragma once

// Exact offline optima and certificate checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wtap/instance.hpp"
#include "wtap/path_online.hpp"
#include "wtap/pruning.hpp"

namespace wtap {

struct OracleResult {
  Cost opt_cost = 0;
  std::vector<int> witness;  // link ids, sorted
  std::string method;        // "interval-dp" | "subset-enum"
};

inline std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Minimum-cost cover of the requested path edges. Scans the requested edges
// left to right; the first uncovered one must be covered by some link, after
// which everything left of that link's right end is covered.
inline OracleResult opt_path_dp(const std::vector<PathLink>& links, std::vector<int> requested) {
  requested = sorted_unique(std::move(requested));
  const std::size_t k = requested.size();
  // Covering links per requested edge, in input order.
  std::vector<std::vector<int>> cov(k);
  for (std::size_t li = 0; li < links.size(); ++li) {
    auto it = std::lower_bound(requested.begin(), requested.end(), links[li].left);
    for (; it != requested.end() && *it < links[li].right; ++it)
      cov[static_cast<std::size_t>(it - requested.begin())].push_back(static_cast<int>(li));
  }
  constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
  std::vector<Cost> best(k + 1, kInf);
  std::vector<int> choice(k, -1), jump(k, 0);
  best[k] = 0;
  for (std::size_t i = k; i-- > 0;) {
    for (const int li : cov[i]) {
      const auto& l = links[li];
      const auto next = static_cast<std::size_t>(
          std::lower_bound(requested.begin(), requested.end(), l.right) - requested.begin());
      if (best[next] >= kInf) continue;
      const Cost c = l.cost + best[next];
      if (c < best[i]) {
        best[i] = c;
        choice[i] = li;
        jump[i] = static_cast<int>(next);
      }
    }
    if (best[i] >= kInf)
      throw InfeasibleError("requested path edge " + std::to_string(requested[i]) + " is uncoverable");
  }
  OracleResult r{best[0], {}, "interval-dp"};
  for (std::size_t i = 0; i < k; i = static_cast<std::size_t>(jump[i])) r.witness.push_back(links[choice[i]].id);
  r.witness = sorted_unique(std::move(r.witness));
  return r;
}

inline OracleResult opt_path_dp(const MinimalPathInstance& inst, std::vector<int> requested) {
  return opt_path_dp(inst.links, std::move(requested));
}

inline constexpr std::size_t kEnumLinkGuard = 24;

namespace detail {

class CoverSearch {
 public:
  CoverSearch(std::vector<Cost> costs, std::vector<std::uint64_t> masks, std::uint64_t all)
      : costs_(std::move(costs)), masks_(std::move(masks)), all_(all) {
    order_.resize(costs_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return costs_[a] < costs_[b]; });
    const int bits = 64;
    cheapest_.assign(bits, std::numeric_limits<Cost>::max());
    for (std::size_t i = 0; i < costs_.size(); ++i)
      for (int b = 0; b < bits; ++b)
        if ((masks_[i] >> b) & 1u) cheapest_[b] = std::min(cheapest_[b], costs_[i]);
  }

  bool solve(Cost& cost, std::vector<int>& picked) {
    best_ = std::numeric_limits<Cost>::max();
    std::vector<int> cur;
    search(0, 0, cur);
    if (best_ == std::numeric_limits<Cost>::max()) return false;
    cost = best_;
    picked = best_set_;
    return true;
  }

 private:
  void search(std::uint64_t covered, Cost spent, std::vector<int>& cur) {
    if (covered == all_) {
      if (spent < best_) {
        best_ = spent;
        best_set_ = cur;
      }
      return;
    }
    const std::uint64_t open = all_ & ~covered;
    Cost bound = 0;
    for (int b = 0; b < 64; ++b)
      if ((open >> b) & 1u) {
        if (cheapest_[b] == std::numeric_limits<Cost>::max()) return;
        bound = std::max(bound, cheapest_[b]);
      }
    if (spent + bound >= best_) return;
    int first = 0;
    while (!((open >> first) & 1u)) ++first;
    for (const int i : order_) {
      if (!((masks_[i] >> first) & 1u)) continue;
      if (spent + costs_[i] >= best_) break;
      cur.push_back(i);
      search(covered | masks_[i], spent + costs_[i], cur);
      cur.pop_back();
    }
  }

  std::vector<Cost> costs_;
  std::vector<std::uint64_t> masks_;
  std::uint64_t all_;
  std::vector<int> order_;
  std::vector<Cost> cheapest_;
  Cost best_ = 0;
  std::vector<int> best_set_;
};

}  // namespace detail

// Exact minimum over link subsets covering every edge of every requested
// pair's tree path. Branches on the first uncovered edge; prunes by the best
// cost so far plus the largest per-edge cheapest cover.
inline OracleResult opt_tree_enum(const TreeInstance& inst, const std::vector<Request>& requests) {
  if (inst.links().size() > kEnumLinkGuard)
    throw InputError("exhaustive oracle refuses more than " + std::to_string(kEnumLinkGuard) + " links");
  std::vector<int> required;
  for (const auto& r : requests)
    for (const EdgeId e : inst.expand_request(r)) required.push_back(e);
  required = sorted_unique(std::move(required));
  if (required.size() > 64) throw InputError("exhaustive oracle supports at most 64 requested edges");
  std::vector<Cost> costs;
  std::vector<std::uint64_t> masks;
  for (const auto& l : inst.links()) {
    std::uint64_t m = 0;
    for (std::size_t b = 0; b < required.size(); ++b)
      if (inst.covers(l, required[b])) m |= std::uint64_t{1} << b;
    costs.push_back(l.cost);
    masks.push_back(m);
  }
  const std::uint64_t all = required.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << required.size()) - 1;
  OracleResult r{0, {}, "subset-enum"};
  if (required.empty()) return r;
  std::vector<int> picked;
  if (!detail::CoverSearch(costs, masks, all).solve(r.opt_cost, picked))
    throw InfeasibleError("some requested edge is covered by no link");
  r.witness = sorted_unique(std::move(picked));
  return r;
}

struct DualCheck {
  bool feasible = true;
  std::vector<int> violators;
};

// Packing constraints: the duals on each link's path sum to at most its cost.
inline DualCheck verify_dual_feasible(const std::vector<Cost>& y, const std::vector<PathLink>& links) {
  DualCheck out;
  for (const auto& l : links) {
    Cost s = 0;
    for (int e = l.left; e < l.right; ++e) s += y[e];
    if (s > l.cost) {
      out.feasible = false;
      out.violators.push_back(l.id);
    }
  }
  return out;
}

// Constants used by the niceness certificate.
inline constexpr double kNiceCostConstant = 24.0;   // c(F) <= 24 * sum(y_hat)
inline constexpr double kNonRootedLoadFactor = 2.0; // times (2 log2 n + 1)
inline constexpr double kRootedLoadConstant = 3.0;
inline constexpr std::size_t kNiceEnumGuard = 14;

inline double log_factor(long long n_global) { return 2.0 * std::log2(static_cast<double>(n_global)) + 1.0; }

struct NiceCertificate {
  Cost cost = 0;
  Cost hat_total = 0;
  double cost_constant = 0;          // c(F) / sum(y_hat)
  double max_nonrooted_ratio = 0;    // load_hat / ((2 log2 n + 1) c)
  double max_rooted_ratio = 0;       // load_hat / c
  bool cost_ok = true;
  bool nonrooted_ok = true;
  bool rooted_ok = true;
  bool enumerated = false;
  long long feasible_solutions = 0;
  double max_enum_constant = 0;      // max c(F) / (c(R*) + (2 log2 n + 1) c(S*))
  bool enum_ok = true;
  std::vector<std::string> violations;

  bool ok() const { return cost_ok && nonrooted_ok && rooted_ok && enum_ok; }
};

// Checks the dual conditions that imply niceness, and when the instance is
// small enough checks niceness itself against every feasible solution.
inline NiceCertificate verify_nice(const PathSolver& solver, const std::vector<int>& requested,
                                   long long n_global) {
  const auto& inst = solver.instance();
  NiceCertificate cert;
  const auto hat = solver.hat_dual(n_global);
  cert.cost = solver.cost();
  cert.hat_total = hat.total;
  const double lf = log_factor(n_global);
  if (cert.hat_total > 0) cert.cost_constant = static_cast<double>(cert.cost) / static_cast<double>(cert.hat_total);
  if (static_cast<double>(cert.cost) > kNiceCostConstant * static_cast<double>(cert.hat_total)) {
    cert.cost_ok = false;
    cert.violations.push_back("c(F) exceeds 24 * sum(y_hat)");
  }
  for (const auto& l : inst.links) {
    Cost load = 0;
    for (int e = l.left; e < l.right; ++e) load += hat.y_hat[e];
    const double ratio = static_cast<double>(load) / static_cast<double>(l.cost);
    if (l.rooted()) {
      cert.max_rooted_ratio = std::max(cert.max_rooted_ratio, ratio);
      if (load > 3 * l.cost) {
        cert.rooted_ok = false;
        cert.violations.push_back("rooted link " + std::to_string(l.id) + " hat load exceeds 3c");
      }
    } else {
      cert.max_nonrooted_ratio = std::max(cert.max_nonrooted_ratio, ratio / lf);
      if (static_cast<double>(load) > kNonRootedLoadFactor * lf * static_cast<double>(l.cost)) {
        cert.nonrooted_ok = false;
        cert.violations.push_back("non-rooted link " + std::to_string(l.id) + " hat load exceeds 2(2log n+1)c");
      }
    }
  }

  const auto req = sorted_unique(requested);
  if (inst.links.size() <= kNiceEnumGuard && req.size() <= 64) {
    cert.enumerated = true;
    std::vector<std::uint64_t> masks;
    for (const auto& l : inst.links) {
      std::uint64_t m = 0;
      for (std::size_t b = 0; b < req.size(); ++b)
        if (l.covers(req[b])) m |= std::uint64_t{1} << b;
      masks.push_back(m);
    }
    const std::uint64_t all = req.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << req.size()) - 1;
    const std::size_t count = std::size_t{1} << inst.links.size();
    for (std::size_t s = 0; s < count; ++s) {
      std::uint64_t cov = 0;
      Cost rooted = 0, nonrooted = 0;
      for (std::size_t i = 0; i < inst.links.size(); ++i) {
        if (!((s >> i) & 1u)) continue;
        cov |= masks[i];
        (inst.links[i].rooted() ? rooted : nonrooted) += inst.links[i].cost;
      }
      if ((cov & all) != all) continue;
      ++cert.feasible_solutions;
      const double denom = static_cast<double>(rooted) + lf * static_cast<double>(nonrooted);
      if (denom <= 0) {
        if (cert.cost > 0) {
          cert.enum_ok = false;
          cert.violations.push_back("positive cost against an empty feasible solution");
        }
        continue;
      }
      const double c = static_cast<double>(cert.cost) / denom;
      cert.max_enum_constant = std::max(cert.max_enum_constant, c);
      if (c > kNiceCostConstant) {
        cert.enum_ok = false;
        cert.violations.push_back("niceness fails against solution mask " + std::to_string(s));
      }
    }
  }
  return cert;
}

}  // namespace wtap
