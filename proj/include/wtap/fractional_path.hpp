#pragma once

// Deterministic fractional online path augmentation. Small requests (some
// covering link costs at most OPT_i / n) get their cheapest such link
// outright; large requests run a multiplicative update over the links whose
// cost lies in [OPT_i / n, 2 OPT_i].
//
// The continuous update dx/dt = (x + theta) / c has the closed form
// x(t) = (x(0) + theta) e^{t/c} - theta, so each large request reduces to
// finding the stopping time t* by bisection.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "wtap/oracles.hpp"
#include "wtap/pruning.hpp"

namespace wtap {

inline constexpr double kCoverageTolerance = 1e-9;

struct FracStep {
  int request = 0;
  bool skipped = false;  // already covered to 1
  bool small = false;
  Cost opt_i = 0;
  double t_star = 0;
  std::vector<int> band;  // L_i, large requests only
  int chosen = -1;        // small requests: the link set to 1
  double incremental_cost = 0;
  double coverage = 0;    // sum of x over cov(e) after the step
};

// floor(log2 OPT), or nullopt before any positive optimum.
inline std::optional<int> phase_of(Cost opt) {
  if (opt <= 0) return std::nullopt;
  int j = 0;
  while ((Cost{1} << (j + 1)) <= opt) ++j;
  return j;
}

class FractionalSolver {
 public:
  explicit FractionalSolver(MinimalPathInstance inst)
      : inst_(std::move(inst)), x_(inst_.links.size(), 0.0) {
    theta_ = inst_.num_edges >= 2 ? 1.0 / std::log2(static_cast<double>(inst_.num_edges)) : 1.0;
  }

  const MinimalPathInstance& instance() const { return inst_; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<Cost>& opt_history() const { return opt_history_; }
  const std::vector<int>& requests() const { return requests_; }
  const std::vector<FracStep>& steps() const { return steps_; }
  double theta() const { return theta_; }

  double cost() const {
    double c = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) c += x_[i] * static_cast<double>(inst_.links[i].cost);
    return c;
  }

  double coverage(int edge) const {
    double s = 0;
    for (const auto& l : inst_.links)
      if (l.covers(edge)) s += x_[l.id];
    return s;
  }

  FracStep serve(int edge) {
    if (edge < 0 || edge >= inst_.num_edges) throw InputError("request outside the path");
    FracStep step;
    step.request = edge;
    requests_.push_back(edge);
    step.opt_i = opt_path_dp(inst_, requests_).opt_cost;
    opt_history_.push_back(step.opt_i);
    if (coverage(edge) >= 1.0 - kCoverageTolerance) {
      step.skipped = true;
      step.coverage = coverage(edge);
      steps_.push_back(step);
      return step;
    }

    const double before = cost();
    const Cost n = inst_.num_edges;
    const PathLink* cheapest = nullptr;
    for (const auto& l : inst_.links)
      if (l.covers(edge) && (!cheapest || l.cost < cheapest->cost)) cheapest = &l;
    if (!cheapest) throw InfeasibleError("no link covers path edge");

    if (n < 2 || cheapest->cost * n <= step.opt_i) {
      step.small = true;
      step.chosen = cheapest->id;
      x_[cheapest->id] = 1.0;
    } else {
      for (const auto& l : inst_.links)
        if (l.covers(edge) && l.cost * n >= step.opt_i && l.cost <= 2 * step.opt_i) step.band.push_back(l.id);
      if (step.band.empty()) throw InvariantError("large request with an empty cost band");
      step.t_star = raise_band(step.band);
    }
    step.incremental_cost = cost() - before;
    step.coverage = coverage(edge);
    steps_.push_back(step);
    return step;
  }

  void run(const std::vector<int>& requests) {
    for (const int e : requests) serve(e);
  }

 private:
  double band_sum(const std::vector<int>& band, const std::vector<double>& start, double t) const {
    double s = 0;
    for (std::size_t k = 0; k < band.size(); ++k) {
      const double c = static_cast<double>(inst_.links[band[k]].cost);
      s += std::min(1.0, (start[k] + theta_) * std::exp(t / c) - theta_);
    }
    return s;
  }

  double raise_band(const std::vector<int>& band) {
    std::vector<double> start;
    for (const int id : band) start.push_back(x_[id]);
    if (band_sum(band, start, 0.0) >= 1.0) return 0.0;
    // Any single link reaching 1 is enough.
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < band.size(); ++k) {
      const double c = static_cast<double>(inst_.links[band[k]].cost);
      hi = std::min(hi, c * std::log((1.0 + theta_) / (start[k] + theta_)));
    }
    for (int guard = 0; guard < 64 && band_sum(band, start, hi) < 1.0; ++guard) hi *= 1.0 + 1e-12;
    double lo = 0.0;
    for (int it = 0; it < 500 && band_sum(band, start, hi) > 1.0 + kCoverageTolerance; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (band_sum(band, start, mid) >= 1.0 ? hi : lo) = mid;
    }
    for (std::size_t k = 0; k < band.size(); ++k) {
      const double c = static_cast<double>(inst_.links[band[k]].cost);
      const double v = std::min(1.0, (start[k] + theta_) * std::exp(hi / c) - theta_);
      x_[band[k]] = std::max(x_[band[k]], v);
    }
    return hi;
  }

  MinimalPathInstance inst_;
  std::vector<double> x_;
  double theta_ = 1.0;
  std::vector<Cost> opt_history_;
  std::vector<int> requests_;
  std::vector<FracStep> steps_;
};

// Checks of the run against the structure its analysis relies on.
struct FractionalAudit {
  double small_cost = 0;
  Cost opt = 0;
  bool small_ok = true;             // small-request cost <= OPT
  std::size_t max_band = 0;
  std::size_t band_bound = 0;       // 2 (floor(log2 2n) + 1)
  bool band_ok = true;
  Cost restricted_cost = 0;         // cost of the union of per-phase covers
  bool restricted_in_band = true;   // each large request covered from its band
  bool restricted_ok = true;        // restricted cost <= 4 OPT
  bool phases_monotone = true;
  bool opt_monotone = true;

  bool ok() const {
    return small_ok && band_ok && restricted_in_band && restricted_ok && phases_monotone && opt_monotone;
  }
};

inline FractionalAudit audit_fractional(const FractionalSolver& s) {
  FractionalAudit a;
  const auto& steps = s.steps();
  const auto& inst = s.instance();
  a.opt = s.opt_history().empty() ? 0 : s.opt_history().back();
  const long long n = std::max(1, inst.num_edges);
  int lg = 0;
  while ((2LL * n) >> (lg + 1)) ++lg;
  a.band_bound = 2 * static_cast<std::size_t>(lg + 1);
  std::optional<int> prev_phase;
  Cost prev_opt = 0;
  for (const auto& st : steps) {
    if (st.small) a.small_cost += st.incremental_cost;
    a.max_band = std::max(a.max_band, st.band.size());
    if (st.opt_i < prev_opt) a.opt_monotone = false;
    prev_opt = st.opt_i;
    const auto ph = phase_of(st.opt_i);
    if (prev_phase && (!ph || *ph < *prev_phase)) a.phases_monotone = false;
    if (ph) prev_phase = ph;
  }
  a.small_ok = a.small_cost <= static_cast<double>(a.opt) + 1e-9;
  a.band_ok = a.max_band <= a.band_bound;

  // Last step of each phase, then the per-phase optimal covers restricted to
  // that phase's large requests.
  std::vector<char> in_union(inst.links.size(), 0);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto ph = phase_of(steps[i].opt_i);
    if (!ph) continue;
    const bool last = i + 1 == steps.size() || phase_of(steps[i + 1].opt_i) != ph;
    if (!last) continue;
    std::vector<int> prefix(s.requests().begin(), s.requests().begin() + static_cast<long>(i) + 1);
    const auto star = opt_path_dp(inst, prefix);
    for (std::size_t k = 0; k <= i; ++k) {
      const auto& st = steps[k];
      if (st.skipped || st.small || phase_of(st.opt_i) != ph) continue;
      int pick = -1;
      for (const int id : star.witness)
        if (inst.links[id].covers(st.request) &&
            std::find(st.band.begin(), st.band.end(), id) != st.band.end()) {
          pick = id;
          break;
        }
      if (pick < 0) {
        a.restricted_in_band = false;
        continue;
      }
      in_union[pick] = 1;
    }
  }
  for (std::size_t i = 0; i < in_union.size(); ++i)
    if (in_union[i]) a.restricted_cost += inst.links[i].cost;
  a.restricted_ok = a.restricted_cost <= 4 * a.opt;
  return a;
}

}  // namespace wtap
