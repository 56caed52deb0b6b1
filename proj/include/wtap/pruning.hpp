#pragma once

// Links on a single rooted path, and reduction of an arbitrary link set on
// such a path to a minimal instance.
//
// Positions run 0..num_edges along the path with the root at 0. A link
// [left, right] covers the edges left .. right-1; edge k joins positions k
// and k+1.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wtap/instance.hpp"

namespace wtap {

struct PathLink {
  int id = 0;         // index within its path instance
  LinkId source = 0;  // id of the link this one stands for
  int left = 0;
  int right = 0;
  int cls = 0;
  Cost cost = 1;

  bool rooted() const { return left == 0; }
  bool covers(int edge) const { return left <= edge && edge < right; }
  // P(this) contains P(o).
  bool contains(const PathLink& o) const { return left <= o.left && o.right <= right; }
  // Share an edge without either containing the other.
  bool crosses(const PathLink& o) const {
    return left < o.right && o.left < right && !contains(o) && !o.contains(*this);
  }
  int length() const { return right - left; }
};

struct MinimalPathInstance {
  int num_edges = 0;
  std::vector<PathLink> links;  // links[i].id == i

  std::vector<int> cov(int edge) const {
    std::vector<int> out;
    for (const auto& l : links)
      if (l.covers(edge)) out.push_back(l.id);
    return out;
  }
};

// Renumbers ids to match positions.
inline MinimalPathInstance make_path_instance(int num_edges, std::vector<PathLink> links) {
  MinimalPathInstance inst{num_edges, std::move(links)};
  for (std::size_t i = 0; i < inst.links.size(); ++i) {
    auto& l = inst.links[i];
    if (l.left < 0 || l.right > num_edges || l.left >= l.right)
      throw InputError("path link outside the path or empty");
    l.id = static_cast<int>(i);
  }
  return inst;
}

// Drops every rooted link dominated by a rooted link of the same or lower
// class whose path contains it. Non-rooted links pass through untouched.
// Among exact duplicates the smaller id survives.
inline std::vector<PathLink> prune_rooted(const std::vector<PathLink>& links) {
  std::vector<PathLink> rooted, out;
  for (const auto& l : links) (l.rooted() ? rooted : out).push_back(l);
  std::sort(rooted.begin(), rooted.end(), [](const PathLink& a, const PathLink& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    if (a.right != b.right) return a.right > b.right;
    return a.id < b.id;
  });
  int reach = 0;  // furthest right endpoint among strictly lower classes
  int current_cls = -1;
  int class_reach = 0;
  std::vector<PathLink> kept;
  for (const auto& l : rooted) {
    if (l.cls != current_cls) {
      reach = std::max(reach, class_reach);
      current_cls = l.cls;
      class_reach = 0;
      if (l.right > reach) kept.push_back(l);
      class_reach = l.right;
    }
  }
  out.insert(out.end(), kept.begin(), kept.end());
  std::sort(out.begin(), out.end(), [](const PathLink& a, const PathLink& b) { return a.id < b.id; });
  return out;
}

namespace detail {

// Greedy minimum cover of the edge set `targets` (sorted, unique) by
// `candidates`. Returns nullopt when some target edge has no candidate.
inline std::optional<std::vector<PathLink>> greedy_cover(const std::vector<int>& targets,
                                                         std::vector<PathLink> candidates) {
  std::sort(candidates.begin(), candidates.end(), [](const PathLink& a, const PathLink& b) {
    if (a.left != b.left) return a.left < b.left;
    return a.id < b.id;
  });
  std::vector<PathLink> chosen;
  std::size_t next = 0;
  std::size_t t = 0;
  while (t < targets.size()) {
    const int frontier = targets[t];
    const PathLink* best = nullptr;
    for (; next < candidates.size() && candidates[next].left <= frontier; ++next) {
    }
    for (std::size_t i = 0; i < next; ++i) {
      const auto& c = candidates[i];
      if (c.right <= frontier) continue;
      if (!best || c.right > best->right || (c.right == best->right && c.id < best->id)) best = &c;
    }
    if (!best) return std::nullopt;
    chosen.push_back(*best);
    const int reach = best->right;
    while (t < targets.size() && targets[t] < reach) ++t;
  }
  return chosen;
}

inline std::vector<int> edges_of(const std::vector<PathLink>& links) {
  std::vector<int> e;
  for (const auto& l : links)
    for (int k = l.left; k < l.right; ++k) e.push_back(k);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

}  // namespace detail

// Minimum-cardinality subset of one class's links covering the union of
// their paths (classic left-to-right interval cover sweep).
inline std::vector<PathLink> prune_class(const std::vector<PathLink>& class_links) {
  auto cover = detail::greedy_cover(detail::edges_of(class_links), class_links);
  auto out = std::move(*cover);
  std::sort(out.begin(), out.end(), [](const PathLink& a, const PathLink& b) { return a.id < b.id; });
  return out;
}

// At most three kept links of the removed link's class whose union covers
// it. Throws when no such cover exists, which would mean the pruning broke
// its own guarantee.
inline std::vector<PathLink> replacement_cover(const PathLink& removed,
                                               const std::vector<PathLink>& kept) {
  std::vector<int> targets;
  for (int k = removed.left; k < removed.right; ++k) targets.push_back(k);
  std::vector<PathLink> same;
  for (const auto& l : kept)
    if (l.cls == removed.cls) same.push_back(l);
  auto cover = detail::greedy_cover(targets, same);
  if (!cover) throw InvariantError("uncoverable pruned link " + std::to_string(removed.id));
  if (cover->size() > 3)
    throw InvariantError("pruned link " + std::to_string(removed.id) + " needs " +
                         std::to_string(cover->size()) + " replacements");
  return *cover;
}

struct RemovedLink {
  PathLink link;
  // Rooted removals: the surviving rooted link that dominates it.
  std::optional<PathLink> dominated_by;
  // Class-cover removals: the replacement cover.
  std::vector<PathLink> replacement;
};

struct PruneResult {
  MinimalPathInstance instance;  // ids renumbered; `source` preserved
  std::vector<int> kept_from;    // pruned id -> id in the input list
  std::vector<RemovedLink> removed;
};

// Full pruning: rooted links first, then a minimum cover per class. The
// surviving rooted link of a class takes part in that class's cover; it is
// the only class member covering edge 0, so every cover keeps it.
inline PruneResult prune(int num_edges, const std::vector<PathLink>& input) {
  std::vector<PathLink> links = input;
  for (std::size_t i = 0; i < links.size(); ++i) links[i].id = static_cast<int>(i);

  PruneResult res;
  const auto after_rooted = prune_rooted(links);
  std::vector<char> alive(links.size(), 0);
  for (const auto& l : after_rooted) alive[l.id] = 1;
  std::vector<PathLink> rooted_survivors;
  for (const auto& l : after_rooted)
    if (l.rooted()) rooted_survivors.push_back(l);
  for (const auto& l : links) {
    if (alive[l.id]) continue;
    RemovedLink r{l, std::nullopt, {}};
    for (const auto& s : rooted_survivors)
      if (s.cls <= l.cls && s.contains(l) && (!r.dominated_by || s.cls < r.dominated_by->cls))
        r.dominated_by = s;
    if (!r.dominated_by) throw InvariantError("rooted pruning lost its dominating link");
    res.removed.push_back(r);
  }

  std::map<int, std::vector<PathLink>> by_class;
  for (const auto& l : after_rooted) by_class[l.cls].push_back(l);
  std::vector<PathLink> kept;
  for (auto& [cls, members] : by_class) {
    const auto cover = prune_class(members);
    std::vector<char> in_cover(links.size(), 0);
    for (const auto& l : cover) in_cover[l.id] = 1;
    for (const auto& l : members)
      if (!in_cover[l.id]) res.removed.push_back(RemovedLink{l, std::nullopt, replacement_cover(l, cover)});
    kept.insert(kept.end(), cover.begin(), cover.end());
  }
  std::sort(kept.begin(), kept.end(), [](const PathLink& a, const PathLink& b) { return a.id < b.id; });
  for (const auto& l : kept) res.kept_from.push_back(l.id);
  res.instance = make_path_instance(num_edges, kept);
  return res;
}

// Violations of the minimal-instance properties, empty when minimal.
inline std::vector<std::string> minimality_violations(const MinimalPathInstance& inst) {
  std::vector<std::string> out;
  std::map<int, int> rooted_per_class;
  for (const auto& l : inst.links)
    if (l.rooted() && ++rooted_per_class[l.cls] > 1)
      out.push_back("class " + std::to_string(l.cls) + " has two rooted links");
  for (int e = 0; e < inst.num_edges; ++e) {
    std::map<int, int> depth;
    for (const auto& l : inst.links)
      if (l.covers(e) && ++depth[l.cls] == 3)
        out.push_back("edge " + std::to_string(e) + " covered by 3 links of class " +
                      std::to_string(l.cls));
  }
  for (const auto& a : inst.links)
    for (const auto& b : inst.links)
      if (a.rooted() && b.rooted() && a.cls > b.cls && !(a.contains(b) && a.right > b.right))
        out.push_back("rooted links " + std::to_string(a.id) + " and " + std::to_string(b.id) +
                      " not nested by class");
  return out;
}

// Constructive content of "nice for the pruning implies nice for the
// original". Given a feasible solution over the input links, builds one over
// the kept links made of a single rooted link (the kept link dominating the
// deepest rooted link of the solution) plus replacements for the non-rooted
// links. The rooted part costs at most the original rooted part, the
// replacement part at most three times the original non-rooted part.
// Replacement covers may contain a class's rooted survivor; such a link is
// charged to the replacement part.
struct TransferredSolution {
  std::optional<int> rooted_link;  // id in the pruned instance
  std::vector<int> replacement;    // ids in the pruned instance
  std::vector<int> links;          // union of both parts
  Cost rooted_cost = 0;
  Cost replacement_cost = 0;
  Cost original_rooted_cost = 0;
  Cost original_nonrooted_cost = 0;
};

inline TransferredSolution transfer_solution(const PruneResult& pr, const std::vector<PathLink>& input,
                                             const std::vector<int>& solution) {
  std::vector<int> pruned_id(input.size(), -1);
  for (std::size_t i = 0; i < pr.kept_from.size(); ++i) pruned_id[pr.kept_from[i]] = static_cast<int>(i);
  std::vector<const RemovedLink*> removed_of(input.size(), nullptr);
  for (const auto& r : pr.removed) removed_of[r.link.id] = &r;
  auto kept_id = [&](int original_id) {
    const int p = pruned_id[original_id];
    if (p < 0) throw InvariantError("replacement refers to a removed link");
    return p;
  };

  TransferredSolution out;
  int deepest = -1;
  for (const int id : solution) {
    const auto& l = input[id];
    if (l.rooted()) {
      out.original_rooted_cost += l.cost;
      if (deepest < 0 || l.right > input[deepest].right) deepest = id;
    } else {
      out.original_nonrooted_cost += l.cost;
    }
  }
  if (deepest >= 0) {
    if (pruned_id[deepest] >= 0) {
      out.rooted_link = pruned_id[deepest];
    } else if (removed_of[deepest] && removed_of[deepest]->dominated_by) {
      out.rooted_link = kept_id(removed_of[deepest]->dominated_by->id);
    } else {
      throw InvariantError("rooted link removed without a dominating survivor");
    }
    out.rooted_cost = pr.instance.links[*out.rooted_link].cost;
  }

  std::vector<char> in_repl(pr.instance.links.size(), 0);
  for (const int id : solution) {
    if (input[id].rooted()) continue;
    if (pruned_id[id] >= 0) {
      in_repl[pruned_id[id]] = 1;
    } else {
      for (const auto& r : removed_of[id]->replacement) in_repl[kept_id(r.id)] = 1;
    }
  }
  for (std::size_t i = 0; i < in_repl.size(); ++i) {
    if (!in_repl[i]) continue;
    out.replacement.push_back(static_cast<int>(i));
    out.replacement_cost += pr.instance.links[i].cost;
  }
  out.links = out.replacement;
  if (out.rooted_link && !in_repl[*out.rooted_link]) {
    out.links.push_back(*out.rooted_link);
    std::sort(out.links.begin(), out.links.end());
  }
  return out;
}

}  // namespace wtap
