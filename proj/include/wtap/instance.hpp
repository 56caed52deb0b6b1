#pragma once

// Trees, links, requests, and the path/coverage primitives shared by every
// other component.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "wtap/errors.hpp"

namespace wtap {

using Vertex = int;
using EdgeId = int;
using LinkId = int;
using Cost = std::int64_t;
using Rational = boost::rational<std::int64_t>;

// Largest class accepted after normalization; keeps every cost and every
// lambda*y product comfortably inside 64 bits.
inline constexpr int kMaxClass = 40;

struct Link {
  LinkId id = 0;
  Vertex u = 0;
  Vertex v = 0;
  Cost cost = 1;  // always 2^cls
  int cls = 0;
};

// A terminal pair, or a single tree edge when `edge` is set.
struct Request {
  Vertex s = 0;
  Vertex t = 0;
  std::optional<EdgeId> edge;

  static Request pair(Vertex s, Vertex t) { return Request{s, t, std::nullopt}; }
  static Request elementary(EdgeId e) { return Request{0, 0, e}; }
  bool is_elementary() const { return edge.has_value(); }
};

struct TreePath {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;

  bool empty() const { return edges.empty(); }
};

struct RoundedCost {
  Cost cost = 1;
  int cls = 0;
};

inline bool operator==(const RoundedCost& a, const RoundedCost& b) {
  return a.cost == b.cost && a.cls == b.cls;
}

// Scales by the minimum raw cost, then rounds each value up to the next power
// of two.
inline std::vector<RoundedCost> round_costs(const std::vector<Rational>& raw) {
  std::vector<RoundedCost> out;
  if (raw.empty()) return out;
  for (const auto& r : raw) {
    if (r <= 0) throw InputError("link costs must be positive (pre-buy zero-cost links)");
  }
  const Rational lo = *std::min_element(raw.begin(), raw.end());
  out.reserve(raw.size());
  for (const auto& r : raw) {
    const Rational scaled = r / lo;
    int cls = 0;
    Rational pow = 1;
    while (pow < scaled) {
      ++cls;
      if (cls > kMaxClass) throw InputError("cost spread exceeds 2^40");
      pow *= 2;
    }
    out.push_back({Cost{1} << cls, cls});
  }
  return out;
}

class TreeInstance {
 public:
  TreeInstance() = default;

  // Validates the tree, rounds the raw costs, and builds the rooted
  // auxiliary tables.
  TreeInstance(int n, Vertex root, std::vector<std::pair<Vertex, Vertex>> edges,
               std::vector<std::pair<Vertex, Vertex>> link_ends, std::vector<Rational> raw_costs,
               std::vector<Request> requests = {})
      : n_(n),
        root_(root),
        edges_(std::move(edges)),
        raw_costs_(std::move(raw_costs)),
        requests_(std::move(requests)) {
    if (n_ < 1) throw InputError("vertex count must be positive");
    check_vertex(root_);
    if (static_cast<int>(edges_.size()) != n_ - 1)
      throw InputError("a spanning tree on n vertices has exactly n-1 edges");
    if (link_ends.size() != raw_costs_.size())
      throw InputError("one raw cost per link required");
    for (const auto& [a, b] : edges_) {
      check_vertex(a);
      check_vertex(b);
      if (a == b) throw InputError("tree edge is a self-loop");
    }
    build_rooted();
    const auto rounded = round_costs(raw_costs_);
    links_.reserve(link_ends.size());
    for (std::size_t i = 0; i < link_ends.size(); ++i) {
      const auto [a, b] = link_ends[i];
      check_vertex(a);
      check_vertex(b);
      if (a == b) throw InputError("link endpoints must be distinct");
      links_.push_back(Link{static_cast<LinkId>(i), a, b, rounded[i].cost, rounded[i].cls});
    }
    for (const auto& r : requests_) {
      if (r.is_elementary()) {
        check_edge(*r.edge);
      } else {
        check_vertex(r.s);
        check_vertex(r.t);
      }
    }
  }

  int n() const { return n_; }
  int num_edges() const { return n_ - 1; }
  Vertex root() const { return root_; }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Rational>& raw_costs() const { return raw_costs_; }
  const std::vector<Request>& requests() const { return requests_; }

  Vertex parent(Vertex v) const { return parent_[v]; }
  int depth(Vertex v) const { return depth_[v]; }
  const std::vector<Vertex>& children(Vertex v) const { return children_[v]; }
  // Edge ids are identified with their child endpoint once rooted.
  EdgeId parent_edge(Vertex v) const { return parent_edge_[v]; }
  Vertex child_of(EdgeId e) const { return child_of_edge_[e]; }
  // Vertices in BFS order from the root.
  const std::vector<Vertex>& order() const { return order_; }

  bool is_ancestor(Vertex a, Vertex v) const { return tin_[a] <= tin_[v] && tout_[v] <= tout_[a]; }

  Vertex lca(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (is_ancestor(u, v)) return u;
    if (is_ancestor(v, u)) return v;
    for (int k = static_cast<int>(up_.size()) - 1; k >= 0; --k) {
      const Vertex w = up_[k][u];
      if (!is_ancestor(w, v)) u = w;
    }
    return up_[0][u];
  }

  TreePath tree_path(Vertex u, Vertex v) const {
    TreePath p;
    if (u == v) return p;
    const Vertex a = lca(u, v);
    for (Vertex x = u; x != a; x = parent_[x]) {
      p.vertices.push_back(x);
      p.edges.push_back(parent_edge_[x]);
    }
    p.vertices.push_back(a);
    std::vector<Vertex> down;
    for (Vertex x = v; x != a; x = parent_[x]) down.push_back(x);
    for (auto it = down.rbegin(); it != down.rend(); ++it) {
      p.edges.push_back(parent_edge_[*it]);
      p.vertices.push_back(*it);
    }
    return p;
  }

  TreePath link_path(const Link& l) const { return tree_path(l.u, l.v); }

  // True iff the link crosses the fundamental cut of edge e.
  bool covers(const Link& l, EdgeId e) const {
    const Vertex c = child_of_edge_[e];
    return is_ancestor(c, l.u) != is_ancestor(c, l.v);
  }

  std::vector<LinkId> cov(EdgeId e) const {
    check_edge(e);
    std::vector<LinkId> out;
    for (const auto& l : links_)
      if (covers(l, e)) out.push_back(l.id);
    return out;
  }

  // Edges of P(s,t) in order from s to t.
  std::vector<EdgeId> expand_request(const Request& r) const {
    if (r.is_elementary()) {
      check_edge(*r.edge);
      return {*r.edge};
    }
    check_vertex(r.s);
    check_vertex(r.t);
    return tree_path(r.s, r.t).edges;
  }

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw InputError("vertex id out of range: " + std::to_string(v));
  }
  void check_edge(EdgeId e) const {
    if (e < 0 || e >= num_edges()) throw InputError("edge id out of range: " + std::to_string(e));
  }

 private:
  void build_rooted() {
    std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj(n_);
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
      adj[edges_[e].first].push_back({edges_[e].second, e});
      adj[edges_[e].second].push_back({edges_[e].first, e});
    }
    parent_.assign(n_, -1);
    parent_edge_.assign(n_, -1);
    depth_.assign(n_, 0);
    children_.assign(n_, {});
    child_of_edge_.assign(edges_.size(), -1);
    std::vector<char> seen(n_, 0);
    order_.clear();
    order_.push_back(root_);
    seen[root_] = 1;
    parent_[root_] = root_;
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const Vertex x = order_[head];
      for (const auto& [w, e] : adj[x]) {
        if (seen[w]) continue;
        seen[w] = 1;
        parent_[w] = x;
        parent_edge_[w] = e;
        child_of_edge_[e] = w;
        depth_[w] = depth_[x] + 1;
        children_[x].push_back(w);
        order_.push_back(w);
      }
    }
    if (static_cast<int>(order_.size()) != n_) throw InputError("tree edges do not connect all vertices");
    for (auto& ch : children_) std::sort(ch.begin(), ch.end());

    tin_.assign(n_, 0);
    tout_.assign(n_, 0);
    int timer = 0;
    std::vector<std::pair<Vertex, std::size_t>> stack{{root_, 0}};
    tin_[root_] = timer++;
    while (!stack.empty()) {
      auto& [x, next] = stack.back();
      if (next < children_[x].size()) {
        const Vertex w = children_[x][next++];
        tin_[w] = timer++;
        stack.push_back({w, 0});
      } else {
        tout_[x] = timer++;
        stack.pop_back();
      }
    }

    int levels = 1;
    while ((1 << levels) < n_) ++levels;
    up_.assign(levels, std::vector<Vertex>(n_));
    up_[0] = parent_;
    for (int k = 1; k < levels; ++k)
      for (Vertex v = 0; v < n_; ++v) up_[k][v] = up_[k - 1][up_[k - 1][v]];
  }

  int n_ = 1;
  Vertex root_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<Rational> raw_costs_;
  std::vector<Link> links_;
  std::vector<Request> requests_;

  std::vector<Vertex> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<Vertex> child_of_edge_;
  std::vector<int> depth_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<Vertex> order_;
  std::vector<int> tin_, tout_;
  std::vector<std::vector<Vertex>> up_;
};

}  // namespace wtap
