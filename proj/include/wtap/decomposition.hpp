#pragma once

// Rooted path decompositions built by recursive balanced caterpillar
// splitting, plus projection of links onto the decomposition paths.

#include <algorithm>
#include <map>
#include <vector>

#include "wtap/instance.hpp"

namespace wtap {

struct DecompPath {
  int id = 0;
  std::vector<Vertex> vertices;  // vertices[0] is the root
  Vertex root = 0;

  int num_edges() const { return static_cast<int>(vertices.size()) - 1; }
};

struct ProjectedLink {
  LinkId source = 0;
  int path = 0;
  // Positions on the path (0 = path root), left < right.
  int left = 0;
  int right = 0;
  Vertex u = 0;  // vertex at `left`
  Vertex v = 0;  // vertex at `right`
  bool rooted = false;
};

namespace detail {
class CaterpillarBuilder;
}

class RootedPathDecomposition {
 public:
  std::vector<DecompPath> paths;
  std::vector<int> edge_to_path;
  int width_bound = 1;

  // For a non-root vertex v: the path containing v's parent edge and v's
  // index on that path.
  int path_of_vertex(Vertex v) const { return path_of_[v]; }
  int position(Vertex v) const { return pos_[v]; }

  int path_of_edge(EdgeId e) const { return edge_to_path[e]; }

  friend RootedPathDecomposition decompose(const TreeInstance& inst);
  friend class detail::CaterpillarBuilder;

 private:
  std::vector<int> path_of_;
  std::vector<int> pos_;
};

inline int ceil_log2(long long x) {
  int k = 0;
  while ((1LL << k) < x) ++k;
  return k;
}

namespace detail {

class CaterpillarBuilder {
 public:
  CaterpillarBuilder(const TreeInstance& inst, RootedPathDecomposition& out)
      : inst_(inst), out_(out), size_(inst.n(), 1) {
    const auto& order = inst.order();
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      if (*it != inst.root()) size_[inst.parent(*it)] += size_[*it];
  }

  void build(Vertex top, Vertex attach) {
    const Vertex centroid = find_centroid(top);
    std::vector<Vertex> spine;
    for (Vertex x = centroid; x != top; x = inst_.parent(x)) spine.push_back(x);
    spine.push_back(top);
    std::reverse(spine.begin(), spine.end());
    for (Vertex x = heavy_child(centroid); x >= 0; x = heavy_child(x)) spine.push_back(x);

    DecompPath path;
    path.id = static_cast<int>(out_.paths.size());
    if (attach >= 0) path.vertices.push_back(attach);
    path.vertices.insert(path.vertices.end(), spine.begin(), spine.end());
    path.root = path.vertices.front();
    if (path.vertices.size() >= 2) {
      for (std::size_t i = 1; i < path.vertices.size(); ++i) {
        const Vertex v = path.vertices[i];
        out_.edge_to_path[inst_.parent_edge(v)] = path.id;
        out_.path_of_[v] = path.id;
        out_.pos_[v] = static_cast<int>(i);
      }
      out_.paths.push_back(std::move(path));
    }

    for (std::size_t i = 0; i < spine.size(); ++i) {
      const Vertex w = spine[i];
      const Vertex next = i + 1 < spine.size() ? spine[i + 1] : -1;
      for (const Vertex x : inst_.children(w))
        if (x != next) build(x, w);
    }
  }

 private:
  // Largest child subtree, ties by smallest id; -1 at a leaf.
  Vertex heavy_child(Vertex v) const {
    Vertex best = -1;
    for (const Vertex c : inst_.children(v))
      if (best < 0 || size_[c] > size_[best]) best = c;
    return best;
  }

  // Vertex of the subtree of `top` whose removal leaves pieces of at most
  // half the subtree size; of two candidates the smaller id wins.
  Vertex find_centroid(Vertex top) const {
    const long long s = size_[top];
    Vertex v = top;
    while (true) {
      const Vertex h = heavy_child(v);
      if (h < 0) return v;
      if (2LL * size_[h] > s) {
        v = h;
      } else {
        if (2LL * size_[h] == s && h < v) return h;
        return v;
      }
    }
  }

  const TreeInstance& inst_;
  RootedPathDecomposition& out_;
  std::vector<long long> size_;
};

}  // namespace detail

inline RootedPathDecomposition decompose(const TreeInstance& inst) {
  RootedPathDecomposition d;
  d.edge_to_path.assign(inst.num_edges(), -1);
  d.path_of_.assign(inst.n(), -1);
  d.pos_.assign(inst.n(), 0);
  d.width_bound = 2 * ceil_log2(inst.n()) + 1;
  detail::CaterpillarBuilder(inst, d).build(inst.root(), -1);
  return d;
}

// Exact width: the maximum over all vertex pairs of the number of
// decomposition paths sharing an edge with P(u,v). The intersection of two
// tree paths is a subpath, so along any walk from u the count increases
// exactly when the path id of the traversed edge changes.
inline int width(const TreeInstance& inst, const RootedPathDecomposition& d) {
  const int n = inst.n();
  std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj(n);
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    const auto [a, b] = inst.edges()[e];
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  int best = 0;
  std::vector<int> count(n), last(n), from(n);
  std::vector<Vertex> stack;
  for (Vertex src = 0; src < n; ++src) {
    count[src] = 0;
    last[src] = -1;
    from[src] = -1;
    stack.assign(1, src);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      best = std::max(best, count[x]);
      for (const auto& [w, e] : adj[x]) {
        if (w == from[x]) continue;
        const int pid = d.edge_to_path[e];
        from[w] = x;
        last[w] = pid;
        count[w] = count[x] + (pid != last[x] ? 1 : 0);
        stack.push_back(w);
      }
    }
  }
  return best;
}

// One projection per decomposition path sharing at least one edge with P(l).
inline std::vector<ProjectedLink> project(const TreeInstance& inst,
                                          const RootedPathDecomposition& d, const Link& l) {
  std::map<int, std::pair<int, int>> span;  // path -> (min pos, max pos)
  for (const EdgeId e : inst.link_path(l).edges) {
    const Vertex c = inst.child_of(e);
    const int pid = d.path_of_vertex(c);
    const int p = d.position(c);
    auto [it, fresh] = span.try_emplace(pid, p - 1, p);
    if (!fresh) {
      it->second.first = std::min(it->second.first, p - 1);
      it->second.second = std::max(it->second.second, p);
    }
  }
  std::vector<ProjectedLink> out;
  out.reserve(span.size());
  for (const auto& [pid, lr] : span) {
    const auto& path = d.paths[pid];
    ProjectedLink p;
    p.source = l.id;
    p.path = pid;
    p.left = lr.first;
    p.right = lr.second;
    p.u = path.vertices[p.left];
    p.v = path.vertices[p.right];
    p.rooted = p.left == 0;
    out.push_back(p);
  }
  return out;
}

}  // namespace wtap
