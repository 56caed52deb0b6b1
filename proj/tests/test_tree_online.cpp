#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "brute.hpp"

using namespace wtap;

TEST(TreeSolver, PathGraphHasOnePathInstance) {
  const TreeInstance t(5, 0, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {{0, 2}, {1, 4}, {2, 3}, {0, 4}}, {1, 2, 1, 8});
  TreeSolver s(t);
  ASSERT_EQ(s.tasks().size(), 1u);
  const auto& task = s.tasks()[0];
  std::vector<PathLink> direct;
  for (const auto& l : t.links()) direct.push_back(PathLink{0, l.id, std::min(l.u, l.v), std::max(l.u, l.v), l.cls, l.cost});
  const auto want = prune(4, direct).instance;
  auto key = [](const MinimalPathInstance& m) {
    std::set<std::tuple<int, int, int>> out;
    for (const auto& l : m.links) out.insert({l.left, l.right, l.source});
    return out;
  };
  EXPECT_EQ(key(task.pruned.instance), key(want));
}

TEST(TreeSolver, StarLeafToLeafLinksProjectTwiceRooted) {
  const TreeInstance t(5, 0, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {{1, 2}, {3, 4}, {1, 4}}, {1, 1, 1});
  TreeSolver s(t);
  for (const auto& l : t.links()) {
    const auto& pr = s.projections(l.id);
    ASSERT_EQ(pr.size(), 2u);
    for (const auto& p : pr) EXPECT_TRUE(p.rooted);
  }
}

TEST(TreeSolver, SingleEdgeRequest) {
  const TreeInstance t(3, 0, {{0, 1}, {1, 2}}, {{1, 2}, {0, 2}}, {1, 4});
  TreeSolver s(t);
  const auto rep = s.serve(Request::elementary(1));
  EXPECT_EQ(rep.bought, (std::vector<LinkId>{0}));
  EXPECT_EQ(s.cost(), 1);
  EXPECT_TRUE(s.covered(1));
  EXPECT_FALSE(s.covered(0));
}

TEST(TreeSolver, DegenerateRequestIsNoop) {
  const TreeInstance t(3, 0, {{0, 1}, {1, 2}}, {{1, 2}}, {1});
  TreeSolver s(t);
  const auto rep = s.serve_pair(2, 2);
  EXPECT_TRUE(rep.elementary.empty());
  EXPECT_TRUE(rep.bought.empty());
  EXPECT_EQ(s.cost(), 0);
}

TEST(TreeSolver, InfeasibleRequest) {
  const TreeInstance t(3, 0, {{0, 1}, {1, 2}}, {{1, 2}}, {1});
  TreeSolver s(t);
  EXPECT_THROW(s.serve_pair(0, 2), InfeasibleError);
}

TEST(TreeSolver, ProjectionMultiplicityAtMostWidth) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 40; ++it) {
    GenOptions g;
    g.n = 2 + static_cast<int>(rng() % 60);
    g.links = 30;
    g.seed = it + 1;
    const auto t = gen_random(g);
    TreeSolver s(t);
    const int w = width(t, s.decomposition());
    for (const auto& l : t.links()) EXPECT_LE(static_cast<int>(s.projections(l.id).size()), w);
  }
}

TEST(TreeSolver, RandomRunsCoverAndStayWithinLogFactor) {
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    GenOptions g;
    g.n = 3 + static_cast<int>(seed % 7);
    g.links = 8;
    g.requests = 6;
    g.seed = seed;
    const auto t = gen_random(g);
    TreeSolver s(t);
    for (const auto& r : t.requests()) {
      const auto rep = s.serve(r);
      for (const EdgeId e : rep.elementary) EXPECT_TRUE(s.covered(e));
    }
    EXPECT_LE(s.cost(), s.per_path_cost());
    // bought links are exactly the purchases reported per request
    Cost hist = 0;
    for (const auto& h : s.history()) hist += h.incremental_cost;
    EXPECT_EQ(hist, s.cost());
    std::vector<EdgeId> req;
    for (const auto& r : t.requests())
      for (const EdgeId e : t.expand_request(r)) req.push_back(e);
    const Cost opt = brute::tree_min_cover(t, req);
    if (req.empty()) continue;
    EXPECT_EQ(opt, opt_tree_enum(t, t.requests()).opt_cost);
    const double ratio = static_cast<double>(s.cost()) / static_cast<double>(opt);
    worst = std::max(worst, ratio / std::log2(static_cast<double>(g.n)));
    EXPECT_LE(ratio, 8 * std::log2(static_cast<double>(g.n)));
  }
  RecordProperty("max_ratio_over_log2n", std::to_string(worst));
}

TEST(TreeSolver, LiteralRuleAlsoRuns) {
  PathSolverOptions o;
  o.rooted_selection = RootedSelection::kUnpurchasedOnly;
  GenOptions g;
  g.n = 12;
  g.links = 15;
  g.requests = 10;
  const auto t = gen_random(g);
  TreeSolver s(t, o);
  for (const auto& r : t.requests()) s.serve(r);
  for (const auto& r : t.requests())
    for (const EdgeId e : t.expand_request(r)) EXPECT_TRUE(s.covered(e));
}
