#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"

using namespace wtap;

namespace {

PathLink L(int left, int right, int cls) { return PathLink{0, 0, left, right, cls, Cost{1} << cls}; }

std::vector<PathLink> numbered(std::vector<PathLink> ls) {
  for (std::size_t i = 0; i < ls.size(); ++i) ls[i].id = static_cast<int>(i);
  return ls;
}

}  // namespace

TEST(PathDp, Basics) {
  std::vector<PathLink> ls = numbered({L(0, 1, 2), L(0, 1, 1)});
  const auto r = opt_path_dp(ls, {0});
  EXPECT_EQ(r.opt_cost, 2);
  EXPECT_EQ(r.witness, (std::vector<int>{1}));
  EXPECT_EQ(r.method, "interval-dp");
  EXPECT_EQ(opt_path_dp(ls, {}).opt_cost, 0);
  EXPECT_TRUE(opt_path_dp(ls, {}).witness.empty());
  EXPECT_THROW(opt_path_dp(ls, {1}), InfeasibleError);
}

TEST(PathDp, CheapestSingleCover) {
  EXPECT_EQ(opt_path_dp(numbered({L(0, 4, 2), L(2, 3, 3)}), {2}).opt_cost, 4);
}

TEST(PathDp, WitnessIsFeasibleAndPriced) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 300; ++it) {
    const int m = 1 + static_cast<int>(rng() % 10);
    auto ls = brute::random_path_links(m, 1 + static_cast<int>(rng() % 12), 3, rng);
    std::vector<int> req;
    for (int e = 0; e < m; ++e)
      if (rng() % 2) req.push_back(e);
    const Cost want = brute::min_cover(ls, req);
    if (want == std::numeric_limits<Cost>::max()) {
      EXPECT_THROW(opt_path_dp(ls, req), InfeasibleError);
      continue;
    }
    const auto r = opt_path_dp(ls, req);
    EXPECT_EQ(r.opt_cost, want);
    Cost c = 0;
    for (const int id : r.witness) c += ls[id].cost;
    EXPECT_EQ(c, r.opt_cost);
    for (const int e : req) {
      bool hit = false;
      for (const int id : r.witness) hit = hit || ls[id].covers(e);
      EXPECT_TRUE(hit);
    }
  }
}

TEST(TreeEnum, Basics) {
  const TreeInstance one(2, 0, {{0, 1}}, {{0, 1}}, {3});
  auto r = opt_tree_enum(one, {Request::pair(0, 1)});
  EXPECT_EQ(r.opt_cost, 1);
  EXPECT_EQ(r.witness, (std::vector<int>{0}));
  EXPECT_EQ(r.method, "subset-enum");
  // two disjoint links needed
  const TreeInstance two(4, 0, {{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {2, 3}, {0, 3}}, {1, 1, 8});
  r = opt_tree_enum(two, {Request::pair(0, 1), Request::pair(2, 3)});
  EXPECT_EQ(r.opt_cost, 2);
  EXPECT_EQ(r.witness, (std::vector<int>{0, 1}));
  EXPECT_EQ(opt_tree_enum(two, {}).opt_cost, 0);
  const TreeInstance gap(4, 0, {{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {2, 3}}, {1, 1});
  EXPECT_THROW(opt_tree_enum(gap, {Request::pair(1, 2)}), InfeasibleError);
}

TEST(TreeEnum, GuardRefusesLargeInstances) {
  GenOptions g;
  g.n = 10;
  g.links = 30;
  const auto t = gen_random(g);
  EXPECT_THROW(opt_tree_enum(t, t.requests()), InputError);
}

TEST(TreeEnum, AgreesWithBruteForceAndPathDp) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    GenOptions g;
    g.kind = seed % 2 ? "random-path" : "random-tree";
    g.n = 2 + static_cast<int>(seed % 8);
    g.links = 6;
    g.requests = 4;
    g.seed = seed;
    g.feasibility = seed % 3 != 0;
    const auto t = gen_random(g);
    std::vector<EdgeId> req;
    for (const auto& r : t.requests())
      for (const EdgeId e : t.expand_request(r)) req.push_back(e);
    const Cost want = brute::tree_min_cover(t, req);
    if (want == std::numeric_limits<Cost>::max()) {
      EXPECT_THROW(opt_tree_enum(t, t.requests()), InfeasibleError);
      continue;
    }
    const auto r = opt_tree_enum(t, t.requests());
    EXPECT_EQ(r.opt_cost, want);
    if (g.kind == "random-path") {
      const auto d = decompose(t);
      ASSERT_EQ(d.paths.size(), 1u);
      EXPECT_EQ(opt_path_dp(projected_links(t, d, 0), path_requests(t, d)).opt_cost, want);
    }
  }
}

TEST(DualCheck, Cases) {
  const auto ls = numbered({L(0, 1, 0), L(0, 2, 1)});
  EXPECT_TRUE(verify_dual_feasible({0, 0}, ls).feasible);
  const auto bad = verify_dual_feasible({2, 0}, ls);
  EXPECT_FALSE(bad.feasible);
  EXPECT_EQ(bad.violators, (std::vector<int>{0}));
}

TEST(NiceCertificate, TrivialRun) {
  PathSolver s(make_path_instance(1, {L(0, 1, 0)}));
  s.serve(0);
  const auto c = verify_nice(s, s.served_requests(), 2);
  EXPECT_TRUE(c.ok());
  EXPECT_TRUE(c.enumerated);
  EXPECT_EQ(c.feasible_solutions, 1);
  EXPECT_DOUBLE_EQ(c.max_enum_constant, 1.0);
}

TEST(NiceCertificate, ThreeVertexTrace) {
  PathSolverOptions o;
  o.rooted_selection = RootedSelection::kUnpurchasedOnly;
  PathSolver s(make_path_instance(2, {L(0, 1, 0), L(1, 2, 0), L(0, 2, 1)}), o);
  s.run({0, 1});
  const auto c = verify_nice(s, s.served_requests(), 3);
  EXPECT_TRUE(c.ok());
  EXPECT_LE(c.max_rooted_ratio, 3.0);
}

TEST(NiceCertificate, RandomMinimalInstances) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::mt19937_64 rng(seed);
    const int m = 1 + static_cast<int>(rng() % 12);
    const auto inst = gen_minimal_path(m, static_cast<int>(rng() % 8), 4, seed);
    if (inst.links.size() > kNiceEnumGuard) continue;
    PathSolver s(inst);
    s.run(random_path_requests(m, m, seed));
    const auto c = verify_nice(s, s.served_requests(), m + 1);
    EXPECT_TRUE(c.ok()) << "seed " << seed << ": " << (c.violations.empty() ? "" : c.violations[0]);
    EXPECT_TRUE(c.enumerated);
  }
}
