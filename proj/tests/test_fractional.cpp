#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "brute.hpp"

using namespace wtap;

namespace {

PathLink L(int left, int right, int cls) { return PathLink{0, 0, left, right, cls, Cost{1} << cls}; }

MinimalPathInstance lb_path(int B, int k) {
  const auto h = build_lb_instance(B, k);
  std::vector<PathLink> links = h.links;
  for (auto& l : links) {
    int c = 0;
    while ((Cost{1} << c) < l.cost) ++c;
    l.cls = c;
    l.cost = Cost{1} << c;
  }
  return make_path_instance(h.n, links);
}

}  // namespace

TEST(Fractional, SingleLinkLargeRequest) {
  // one unit link on an 8-edge path: cost * n = 8 > OPT = 1, so large
  std::vector<PathLink> links{L(0, 1, 0)};
  for (int e = 1; e < 8; ++e) links.push_back(L(e, e + 1, 0));
  FractionalSolver s(make_path_instance(8, links));
  const auto st = s.serve(0);
  EXPECT_FALSE(st.small);
  EXPECT_EQ(st.opt_i, 1);
  EXPECT_EQ(st.band, (std::vector<int>{0}));
  EXPECT_NEAR(s.x()[0], 1.0, 1e-9);
  EXPECT_NEAR(st.incremental_cost, 1.0, 1e-9);
  // t* solves (0 + theta) e^t - theta = 1
  EXPECT_NEAR(st.t_star, std::log((1.0 + s.theta()) / s.theta()), 1e-6);
  EXPECT_DOUBLE_EQ(s.theta(), 1.0 / 3.0);
}

TEST(Fractional, SmallRequestOnceOptReachesN) {
  std::vector<PathLink> links;
  for (int e = 0; e < 8; ++e) links.push_back(L(e, e + 1, 0));
  FractionalSolver s(make_path_instance(8, links));
  for (int e = 0; e < 7; ++e) EXPECT_FALSE(s.serve(e).small);
  const auto last = s.serve(7);
  EXPECT_EQ(last.opt_i, 8);
  EXPECT_TRUE(last.small);
  EXPECT_EQ(last.chosen, 7);
  EXPECT_DOUBLE_EQ(s.x()[7], 1.0);
}

TEST(Fractional, CoveredRequestIsSkipped) {
  FractionalSolver s(make_path_instance(2, {L(0, 2, 0)}));
  s.serve(0);
  const double c = s.cost();
  const auto st = s.serve(1);
  EXPECT_TRUE(st.skipped);
  EXPECT_DOUBLE_EQ(s.cost(), c);
}

TEST(Fractional, Errors) {
  FractionalSolver s(make_path_instance(3, {L(0, 1, 0)}));
  EXPECT_THROW(s.serve(5), InputError);
  EXPECT_THROW(s.serve(2), InfeasibleError);
}

TEST(Phase, Values) {
  EXPECT_EQ(phase_of(1), 0);
  EXPECT_EQ(phase_of(5), 2);
  EXPECT_EQ(phase_of(8), 3);
  EXPECT_FALSE(phase_of(0).has_value());
}

TEST(Phase, MonotoneHistoriesGiveMonotonePhases) {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 100; ++it) {
    Cost opt = 1;
    int last = 0;
    for (int i = 0; i < 50; ++i) {
      opt += static_cast<Cost>(rng() % 5);
      const int p = *phase_of(opt);
      EXPECT_GE(p, last);
      last = p;
    }
  }
}

TEST(Fractional, RandomRunsFeasibleMonotoneAudited) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    std::mt19937_64 rng(seed);
    const int m = 2 + static_cast<int>(rng() % 40);
    const auto inst = gen_minimal_path(m, static_cast<int>(rng() % 30), 6, seed);
    FractionalSolver s(inst);
    std::vector<double> prev = s.x();
    for (const int e : random_path_requests(m, m, seed)) {
      const auto st = s.serve(e);
      EXPECT_GE(st.coverage, 1.0 - kCoverageTolerance);
      for (std::size_t i = 0; i < prev.size(); ++i) {
        EXPECT_GE(s.x()[i], prev[i]);
        EXPECT_LE(s.x()[i], 1.0);
      }
      prev = s.x();
    }
    const auto a = audit_fractional(s);
    EXPECT_TRUE(a.ok()) << "seed " << seed;
    EXPECT_LE(s.cost(), static_cast<double>(inst.links.size()) * 1024.0);
  }
}

TEST(Fractional, HierarchicalInstanceLeftToRight) {
  // B = 2, k = 4: n = 256
  const auto inst = lb_path(2, 4);
  FractionalSolver s(inst);
  for (int e = 0; e < inst.num_edges; ++e) s.serve(e);
  const Cost opt = s.opt_history().back();
  EXPECT_EQ(opt, 16);
  const double ratio = s.cost() / static_cast<double>(opt);
  const double loglog = std::log2(std::log2(256.0));
  EXPECT_LE(ratio, 6 * loglog);
  RecordProperty("ratio_over_loglog", std::to_string(ratio / loglog));
  EXPECT_TRUE(audit_fractional(s).ok());
}
