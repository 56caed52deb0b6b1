#include <gtest/gtest.h>

#include <cmath>

#include "brute.hpp"

using namespace wtap;

TEST(Generator, DeterministicPerSeed) {
  GenOptions g;
  g.n = 20;
  g.links = 15;
  g.seed = 99;
  EXPECT_EQ(format_instance(gen_random(g)), format_instance(gen_random(g)));
  auto h = g;
  h.seed = 100;
  EXPECT_NE(format_instance(gen_random(g)), format_instance(gen_random(h)));
}

TEST(Generator, TwoVerticesAllLinksParallel) {
  GenOptions g;
  g.n = 2;
  g.links = 5;
  const auto t = gen_random(g);
  EXPECT_EQ(t.num_edges(), 1);
  for (const auto& l : t.links()) EXPECT_TRUE((l.u == 0 && l.v == 1) || (l.u == 1 && l.v == 0));
}

TEST(Generator, CostsWithinSpread) {
  GenOptions g;
  g.n = 12;
  g.links = 200;
  g.spread = 50;
  g.feasibility = false;
  const auto t = gen_random(g);
  for (const auto& c : t.raw_costs()) {
    EXPECT_GE(c, Rational(1));
    EXPECT_LE(c, Rational(50));
  }
  EXPECT_EQ(t.links().size(), 200u);
}

TEST(Generator, ParameterValidation) {
  GenOptions g;
  g.n = 1;
  EXPECT_THROW(gen_random(g), InputError);
  g.n = 4;
  g.spread = 0.5;
  EXPECT_THROW(gen_random(g), InputError);
  g.spread = 2;
  g.kind = "grid";
  EXPECT_THROW(gen_random(g), InputError);
}

TEST(Generator, PruferTreesAreUniformOverLabels) {
  // all 16 labeled trees on 4 vertices appear from the 16 sequences
  std::set<std::vector<std::pair<int, int>>> trees;
  brute::for_each_tree(4, [&](const auto& edges) {
    std::vector<std::pair<int, int>> norm;
    for (auto [a, b] : edges) norm.push_back({std::min(a, b), std::max(a, b)});
    std::sort(norm.begin(), norm.end());
    trees.insert(norm);
    EXPECT_NO_THROW(brute::bare_tree(4, edges));
  });
  EXPECT_EQ(trees.size(), 16u);
}

TEST(Generator, FeasibilityLayerKeepsPathRunsFeasible) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GenOptions g;
    g.kind = "random-path";
    g.n = 2 + static_cast<int>(seed % 30);
    g.links = 10;
    g.requests = 8;
    g.seed = seed;
    const auto t = gen_random(g);
    EXPECT_NO_THROW({
      const auto rep = run_path_report(t);
      for (const auto& r : rep["invariants"]) EXPECT_TRUE(r["ok"].get<bool>()) << r["check"];
    });
  }
}

TEST(Generator, MinimalPathInstancesAreMinimal) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = gen_minimal_path(1 + static_cast<int>(seed % 64), 40, 6, seed);
    EXPECT_TRUE(minimality_violations(inst).empty());
    for (int e = 0; e < inst.num_edges; ++e) EXPECT_FALSE(inst.cov(e).empty());
  }
}

TEST(ParseRange, Forms) {
  EXPECT_EQ(parse_range("1..4"), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(parse_range("3"), (std::vector<int>{3}));
  EXPECT_EQ(parse_range("2,4,8"), (std::vector<int>{2, 4, 8}));
  EXPECT_THROW(parse_range("4..1"), InputError);
  EXPECT_THROW(parse_range("a..b"), InputError);
}

TEST(Reports, TreeReportFieldsAndVerify) {
  GenOptions g;
  g.n = 8;
  g.links = 8;
  g.requests = 5;
  g.seed = 4;
  const auto t = gen_random(g);
  const auto res = run_tree(t);
  const auto& rep = res.report;
  EXPECT_EQ(rep["instance_digest"], hex_digest(instance_digest(t)));
  EXPECT_EQ(rep["incremental_costs"].size(), t.requests().size());
  EXPECT_TRUE(rep.contains("opt"));
  EXPECT_TRUE(rep.contains("ratio"));
  EXPECT_TRUE(rep.contains("wall_ms"));
  EXPECT_TRUE(rep.contains("config_hash"));
  for (const auto& r : rep["invariants"]) {
    EXPECT_FALSE(r["check"].get<std::string>().empty());
    EXPECT_FALSE(r["property"].get<std::string>().empty());
    EXPECT_TRUE(r["ok"].get<bool>());
  }
  EXPECT_TRUE(verify_report(rep).ok);

  auto tampered = rep;
  tampered["final_cost"] = rep["final_cost"].get<Cost>() + 1;
  EXPECT_FALSE(verify_report(tampered).ok);
  auto no_ratio = rep;
  no_ratio.erase("ratio");
  EXPECT_FALSE(verify_report(no_ratio).ok);
}

TEST(Reports, NoOracleMeansNoRatio) {
  GenOptions g;
  g.n = 30;
  g.links = 40;
  const auto res = run_tree(gen_random(g));
  EXPECT_FALSE(res.report.contains("opt"));
  EXPECT_FALSE(res.report.contains("ratio"));
  EXPECT_TRUE(verify_report(res.report).ok);
}

TEST(Reports, PathAndFracReportsVerify) {
  GenOptions g;
  g.kind = "random-path";
  g.n = 12;
  g.links = 10;
  g.requests = 6;
  const auto t = gen_random(g);
  const auto p = run_path_report(t, {}, true);
  EXPECT_EQ(p["trace"].size(), p["requests"].size());
  EXPECT_TRUE(verify_report(p).ok);
  const auto f = run_frac_report(t);
  EXPECT_TRUE(verify_report(f).ok);
  const TreeInstance star(4, 0, {{0, 1}, {0, 2}, {0, 3}}, {{1, 2}}, {1});
  EXPECT_THROW(run_path_report(star), InputError);
}

TEST(Reports, RejectsForeignJson) {
  EXPECT_THROW(verify_report(json::object()), InputError);
  EXPECT_THROW(verify_report(json{{"mode", "run-tree"}, {"instance", "n 2 root 0\nedge 0 1\n"}}), InputError);
}

TEST(Sweep, EmptyGrid) {
  ExperimentSpec s;
  const auto r = sweep(s);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_TRUE(r.summary.max_ratio.empty());
  EXPECT_EQ(sweep_csv(r), "generator,size,seed,alg_cost,opt,ratio,invariants_ok,error\n");
}

TEST(Sweep, LowerBoundRatiosGrowWithK) {
  ExperimentSpec s;
  s.generator = "lowerbound";
  s.algorithm = "greedy";
  s.sizes = {1, 2, 3, 4, 5};
  const auto r = sweep(s);
  ASSERT_EQ(r.rows.size(), 5u);
  for (std::size_t i = 1; i < r.rows.size(); ++i) EXPECT_GE(*r.rows[i].ratio, *r.rows[i - 1].ratio);
  for (const auto& row : r.rows) EXPECT_TRUE(row.invariants_ok);
}

TEST(Sweep, SmallTreesWithOracle) {
  ExperimentSpec s;
  s.sizes = {6, 7, 8, 9};
  s.seeds = 10;
  s.links = 8;
  s.requests = 5;
  const auto r = sweep(s);
  ASSERT_EQ(r.rows.size(), 40u);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.error.empty()) << row.error;
    ASSERT_TRUE(row.ratio.has_value());
    EXPECT_TRUE(std::isfinite(*row.ratio));
    EXPECT_TRUE(row.invariants_ok);
  }
  EXPECT_EQ(r.summary.max_ratio.size(), 4u);
  // reproducible apart from timing
  const auto again = sweep(s);
  EXPECT_EQ(sweep_csv(r), sweep_csv(again));
  EXPECT_EQ(sweep_json(r), sweep_json(again));
  EXPECT_EQ(sweep_json(r)["config_hash"], r.config_hash);
}

TEST(Sweep, CellFailuresAreRecorded) {
  ExperimentSpec s;
  s.generator = "file";
  s.files = {"/nonexistent/instance.txt"};
  const auto r = sweep(s);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_FALSE(r.rows[0].error.empty());
  EXPECT_FALSE(r.rows[0].invariants_ok);
}
