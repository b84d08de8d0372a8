#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace signcover;
using support::fixture;

namespace {

SignedMultigraph all_positive(const SignedMultigraph& g) {
  return g.with_signs(std::vector<Sign>(static_cast<std::size_t>(g.edge_count()), Sign::Positive));
}

std::uint64_t mask_of(const std::vector<EdgeId>& edges) {
  std::uint64_t m = 0;
  for (EdgeId e : edges) m |= std::uint64_t{1} << e;
  return m;
}

/// Smallest total length of a multiset of catalog masks covering every
/// edge, by dynamic programming over covered-edge subsets.
std::int64_t cover_by_subset_dp(const std::vector<std::uint64_t>& masks, int m) {
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  std::vector<std::int64_t> best(full + 1, -1);
  best[0] = 0;
  for (std::uint64_t s = 0; s <= full; ++s) {
    if (best[s] < 0) continue;
    for (std::uint64_t c : masks) {
      const std::uint64_t t = s | c;
      const std::int64_t len = best[s] + std::popcount(c);
      if (t != s && (best[t] < 0 || len < best[t])) best[t] = len;
    }
  }
  return best[full];
}

}  // namespace

TEST(EnumerateCircuits, Examples) {
  EXPECT_EQ(enumerate_circuits(fixture("TRI+")).size(), 1u);
  const auto k4 = enumerate_circuits(fixture("K4M"));
  EXPECT_EQ(k4.size(), 7u);
  EXPECT_EQ(std::count_if(k4.begin(), k4.end(), [](const Circuit& c) { return c.length() == 3; }), 4);
  const auto digon = enumerate_circuits(build_graph(2, {{0, 1, +1}, {0, 1, -1}}));
  ASSERT_EQ(digon.size(), 1u);
  EXPECT_EQ(digon[0].length(), 2u);
  EXPECT_EQ(enumerate_circuits(build_graph(1, {{0, 0, -1}})).size(), 1u);
}

TEST(EnumerateCircuits, MatchesSubsetEnumerationAndIsOrderIndependent) {
  std::mt19937_64 rng(51);
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + round % 7;
    const auto g = support::random_multigraph(rng, n, round % 13, 0.5);
    std::vector<std::uint64_t> found;
    for (const Circuit& c : enumerate_circuits(g)) found.push_back(mask_of(c.edges));
    std::sort(found.begin(), found.end());
    ASSERT_EQ(found, support::brute_circuits(g)) << write_graph(g);

    // relabel vertices in reverse and compare edge sets
    std::vector<Edge> reversed;
    for (const Edge& e : g.edges()) reversed.push_back({n - 1 - e.u, n - 1 - e.v, e.sign});
    std::vector<std::uint64_t> again;
    for (const Circuit& c : enumerate_circuits(SignedMultigraph(n, reversed))) again.push_back(mask_of(c.edges));
    std::sort(again.begin(), again.end());
    ASSERT_EQ(found, again);
  }
}

TEST(EnumerateCircuits, LimitIsEnforced) {
  EXPECT_THROW(enumerate_circuits(fixture("PET5"), 10), Error);
}

TEST(SignCircuitCatalog, Examples) {
  const auto k4m = enumerate_sign_circuits(fixture("K4M"));
  EXPECT_EQ(k4m.balanced_count, 3u);
  EXPECT_EQ(k4m.members.size(), 3u);

  const auto pri = enumerate_sign_circuits(fixture("PRI2"));
  std::size_t barbells = 0;
  for (const auto& m : pri.members) barbells += m.kind == SignCircuitKind::LongBarbell;
  EXPECT_EQ(barbells, 3u);
  EXPECT_FALSE(pri.capped);
  for (const auto& m : pri.members) EXPECT_TRUE(validate_sign_circuit(fixture("PRI2"), m).ok());

  const auto pos = enumerate_sign_circuits(all_positive(fixture("PRI2")));
  EXPECT_EQ(pos.balanced_count, pos.members.size());
}

TEST(SignCircuitCatalog, ShortBarbellsOnSharedVertex) {
  // two negative loops at one vertex form a short barbell; loops are edges 0 and 1
  const auto g = build_graph(1, {{0, 0, -1}, {0, 0, -1}});
  const auto cat = enumerate_sign_circuits(g);
  ASSERT_EQ(cat.members.size(), 1u);
  EXPECT_EQ(cat.members[0].kind, SignCircuitKind::ShortBarbell);
  EXPECT_TRUE(validate_sign_circuit(g, cat.members[0]).ok());
}

TEST(SignCircuitCatalog, MatchesSubsetEnumerationOnRandomGraphs) {
  std::mt19937_64 rng(52);
  for (int round = 0; round < 200; ++round) {
    const auto g = support::random_multigraph(rng, 1 + round % 7, round % 12, 0.5);
    const auto cat = enumerate_sign_circuits(g);
    for (const auto& m : cat.members) ASSERT_TRUE(validate_sign_circuit(g, m).ok()) << write_graph(g);
    std::vector<std::uint64_t> masks = cat.masks;
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    ASSERT_EQ(masks, support::brute_sign_circuits(g)) << write_graph(g);
  }
}

TEST(FlowAdmissibleByDefinition, Examples) {
  EXPECT_TRUE(flow_admissible_by_definition(fixture("K4M")));
  EXPECT_FALSE(flow_admissible_by_definition(fixture("TRI1")));
  EXPECT_FALSE(flow_admissible_by_definition(
      build_graph(6, {{0, 1, +1}, {1, 2, +1}, {2, 0, +1}, {3, 4, +1}, {4, 5, +1}, {5, 3, +1}, {2, 3, +1}})));
}

TEST(ExactScc, Examples) {
  const auto pet = exact_scc(fixture("PET5"));
  EXPECT_EQ(pet.length, 25);
  EXPECT_TRUE(pet.optimal);
  EXPECT_EQ(3 * pet.length, 5 * 15);
  EXPECT_TRUE(validate_cover(fixture("PET5"), pet.cover).ok());

  const auto k4m = exact_scc(fixture("K4M"));
  EXPECT_EQ(k4m.length, 8);
  EXPECT_TRUE(validate_cover(fixture("K4M"), k4m.cover).ok());

  // all-positive K4: each vertex has degree 3, so some edge at it is covered
  // twice; at least two doubled edges give 6 + 2 = 8
  EXPECT_EQ(exact_scc(all_positive(fixture("K4M"))).length, 8);
  EXPECT_EQ(exact_scc(fixture("TRI+")).length, 3);
}

TEST(ExactScc, NotFlowAdmissibleIsAnError) {
  try {
    exact_scc(fixture("TRI1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFlowAdmissible);
  }
}

TEST(ExactScc, MatchesSubsetDynamicProgram) {
  std::mt19937_64 rng(53);
  int checked = 0;
  for (int round = 0; round < 400 && checked < 120; ++round) {
    const auto g = support::random_multigraph(rng, 2 + round % 5, 3 + round % 8, 0.4);
    if (!is_connected(g) || !flow_admissible_by_definition(g)) continue;
    const auto r = exact_scc(g);
    ASSERT_TRUE(r.optimal);
    ASSERT_EQ(r.length, cover_by_subset_dp(support::brute_sign_circuits(g), g.edge_count())) << write_graph(g);
    ASSERT_TRUE(validate_cover(g, r.cover).ok());
    ASSERT_EQ(cover_length(r.cover), r.length);
    ASSERT_GE(r.length, g.edge_count());
    ++checked;
  }
  EXPECT_GE(checked, 100);
}

TEST(ExactScc, NodeBudgetMarksResultNonOptimal) {
  OracleLimits limits;
  limits.node_budget = 1;
  const auto r = exact_scc(fixture("PET5"), limits);
  EXPECT_FALSE(r.optimal);
  EXPECT_GE(r.length, 25);
  EXPECT_TRUE(validate_cover(fixture("PET5"), r.cover).ok());
}

TEST(ExactScc, InvariantUnderSwitchingAndBelowPipeline) {
  std::mt19937_64 rng(54);
  for (int seed = 0; seed < 40; ++seed) {
    const auto inst = support::instance(4 + 2 * (seed % 5), 0.4, static_cast<std::uint64_t>(seed));
    const auto r = exact_scc(inst.graph);
    ASSERT_TRUE(r.optimal);
    EXPECT_EQ(exact_scc(support::random_switching(inst.graph, rng)).length, r.length);
    EXPECT_LE(r.length, cover_3ec_cubic(inst.graph, inst.coloring).trace.length);
  }
}
