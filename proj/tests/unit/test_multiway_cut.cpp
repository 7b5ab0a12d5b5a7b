#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cycleclust/error.hpp"
#include "cycleclust/multiway_cut.hpp"
#include "oracles.hpp"

using namespace cycleclust;

namespace {

std::vector<oracle::Edge> edges_of(const MultiwayCutInstance& mc) {
  std::vector<oracle::Edge> out;
  for (const auto& e : mc.edges) out.push_back({e.u, e.v, e.weight});
  return out;
}

}  // namespace

TEST(MultiwayCutFormat, RoundTrip) {
  const auto mc = random_multiway_cut(8, 3, 0.5, 4);
  EXPECT_EQ(parse_multiway_cut(write_multiway_cut(mc)), mc);
  const auto parsed = parse_multiway_cut("4 3\n1 2 3\n1 4 2.5\n4 3 1\n");
  EXPECT_EQ(parsed.vertices, 4);
  EXPECT_EQ(parsed.terminals, (std::vector<int>{0, 1, 2}));
  ASSERT_EQ(parsed.edges.size(), 2u);
  EXPECT_EQ(parsed.edges[0], (WeightedEdge{0, 3, 2.5}));
  EXPECT_THROW(parse_multiway_cut("4 3\n1 2\n"), Error);
  EXPECT_THROW(parse_multiway_cut("4 3\n1 2 3\n1 9 1\n"), Error);
  EXPECT_THROW(parse_multiway_cut("4 3\n1 2 3\n1 4 -1\n"), Error);
}

TEST(MultiwayCut, DropTerminalEdges) {
  auto mc = parse_multiway_cut("4 3\n1 2 3\n1 2 5\n1 4 1\n2 4 1\n3 4 1\n");
  EXPECT_EQ(drop_terminal_edges(mc), 5.0);
  EXPECT_EQ(mc.edges.size(), 3u);
}

TEST(Reduction, StationaryAndFlowStructure) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto mc = random_multiway_cut(7 + static_cast<int>(seed % 3), 3, 0.4, seed);
    const auto red = multiway_cut_to_instance(mc, 0.001);
    const Vector& pi = red.stationary.values();
    const Vector res = pi.transpose() * red.transition.entries() - pi.transpose();
    EXPECT_LT(res.lpNorm<Eigen::Infinity>(), 1e-10);
    const auto w = flow_matrix(red.transition, red.stationary);
    const int n = mc.vertices;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        bool consecutive = false;
        for (int i = 0; i < 3; ++i) {
          const int a = mc.terminals[i], b = mc.terminals[(i + 1) % 3];
          consecutive |= (u == a && v == b) || (u == b && v == a);
        }
        if (!consecutive) EXPECT_LE(std::abs(w(u, v) - w(v, u)), 1e-12);
      }
    }
    double total_c = 0.0;
    for (const auto& e : mc.edges) total_c += e.weight;
    EXPECT_EQ(red.big_m, 0.001 * total_c + 1.0);
  }
}

TEST(Reduction, CutIdentityForSeparatingClusterings) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto mc = random_multiway_cut(7, 3, 0.5, seed + 50);
    const double alpha = 0.001;
    const auto red = multiway_cut_to_instance(mc, alpha);
    const auto w = flow_matrix(red.transition, red.stationary);
    const double sum_q = red.arc_weights.sum();
    double total_c = 0.0;
    for (const auto& e : mc.edges) total_c += e.weight;
    std::vector<int> lab(7, 0);
    for (int t = 0; t < 3; ++t) lab[mc.terminals[t]] = t;
    for (int code = 0; code < 81; ++code) {
      int c = code;
      for (int v = 3; v < 7; ++v) {
        lab[v] = c % 3;
        c /= 3;
      }
      const double coh = oracle::direct_coherence(w.entries(), lab);
      const double cut = induced_cut_weight(mc, lab);
      EXPECT_NEAR(alpha * coh, alpha / sum_q * (total_c - cut), 1e-10);
    }
  }
}

TEST(Reduction, OptimumSeparatesTerminalsAndMinimizesCut) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto mc = random_multiway_cut(7, 3, 0.45, seed + 80);
    const auto red = multiway_cut_to_instance(mc, 0.001);
    const auto w = flow_matrix(red.transition, red.stationary);
    const auto best = oracle::enumerate_all(w.entries(), 3, 0.001);
    std::vector<int> terminal_labels;
    for (int t : mc.terminals) terminal_labels.push_back(best.labels[t]);
    std::sort(terminal_labels.begin(), terminal_labels.end());
    EXPECT_EQ(terminal_labels, (std::vector<int>{0, 1, 2}));
    EXPECT_NEAR(induced_cut_weight(mc, best.labels), oracle::min_multiway_cut(7, mc.terminals, edges_of(mc)), 1e-9);
  }
}

TEST(Reduction, Rejections) {
  auto two = parse_multiway_cut("3 2\n1 2\n1 3 1\n2 3 1\n");
  try {
    multiway_cut_to_instance(two, 0.001);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidTerminalCount);
  }
  auto isolated = parse_multiway_cut("5 3\n1 2 3\n1 4 1\n2 4 1\n");
  try {
    multiway_cut_to_instance(isolated, 0.001);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IsolatedNonTerminal);
  }
  auto tt = parse_multiway_cut("4 3\n1 2 3\n1 2 1\n1 4 1\n");
  EXPECT_THROW(multiway_cut_to_instance(tt, 0.001), Error);
}

TEST(RandomGraph, NoIsolatedNonTerminals) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto mc = random_multiway_cut(9, 3, 0.1, seed);
    std::vector<double> deg(9, 0.0);
    for (const auto& e : mc.edges) {
      deg[e.u] += e.weight;
      deg[e.v] += e.weight;
      EXPECT_FALSE(e.u < 3 && e.v < 3);
    }
    for (int v = 3; v < 9; ++v) EXPECT_GT(deg[v], 0.0);
  }
}
