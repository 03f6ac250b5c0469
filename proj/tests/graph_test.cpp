#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "gfstab/graph.hpp"
#include "gfstab/io.hpp"
#include "gfstab/laplacian.hpp"

namespace gfstab {
namespace {

using Pairs = std::vector<std::pair<Node, Node>>;

TEST(BuildGraph, Triangle) {
  Pairs p = {{0, 1}, {1, 2}, {0, 2}};
  Graph g = build_graph(3, p);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.degrees(), (std::vector<int>{2, 2, 2}));
}

TEST(BuildGraph, DeduplicatesUnorderedPairs) {
  Pairs p = {{0, 1}, {1, 0}};
  Graph g = build_graph(2, p);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.degrees(), (std::vector<int>{1, 1}));
}

TEST(BuildGraph, RejectsSelfLoop) {
  Pairs p = {{0, 0}};
  try {
    build_graph(3, p);
    FAIL() << "expected GraphError";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("(0, 0)"), std::string::npos);
  }
}

TEST(BuildGraph, RejectsOutOfRange) {
  Pairs p = {{0, 3}};
  EXPECT_THROW(build_graph(3, p), GraphError);
  Pairs q = {{-1, 2}};
  EXPECT_THROW(build_graph(3, q), GraphError);
}

TEST(NormalizedLaplacian, CompleteGraphK3) {
  SymMatrix l = normalized_laplacian(complete_graph(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(l(i, j), i == j ? 1.0 : -0.5);
}

TEST(NormalizedLaplacian, SingleEdge) {
  SymMatrix l = normalized_laplacian(path_graph(2));
  EXPECT_EQ(l(0, 0), 1.0);
  EXPECT_EQ(l(1, 1), 1.0);
  EXPECT_EQ(l(0, 1), -1.0);
  EXPECT_EQ(l(1, 0), -1.0);
}

TEST(NormalizedLaplacian, TriangleMinusOneEdge) {
  // degrees (1,1,2): off-diagonals -1/sqrt(1*2) on the surviving edges.
  Graph gp = apply_perturbation(fixtures::k3(), fixtures::k3_delete());
  SymMatrix l = normalized_laplacian(gp);
  EXPECT_NEAR(l(0, 2), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(l(1, 2), -0.70711, 1e-5);
  EXPECT_EQ(l(0, 1), 0.0);
}

TEST(NormalizedLaplacian, IsolatedNodeHasZeroDiagonal) {
  Pairs p = {{0, 1}};
  SymMatrix l = normalized_laplacian(build_graph(3, p));
  EXPECT_EQ(l(2, 2), 0.0);
  EXPECT_EQ(l(0, 0), 1.0);
}

TEST(NormalizedLaplacian, SpectrumWithinZeroTwo) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = fixtures::random_connected(5 + trial, 0.2, rng);
    // Independent eigensolver so this does not depend on the project's own.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized_laplacian(g).dense());
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
    EXPECT_LE(es.eigenvalues().maxCoeff(), 2.0 + 1e-9);
    EXPECT_NEAR(es.eigenvalues()[0], 0.0, 1e-9);
  }
}

TEST(ApplyPerturbation, DeleteFromTriangle) {
  Graph gp = apply_perturbation(fixtures::k3(), fixtures::k3_delete());
  EXPECT_EQ(gp.edges(), (std::vector<Edge>{Edge(0, 2), Edge(1, 2)}));
  EXPECT_EQ(gp.degrees(), (std::vector<int>{1, 1, 2}));
}

TEST(ApplyPerturbation, EmptyIsIdentity) {
  Graph g = cycle_graph(7);
  EXPECT_EQ(apply_perturbation(g, Perturbation{}), g);
}

TEST(ApplyPerturbation, C6RewireKeepsTwoRegular) {
  Graph gp = apply_perturbation(fixtures::c6(), fixtures::c6_rewire());
  EXPECT_EQ(gp.num_edges(), 6u);
  for (int d : gp.degrees()) EXPECT_EQ(d, 2);
  EXPECT_TRUE(gp.has_edge(0, 3));
  EXPECT_TRUE(gp.has_edge(1, 4));
  EXPECT_FALSE(gp.has_edge(0, 1));
}

TEST(ApplyPerturbation, RejectsInvalidEdits) {
  Graph g = fixtures::k3();
  EXPECT_THROW(apply_perturbation(cycle_graph(5), Perturbation({}, {Edge(0, 2)})), GraphError);
  EXPECT_THROW(apply_perturbation(g, Perturbation({Edge(0, 1)}, {})), GraphError);
}

TEST(ApplyPerturbation, InverseRestoresOriginal) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = fixtures::random_connected(12, 0.25, rng);
    Perturbation p = fixtures::random_perturbation(g, 0.3, 0.1, rng);
    Graph gp = apply_perturbation(g, p);
    EXPECT_EQ(apply_perturbation(gp, inverse(p)).edges(), g.edges());
    EXPECT_EQ(diff(g, gp), p);
  }
}

TEST(EditCount, Fixtures) {
  EXPECT_EQ(edit_count(Perturbation{}), 0u);
  EXPECT_EQ(edit_count(fixtures::c6_rewire()), 4u);
  EXPECT_EQ(edit_count(fixtures::k3_delete()), 1u);
}

TEST(ErrorMatrix, IdentityPerturbationIsZero) {
  SymMatrix l = normalized_laplacian(cycle_graph(5));
  EXPECT_TRUE(error_matrix(l, l).dense().isZero(0.0));
}

TEST(ErrorMatrix, TriangleDelete) {
  SymMatrix l = normalized_laplacian(fixtures::k3());
  SymMatrix lp = normalized_laplacian(apply_perturbation(fixtures::k3(), fixtures::k3_delete()));
  SymMatrix e = error_matrix(l, lp);
  EXPECT_NEAR(e(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(e(0, 2), 0.5 - 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(e(1, 2), -0.20711, 1e-5);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(e(i, i), 0.0);
}

TEST(ErrorMatrix, C6RewireFlipsFourEntries) {
  SymMatrix l = normalized_laplacian(fixtures::c6());
  SymMatrix lp = normalized_laplacian(apply_perturbation(fixtures::c6(), fixtures::c6_rewire()));
  SymMatrix e = error_matrix(l, lp);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      Edge ij(i, j);
      double expected = 0;
      if (i != j && (ij == Edge(0, 1) || ij == Edge(3, 4))) expected = 0.5;
      if (i != j && (ij == Edge(0, 3) || ij == Edge(1, 4))) expected = -0.5;
      EXPECT_EQ(e(i, j), expected) << i << "," << j;
    }
  }
}

TEST(ErrorMatrix, ExactlySymmetricAndAntisymmetricUnderSwap) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = fixtures::random_connected(15, 0.2, rng);
    Graph gp = apply_perturbation(g, fixtures::random_perturbation(g, 0.2, 0.05, rng));
    SymMatrix l = normalized_laplacian(g), lp = normalized_laplacian(gp);
    SymMatrix e = error_matrix(l, lp), back = error_matrix(lp, l);
    EXPECT_TRUE((e.dense() - e.dense().transpose()).isZero(0.0));
    EXPECT_TRUE((e.dense() + back.dense()).isZero(0.0));
  }
}

TEST(ErrorMatrix, OrderMismatch) {
  EXPECT_THROW(error_matrix(SymMatrix(3), SymMatrix(4)), std::invalid_argument);
}

TEST(Connectivity, Basics) {
  EXPECT_TRUE(is_connected(complete_graph(3)));
  EXPECT_FALSE(has_isolated(complete_graph(3)));

  Pairs two = {{0, 1}, {2, 3}};
  Graph g = build_graph(4, two);
  EXPECT_FALSE(is_connected(g));
  EXPECT_FALSE(has_isolated(g));

  Pairs one = {{0, 1}};
  Graph h = build_graph(3, one);
  EXPECT_TRUE(has_isolated(h));
  EXPECT_EQ(h.degree(2), 0);
  EXPECT_EQ(neighbourhood(complete_graph(4), 2), (std::vector<Node>{0, 1, 3}));
}

TEST(EdgeListFormat, RoundTrip) {
  std::mt19937_64 rng(5);
  Graph g = fixtures::random_connected(20, 0.15, rng);
  std::stringstream ss;
  write_edge_list(ss, g);
  EXPECT_EQ(read_edge_list(ss), g);
}

TEST(EdgeListFormat, RejectsDuplicatesSelfLoopsAndBadCounts) {
  std::istringstream dup("3 2\n0 1\n1 0\n");
  EXPECT_THROW(read_edge_list(dup), ParseError);
  std::istringstream loop("3 1\n1 1\n");
  EXPECT_THROW(read_edge_list(loop), ParseError);
  std::istringstream count("3 2\n0 1\n");
  EXPECT_THROW(read_edge_list(count), ParseError);
  std::istringstream range("3 1\n0 3\n");
  EXPECT_THROW(read_edge_list(range), ParseError);
}

TEST(PerturbationFormat, RoundTripAndConflicts) {
  std::stringstream ss;
  write_perturbation(ss, fixtures::c6_rewire());
  EXPECT_EQ(ss.str(), "+ 0 3\n+ 1 4\n- 0 1\n- 3 4\n");
  EXPECT_EQ(read_perturbation(ss), fixtures::c6_rewire());
  std::istringstream both("+ 0 1\n- 1 0\n");
  EXPECT_THROW(read_perturbation(both), ParseError);
}

TEST(SignalFormat, RoundTripIsBitExact) {
  Eigen::VectorXd x(4);
  x << 0.1, -1.0 / 3.0, 1e-300, 12345.6789;
  std::stringstream ss;
  write_signal(ss, x);
  Eigen::VectorXd y = read_signal(ss);
  ASSERT_EQ(y.size(), 4);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(x[i], y[i]);
}

}  // namespace
}  // namespace gfstab
