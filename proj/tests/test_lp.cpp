#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shadowlab/lp.hpp"
#include "shadowlab/polytope.hpp"

using namespace shadowlab;
using lp::Relation;

TEST(Simplex, TextbookMaximum) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
  lp::LinearProgram p;
  p.num_vars = 2;
  p.objective = make_vec({3, 5});
  p.add(make_vec({1, 0}), Relation::kLessEqual, 4);
  p.add(make_vec({0, 2}), Relation::kLessEqual, 12);
  p.add(make_vec({3, 2}), Relation::kLessEqual, 18);
  const auto s = lp::solve(p);
  ASSERT_EQ(s.status, lp::Status::kOptimal);
  EXPECT_NEAR(s.value, 36.0, 1e-9);
  EXPECT_NEAR(s.x[0], 2.0, 1e-9);
  EXPECT_NEAR(s.x[1], 6.0, 1e-9);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  lp::LinearProgram inf;
  inf.num_vars = 1;
  inf.add(make_vec({1}), Relation::kLessEqual, 1);
  inf.add(make_vec({1}), Relation::kGreaterEqual, 2);
  EXPECT_EQ(lp::solve(inf).status, lp::Status::kInfeasible);

  lp::LinearProgram unb;
  unb.num_vars = 2;
  unb.objective = make_vec({1, 1});
  unb.add(make_vec({1, -1}), Relation::kLessEqual, 1);
  EXPECT_EQ(lp::solve(unb).status, lp::Status::kUnbounded);
}

TEST(Simplex, FreeVariablesAndEqualities) {
  // min x s.t. x = -3 with x free.
  lp::LinearProgram p;
  p.num_vars = 1;
  p.objective = make_vec({1});
  p.sense = lp::Sense::kMinimize;
  p.free_vars = {true};
  p.add(make_vec({1}), Relation::kEqual, -3);
  const auto s = lp::solve(p);
  ASSERT_EQ(s.status, lp::Status::kOptimal);
  EXPECT_NEAR(s.x[0], -3.0, 1e-9);
}

// Twenty random bounded LPs in 5 variables and 8 constraints, compared with
// the maximum over all basic solutions.
TEST(Simplex, MatchesVertexEnumeration) {
  Rng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::MatrixXd A(8, 5);
    Eigen::VectorXd b(8), c(5);
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 5; ++j) A(i, j) = rng.uniform() * 2.0 - 0.5;
      b[i] = 1.0 + rng.uniform() * 4.0;
    }
    A.row(0) = Eigen::VectorXd::Constant(5, 1.0);  // keeps the region bounded
    for (int j = 0; j < 5; ++j) c[j] = rng.normal();
    lp::LinearProgram p;
    p.num_vars = 5;
    p.objective = c;
    for (int i = 0; i < 8; ++i) p.add(A.row(i).transpose(), Relation::kLessEqual, b[i]);
    const auto s = lp::solve(p);
    const auto want = oracle::lp_max_by_vertices(A, b, c);
    ASSERT_TRUE(want.has_value());
    ASSERT_EQ(s.status, lp::Status::kOptimal) << "rep " << rep;
    EXPECT_NEAR(s.value, *want, 1e-8) << "rep " << rep;
  }
}

TEST(Simplex, RowPermutationKeepsStatus) {
  Rng rng(78);
  for (int rep = 0; rep < 20; ++rep) {
    lp::LinearProgram p;
    p.num_vars = 3;
    p.objective = make_vec({rng.normal(), rng.normal(), rng.normal()});
    for (int i = 0; i < 5; ++i) {
      p.add(make_vec({rng.normal(), rng.normal(), rng.normal()}), i % 2 ? Relation::kLessEqual : Relation::kGreaterEqual,
            rng.normal());
    }
    auto q = p;
    std::reverse(q.constraints.begin(), q.constraints.end());
    const auto a = lp::solve(p), b = lp::solve(q);
    EXPECT_EQ(a.status, b.status);
    if (a.status == lp::Status::kOptimal) EXPECT_NEAR(a.value, b.value, 1e-8);
  }
}

TEST(EdgeOracle, HypercubeEdgeCounts) {
  for (int n = 1; n <= 5; ++n) {
    const auto cube = hypercube(n);
    int count = 0;
    for (int i = 0; i < cube.num_vertices(); ++i) {
      for (int j = i + 1; j < cube.num_vertices(); ++j) {
        const bool e = lp::is_edge(cube.vertices(), i, j);
        EXPECT_EQ(e, lp::is_edge(cube.vertices(), j, i));
        count += e;
      }
    }
    EXPECT_EQ(count, n * (1 << (n - 1))) << "n=" << n;
  }
}

TEST(EdgeOracle, BirkhoffSingleCycleRule) {
  for (int n = 2; n <= 4; ++n) {
    const auto b = birkhoff(n);
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    ASSERT_EQ(static_cast<int>(perms.size()), b.num_vertices());
    for (int i = 0; i < b.num_vertices(); ++i) {
      for (int j = i + 1; j < b.num_vertices(); ++j) {
        EXPECT_EQ(lp::is_edge(b.vertices(), i, j), permutation_ratio_is_single_cycle(perms[i], perms[j]))
            << "n=" << n << " pair " << i << "," << j;
      }
    }
  }
}

// Direct form: c'v_i = c'v_j = t and c'w <= t - 1 for every other vertex.
TEST(EdgeOracle, AgreesWithSeparatingHyperplaneFeasibility) {
  Rng rng(21);
  for (int rep = 0; rep < 6; ++rep) {
    std::vector<Vec> pts;
    for (int i = 0; i < 9; ++i) pts.push_back(sample_gaussian_vector(rng, 3));
    const auto p = from_points(pts, "random");
    const int n = p.dim();
    for (int i = 0; i < p.num_vertices(); ++i) {
      for (int j = i + 1; j < p.num_vertices(); ++j) {
        lp::LinearProgram sep;
        sep.num_vars = n + 1;
        sep.free_vars.assign(static_cast<std::size_t>(n + 1), true);
        auto row = [&](const Vec& w) {
          Vec r(n + 1);
          r.head(n) = w;
          r[n] = -1.0;
          return r;
        };
        sep.add(row(p.vertex(i)), lp::Relation::kEqual, 0.0);
        sep.add(row(p.vertex(j)), lp::Relation::kEqual, 0.0);
        for (int k = 0; k < p.num_vertices(); ++k) {
          if (k != i && k != j) sep.add(row(p.vertex(k)), lp::Relation::kLessEqual, -1.0);
        }
        EXPECT_EQ(lp::is_edge(p.vertices(), i, j), lp::solve(sep).feasible()) << rep << ": " << i << "," << j;
      }
    }
  }
}

TEST(ExtremeOracle, InteriorPointIsNotExtreme) {
  std::vector<Vec> pts{make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1}), make_vec({0.2, 0.2}), make_vec({0.5, 0})};
  EXPECT_TRUE(lp::is_extreme(pts, 0));
  EXPECT_TRUE(lp::is_extreme(pts, 1));
  EXPECT_FALSE(lp::is_extreme(pts, 3));
  EXPECT_FALSE(lp::is_extreme(pts, 4));
}
