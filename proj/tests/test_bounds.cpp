#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "shadowlab/bounds.hpp"
#include "shadowlab/dual_fan.hpp"

using namespace shadowlab;

TEST(Density, IntegratesToOne) {
  for (int n = 2; n <= 30; ++n) EXPECT_NEAR(integrate_b1_density(n), 1.0, 1e-9) << "n=" << n;
}

// The marginal of one coordinate on S^{n-1} is (1 - t^2)^((n-3)/2) / B(1/2, (n-1)/2).
TEST(Density, ConstantMatchesBetaFunction) {
  for (int n = 2; n <= 60; ++n) {
    EXPECT_NEAR(b1_density_constant(n), 1.0 / std::beta(0.5, (n - 1) / 2.0), 1e-12 * b1_density_constant(n));
  }
  EXPECT_EQ(b1_density(3, 1.0), 0.0);
  EXPECT_NEAR(b1_density(3, 0.3), 0.5, 1e-15);  // uniform on [-1, 1] for n = 3
}

TEST(ExpectedAbsCoordinate, KnownValuesAndMonteCarlo) {
  EXPECT_NEAR(expected_abs_coordinate(2), 2.0 / std::numbers::pi, 1e-14);
  EXPECT_NEAR(expected_abs_coordinate(3), 0.5, 1e-14);
  for (int n : {2, 3, 7, 40}) {
    const auto mc = estimate_abs_coordinate(n, {100000, 7, 0});
    EXPECT_NEAR(mc.mean, expected_abs_coordinate(n), 4.0 * mc.std_error) << "n=" << n;
  }
}

TEST(ExpectedAbsCoordinate, ScalesLikeInverseRootN) {
  for (int n = 2; n <= 10000; n += (n < 100 ? 1 : 97)) {
    const double s = expected_abs_coordinate(n) * std::sqrt(static_cast<double>(n));
    EXPECT_GE(s, 0.5);
    EXPECT_LE(s, 1.0);
  }
  EXPECT_NEAR(expected_abs_coordinate(1000000) * std::sqrt(1e6), std::sqrt(2.0 / std::numbers::pi), 1e-6);
}

// The two printed expressions bracket Gamma((n+1)/2) / Gamma(n/2).
TEST(Chu, RatioBracketContainsShiftedGammaRatio) {
  for (int n = 2; n <= 10000; ++n) {
    const double ratio = std::exp(std::lgamma((n + 1) / 2.0) - std::lgamma(n / 2.0));
    EXPECT_TRUE(chu_ratio_bracket(n).contains(ratio)) << "n=" << n;
  }
}

// Applied to E|B_1| the same expressions sit above the true value.
TEST(Chu, PrintedBracketMissesExpectedAbsCoordinate) {
  for (int n : {2, 3, 10, 1000}) {
    EXPECT_LT(expected_abs_coordinate(n), chu_bracket(n).lower) << "n=" << n;
  }
}

TEST(Cn, ClosedFormAndBracket) {
  EXPECT_NEAR(c_n_closed_form(2), 1.0, 1e-14);
  EXPECT_NEAR(c_n_closed_form(3), std::numbers::pi / 4.0, 1e-14);
  for (int n : {2, 3, 5, 10, 50}) {
    EXPECT_TRUE(c_n_bracket(n).contains(c_n_closed_form(n))) << "n=" << n;
    const auto mc = estimate_c_n(n, {50000, 8, 0});
    EXPECT_NEAR(mc.mean, c_n_closed_form(n), 4.0 * mc.std_error + 1e-12) << "n=" << n;
  }
}

TEST(Theorem11, SatisfiedOnFixtures) {
  const McOptions opts{2000, 9, 0};
  for (int n = 2; n <= 6; ++n) EXPECT_TRUE(check_theorem_1_1(hypercube(n), opts).satisfied) << n;
  EXPECT_TRUE(check_theorem_1_1(birkhoff(3), opts).satisfied);
  EXPECT_TRUE(check_theorem_1_1(augmented_permutahedron(4), opts).satisfied);
  const auto r = check_theorem_1_1(hypercube(4), opts);
  EXPECT_NEAR(r.lower, 4.0, 1e-12);  // 2 * 2 / 1
  EXPECT_DOUBLE_EQ(r.estimate, 8.0);
  EXPECT_NEAR(r.slack_lower, 2.0, 1e-12);
}

TEST(MakeReport, SatisfactionUsesThreeStandardErrors) {
  EXPECT_TRUE(make_report("x", 1.0, 0.9, 0.05, 2.0).satisfied);
  EXPECT_FALSE(make_report("x", 1.0, 0.8, 0.05, 2.0).satisfied);
  EXPECT_TRUE(make_report("x", 1.0, 2.1, 0.05, 2.0).satisfied);
  EXPECT_FALSE(make_report("x", 1.0, 2.2, 0.05, 2.0).satisfied);
}

TEST(KmParameters, ParametersAndStandardForm) {
  const VPolytope p({make_vec({2, 0}), make_vec({0, 3})}, std::nullopt, "km");
  const auto k = km_parameters(p);
  EXPECT_DOUBLE_EQ(k.gamma, 3.0);
  EXPECT_DOUBLE_EQ(k.delta_km, 2.0);
  const VPolytope neg({make_vec({-1, 0}), make_vec({0, 1})}, std::nullopt, "neg");
  EXPECT_THROW(km_parameters(neg), NotStandardForm);
  EXPECT_TRUE(km_report(hypercube(3), {500, 1, 0}).satisfied);
}

TEST(Lattice, BoundAndPreconditions) {
  EXPECT_TRUE(lattice_bound(hypercube(4), 1, {500, 1, 0}).satisfied);
  const VPolytope half({make_vec({0.5, 0}), make_vec({0, 1}), make_vec({1, 1})}, std::nullopt, "half");
  EXPECT_THROW(lattice_bound(half, 1, {10, 1, 0}), std::invalid_argument);
}

TEST(Rational, ReconstructionAndBound) {
  EXPECT_EQ(rational_reconstruct(0.5, 10), std::make_pair(1LL, 2LL));
  EXPECT_EQ(rational_reconstruct(-2.0 / 3.0, 10), std::make_pair(-2LL, 3LL));
  EXPECT_FALSE(rational_reconstruct(std::sqrt(2.0), 100).has_value());
  const VPolytope half({make_vec({0, 0}), make_vec({0.5, 0}), make_vec({0, 0.5})}, std::nullopt, "half");
  EXPECT_TRUE(rational_bound(half, 1, 2, {500, 1, 0}).satisfied);
  EXPECT_THROW(rational_bound(half, 1, 1, {10, 1, 0}), std::invalid_argument);
}

TEST(Subdeterminant, Examples) {
  EXPECT_EQ(integer_determinant({{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(integer_determinant({{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(max_abs_subdeterminant({{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(max_abs_subdeterminant({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 1);
  // Node-arc incidence of a directed 4-cycle: totally unimodular.
  const IntMatrix cycle{{1, 0, 0, -1}, {-1, 1, 0, 0}, {0, -1, 1, 0}, {0, 0, -1, 1}};
  EXPECT_EQ(max_abs_subdeterminant(cycle), 1);
}

TEST(Subdeterminant, InvariantUnderPermutationAndTransposition) {
  Rng rng(10);
  for (int rep = 0; rep < 10; ++rep) {
    IntMatrix a(4, std::vector<long long>(5));
    for (auto& row : a) {
      for (auto& x : row) x = static_cast<long long>(rng.next_u64() % 7) - 3;
    }
    const long long d = max_abs_subdeterminant(a);
    IntMatrix t(5, std::vector<long long>(4));
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 5; ++j) t[j][i] = a[i][j];
    }
    EXPECT_EQ(max_abs_subdeterminant(t), d);
    auto p = a;
    std::reverse(p.begin(), p.end());
    for (auto& row : p) std::rotate(row.begin(), row.begin() + 2, row.end());
    EXPECT_EQ(max_abs_subdeterminant(p), d);
  }
}

TEST(DeltaDelta, HoldsOnHypercubeAndAugmentedPermutahedron) {
  const auto h = check_delta_Delta_relation(hypercube(4), hypercube_facet_normals(4));
  EXPECT_TRUE(h.holds);
  EXPECT_EQ(h.Delta, 1);
  for (int n = 3; n <= 5; ++n) {
    const auto r = check_delta_Delta_relation(zonotope_vertices(augmented_permutahedron(n)),
                                              augmented_permutahedron_facet_normals(n));
    EXPECT_TRUE(r.holds) << "n=" << n << " delta=" << r.delta << " Delta=" << r.Delta;
  }
}
