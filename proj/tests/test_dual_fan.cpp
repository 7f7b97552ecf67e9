#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "shadowlab/dual_fan.hpp"
#include "shadowlab/shadow.hpp"

using namespace shadowlab;

namespace {

std::vector<Vec> skewed_cone(int k, double skew) {
  std::vector<Vec> rays;
  for (int i = 0; i < k; ++i) {
    Vec r = unit_vector(k, i);
    if (i > 0) r += skew * unit_vector(k, 0);
    rays.push_back(r.normalized());
  }
  return rays;
}

VPolytope rotated(const VPolytope& p, Rng& rng) {
  const int n = p.dim();
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  const Mat q = Eigen::HouseholderQR<Mat>(g).householderQ();
  std::vector<Vec> vs;
  for (const auto& v : p.vertices()) vs.push_back(q * v);
  return VPolytope(vs, p.edges(), p.label() + " rotated");
}

}  // namespace

TEST(ArcCount, AgreesWithPrimalShadow) {
  Rng rng(40);
  std::vector<Vec> pts;
  for (int i = 0; i < 25; ++i) pts.push_back(sample_gaussian_vector(rng, 3));
  const std::vector<VPolytope> fixtures{hypercube(4), birkhoff(3), zonotope_vertices(augmented_permutahedron(3)),
                                        zonotope_vertices(permutahedron(4)), from_points(pts, "random")};
  for (const auto& p : fixtures) {
    for (int t = 0; t < 100; ++t) {
      const Frame2 f = trial_frame(41, t, p.dim());
      EXPECT_EQ(arc_count(p, f).count, shadow(p, f).vertex_count()) << p.label() << " frame " << t;
    }
  }
}

TEST(ArcCount, ArcsCoverTheCircleAndInscribedPerimeterIsBounded) {
  const auto p = zonotope_vertices(augmented_permutahedron(4));
  for (int t = 0; t < 50; ++t) {
    const auto a = arc_count(p, trial_frame(42, t, p.dim()));
    EXPECT_NEAR(a.decomposition.total_length(), 2.0 * std::numbers::pi, 1e-6);
    EXPECT_LE(a.decomposition.inscribed_perimeter(), 2.0 * std::numbers::pi + 1e-9);
    for (std::size_t i = 0; i + 1 < a.decomposition.arcs.size(); ++i) {
      EXPECT_NEAR(a.decomposition.arcs[i].angle_end, a.decomposition.arcs[i + 1].angle_start, 1e-9);
    }
  }
}

TEST(ArcCount, ArcsMatchTheMaximizers) {
  const auto p = birkhoff(3);
  const Frame2 f = trial_frame(43, 0, p.dim());
  for (const auto& arc : arc_count(p, f).decomposition.arcs) {
    const double t = 0.5 * (arc.angle_start + arc.angle_end);
    const Vec c = std::cos(t) * f.u() + std::sin(t) * f.v();
    int best = 0;
    for (int i = 1; i < p.num_vertices(); ++i) {
      if (c.dot(p.vertex(i)) > c.dot(p.vertex(best))) best = i;
    }
    EXPECT_EQ(best, arc.vertex_index);
  }
}

TEST(Delta, HypercubeIsOne) { EXPECT_NEAR(delta_of_polytope(hypercube(4)).delta, 1.0, 1e-12); }

// Exact ray norms give delta = min(1, min_k sqrt(n) / (sqrt 2 sqrt(k(n-k)))),
// e.g. 1 at n = 2 and sqrt(3)/2 at n = 3.
TEST(Delta, AugmentedPermutahedronMatchesExactNormFormula) {
  EXPECT_NEAR(augmented_permutahedron_delta_exact(2), 1.0, 1e-15);
  EXPECT_NEAR(augmented_permutahedron_delta_exact(3), std::sqrt(3.0) / 2.0, 1e-15);
  for (int n = 3; n <= 6; ++n) {
    const double d = delta_of_polytope(zonotope_vertices(augmented_permutahedron(n))).delta;
    EXPECT_NEAR(d, augmented_permutahedron_delta_exact(n), 1e-9) << "n=" << n;
  }
}

TEST(Delta, PublishedClosedFormValues) {
  EXPECT_NEAR(augmented_permutahedron_delta_closed_form(4), 0.5, 1e-12);
  EXPECT_NEAR(augmented_permutahedron_delta_closed_form(3), 3.0 / (std::sqrt(2.0) * (2.0 + std::sqrt(2.0))), 1e-12);
}

TEST(Delta, RotationInvariant) {
  Rng rng(44);
  for (const auto& p : {hypercube(3), zonotope_vertices(augmented_permutahedron(4))}) {
    EXPECT_NEAR(delta_of_polytope(p).delta, delta_of_polytope(rotated(p, rng)).delta, 1e-9) << p.label();
  }
}

TEST(ConeSampling, SamplesLieInConeAndBall) {
  Rng rng(45);
  const auto rays = skewed_cone(3, 0.7);
  const auto ball = sample_cone_ball(rays, rng, 2000);
  const auto sphere = sample_cone_sphere(rays, rng, 2000);
  Mat r(3, 3);
  for (int j = 0; j < 3; ++j) r.col(j) = rays[static_cast<std::size_t>(j)];
  const Mat inv = r.inverse();
  for (const auto& x : ball.points) {
    EXPECT_LE(x.norm(), 1.0 + 1e-12);
    EXPECT_GE((inv * x).minCoeff(), -1e-9);
  }
  for (const auto& x : sphere.points) EXPECT_NEAR(x.norm(), 1.0, 1e-12);
}

TEST(ConeSampling, OrthantAcceptanceRate) {
  Rng rng(46);
  const auto s = sample_cone_ball(skewed_cone(3, 0.0), rng, 20000);
  const double se = std::sqrt(0.125 * 0.875 / static_cast<double>(s.proposals));
  EXPECT_NEAR(s.acceptance_rate, 0.125, 4.0 * se);
}

TEST(ConeSampling, FewerRaysThanDimensions) {
  Rng rng(47);
  const std::vector<Vec> rays{make_vec({1, 0, 0}), make_vec({1, 1, 0}).normalized()};
  const auto s = sample_cone_sphere(rays, rng, 500);
  for (const auto& x : s.points) {
    EXPECT_NEAR(x[2], 0.0, 1e-12);
    EXPECT_GE(x[1], -1e-12);
    EXPECT_GE(x[0], x[1] - 1e-12);
  }
}

TEST(Arrangement, DistanceInOrthantIsSmallestCoordinate) {
  const auto rays = skewed_cone(3, 0.0);
  EXPECT_NEAR(dist_to_arrangement(make_vec({0.5, 0.2, 0.9}), rays), 0.2, 1e-12);
  const auto h = ray_hyperplane_distances(rays);
  for (double d : h) EXPECT_NEAR(d, 1.0, 1e-12);
}

TEST(Lemmas, Lemma31BoundHolds) {
  Rng rng(48);
  for (double eps : {0.01, 0.05, 0.2}) {
    for (double skew : {0.0, 1.0}) {
      const auto r = validate_lemma_3_1(skewed_cone(3, skew), 1, eps, 20000, rng);
      EXPECT_TRUE(r.satisfied) << "eps=" << eps << " skew=" << skew << " p=" << r.empirical_prob << " bound=" << r.bound;
    }
  }
}

TEST(Lemmas, ArrangementMeansAndSphereDominatesBall) {
  Rng rng(49);
  for (int k : {2, 3}) {
    for (double skew : {0.0, 1.5}) {
      const auto rays = skewed_cone(k, skew);
      const auto ball = validate_lemma_3_2(rays, 20000, rng);
      const auto sphere = validate_cor_3_4(rays, 20000, rng);
      EXPECT_TRUE(ball.satisfied);
      EXPECT_TRUE(sphere.satisfied);
      EXPECT_GE(sphere.empirical_mean + 3.0 * sphere.std_error, ball.empirical_mean - 3.0 * ball.std_error);
      EXPECT_NEAR(ball.lower_bound, ball.h / (8.0 * k * k), 1e-15);
    }
  }
}

TEST(Lemmas, InputValidation) {
  Rng rng(50);
  const auto rays = skewed_cone(3, 0.0);
  EXPECT_THROW(validate_lemma_3_1(rays, 5, 0.1, 10, rng), std::out_of_range);
  EXPECT_THROW(validate_lemma_3_1(rays, 0, 0.0, 10, rng), std::invalid_argument);
  EXPECT_THROW(validate_lemma_3_2({rays.data(), 1}, 10, rng), std::invalid_argument);
  const std::vector<Vec> dependent{make_vec({1, 0}), make_vec({1, 0})};
  EXPECT_THROW(sample_cone_ball(dependent, rng, 10), std::invalid_argument);
}
