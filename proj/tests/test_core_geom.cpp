#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shadowlab/core_geom.hpp"
#include "shadowlab/stats.hpp"

using namespace shadowlab;

namespace {

std::vector<Point2> random_points(Rng& rng, int count) {
  std::vector<Point2> pts;
  for (int i = 0; i < count; ++i) pts.push_back({rng.normal(), rng.normal()});
  return pts;
}

Point2 rotate(Point2 p, double t) {
  return {std::cos(t) * p.x - std::sin(t) * p.y, std::sin(t) * p.x + std::cos(t) * p.y};
}

}  // namespace

TEST(MakeVec, RejectsNonFinite) {
  EXPECT_THROW(make_vec({1.0, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(make_vec({std::numeric_limits<double>::infinity()}), std::invalid_argument);
  EXPECT_EQ(make_vec({1.0, 2.0}).size(), 2);
}

TEST(Frame, ValidatesOrthonormality) {
  EXPECT_NO_THROW(Frame2::axis(3));
  EXPECT_THROW(Frame2(make_vec({1, 0}), make_vec({1, 0})), std::invalid_argument);
  EXPECT_THROW(Frame2(make_vec({1, 0}), make_vec({0, 1, 0})), InvalidDimension);
  Rng rng(3);
  EXPECT_THROW(sample_frame(rng, 1), InvalidDimension);
  EXPECT_THROW(sample_gaussian_vector(rng, 0), InvalidDimension);
}

TEST(Frame, SampledFramesAreOrthonormalInHighDimension) {
  Rng rng(11);
  for (int n : {2, 3, 50, 1000}) {
    for (int i = 0; i < 20; ++i) {
      const Frame2 f = sample_frame(rng, n);
      EXPECT_NEAR(f.u().norm(), 1.0, 1e-12);
      EXPECT_NEAR(f.v().norm(), 1.0, 1e-12);
      EXPECT_LE(std::abs(f.u().dot(f.v())), 1e-12);
    }
  }
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  Rng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

// Haar frames: each frame vector is uniform on the sphere, and v is uniform
// on the sphere of u's orthogonal complement, so both first coordinates
// should match a direct sphere sample.
TEST(Frame, CoordinatesMatchSphereSamplingByKs) {
  const int n = 5;
  Rng frames(5), sphere(6);
  std::vector<double> fu, fv, s1, s2;
  for (int i = 0; i < 10000; ++i) {
    const Frame2 f = sample_frame(frames, n);
    fu.push_back(f.u()[0]);
    fv.push_back(f.v()[0]);
    s1.push_back(sample_sphere(sphere, n)[0]);
    s2.push_back(sample_sphere(sphere, n)[0]);
  }
  EXPECT_GT(stats::ks_two_sample(fu, s1).p_value, 0.01);
  EXPECT_GT(stats::ks_two_sample(fv, s2).p_value, 0.01);
}

TEST(Hull2d, MatchesBruteForceExtremePoints) {
  Rng rng(2024);
  for (int rep = 0; rep < 100; ++rep) {
    const auto pts = random_points(rng, 50);
    auto got = hull2d(pts);
    auto want = oracle::extreme_points(pts);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want) << "set " << rep;
  }
}

TEST(Hull2d, CounterclockwiseFromLexMin) {
  Rng rng(9);
  const auto pts = random_points(rng, 40);
  const auto h = hull2d(pts);
  ASSERT_GE(h.size(), 3u);
  for (const auto& p : pts) {
    EXPECT_FALSE(p.x < pts[h[0]].x || (p.x == pts[h[0]].x && p.y < pts[h[0]].y));
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_GT(cross(pts[h[i]], pts[h[(i + 1) % h.size()]], pts[h[(i + 2) % h.size()]]), 0.0);
  }
}

TEST(Hull2d, Idempotent) {
  Rng rng(10);
  for (int rep = 0; rep < 20; ++rep) {
    const auto pts = random_points(rng, 30);
    const auto h = hull2d(pts);
    std::vector<Point2> hp;
    for (int i : h) hp.push_back(pts[i]);
    const auto h2 = hull2d(hp);
    ASSERT_EQ(h2.size(), hp.size());
    for (std::size_t i = 0; i < h2.size(); ++i) EXPECT_EQ(h2[i], static_cast<int>(i));
  }
}

TEST(Hull2d, DropsCollinearAndDuplicates) {
  const std::vector<Point2> square{{0, 0}, {1, 0}, {0.5, 0}, {1, 1}, {0, 1}, {1, 1}, {0.5, 0.5}};
  const auto h = hull2d(square);
  EXPECT_EQ(h, (std::vector<int>{0, 1, 3, 4}));

  const std::vector<Point2> same{{2, 2}, {2, 2}, {2, 2}};
  EXPECT_EQ(hull2d(same), std::vector<int>{0});

  const std::vector<Point2> segment{{0, 0}, {1, 1}, {2, 2}};
  EXPECT_EQ(hull2d(segment), (std::vector<int>{0, 2}));

  // Collinearity is judged relative to the coordinate scale.
  const std::vector<Point2> big{{0, 0}, {1e6, 0}, {5e5, 1e-7}, {0, 1e6}};
  EXPECT_EQ(hull2d(big).size(), 3u);
  EXPECT_THROW(hull2d(std::vector<Point2>{}), std::invalid_argument);
}

TEST(Hull2d, PerimeterAndDiameterAreRotationInvariant) {
  Rng rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const auto pts = random_points(rng, 25);
    const double t = rng.uniform() * 2.0 * std::numbers::pi;
    std::vector<Point2> rot;
    for (const auto& p : pts) rot.push_back(rotate(p, t));
    auto polygon = [](const std::vector<Point2>& ps) {
      std::vector<Point2> out;
      for (int i : hull2d(ps)) out.push_back(ps[i]);
      return out;
    };
    const auto a = polygon(pts), b = polygon(rot);
    EXPECT_NEAR(perimeter(a), perimeter(b), 1e-9 * perimeter(a));
    EXPECT_NEAR(gdiam(std::span<const Point2>(a)), gdiam(std::span<const Point2>(b)), 1e-9 * gdiam(std::span<const Point2>(a)));
  }
}

TEST(Hull2d, BarbierSandwich) {
  Rng rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    const auto pts = random_points(rng, 20);
    std::vector<Point2> poly;
    for (int i : hull2d(pts)) poly.push_back(pts[i]);
    const double d = gdiam(std::span<const Point2>(poly));
    EXPECT_LE(2.0 * d, perimeter(poly) + 1e-12);
    EXPECT_LE(perimeter(poly), std::numbers::pi * d + 1e-12);
  }
}

TEST(Distances, PointToSpanAndHyperplane) {
  const Vec x = make_vec({1, 2, 3});
  Mat basis(3, 2);
  basis << 1, 0, 0, 1, 0, 0;
  EXPECT_NEAR(dist_point_span(x, basis), 3.0, 1e-12);
  EXPECT_NEAR(dist_point_span(x, Mat(3, 0)), x.norm(), 1e-12);
  EXPECT_NEAR(dist_point_hyperplane(x, make_vec({0, 0, 2})), 3.0, 1e-12);
  EXPECT_THROW(dist_point_hyperplane(x, make_vec({0, 0})), InvalidDimension);
}

TEST(Gdiam, UnitCube) {
  std::vector<Vec> cube;
  for (int m = 0; m < 8; ++m) cube.push_back(make_vec({double(m & 1), double((m >> 1) & 1), double((m >> 2) & 1)}));
  EXPECT_NEAR(gdiam(std::span<const Vec>(cube)), std::sqrt(3.0), 1e-15);
}
