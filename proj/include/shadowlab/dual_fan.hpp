#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shadowlab/core_geom.hpp"
#include "shadowlab/polytope.hpp"

namespace shadowlab {

struct Arc {
  int vertex_index = 0;
  double angle_start = 0.0;  // radians in [0, 2pi)
  double angle_end = 0.0;    // angle_start < angle_end <= angle_start + 2pi
  double length() const { return angle_end - angle_start; }
};

/// Partition of the circle of objectives c(t) = cos t * u + sin t * v by the
/// normal fan: each arc is where one vertex is the unique maximizer.
struct ArcDecomposition {
  Frame2 frame;
  std::vector<Arc> arcs;  // sorted by angle_start

  double total_length() const;
  /// Perimeter of the polygon inscribed in the unit circle at the arc
  /// boundaries.
  double inscribed_perimeter() const;
};

struct ArcCount {
  int count = 0;
  ArcDecomposition decomposition;
};

/// Shadow vertex count from the dual side: for each vertex v intersect the
/// open half-circles {t : c(t).(v - w) > 0} over all w != v. O(|V|^2) and
/// independent of any planar hull code.
ArcCount arc_count(const VPolytope& p, const Frame2& f);

struct DeltaReport {
  double delta = 1.0;
  std::pair<int, int> witness{0, 0};  // (cone vertex index, ray index)
  std::vector<double> per_cone_minima;
};

/// Minimum over normal cones and rays of the distance from the unit ray to
/// the span of the other rays of its cone. Requires a simple polytope.
DeltaReport delta_of_polytope(const VPolytope& p);

/// Published closed form for the augmented permutahedron:
/// min(1, min_k n / (sqrt(2) ((n-k) sqrt(k) + k sqrt(n-k)))).
double augmented_permutahedron_delta_closed_form(int n);

/// Closed form from the exact ray norms |e_[k] - (k/n) e_[n]| = sqrt(k(n-k)/n):
/// min(1, min_k sqrt(n) / (sqrt(2) sqrt(k(n-k)))).
double augmented_permutahedron_delta_exact(int n);

class TooThinCone : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConeSamples {
  std::vector<Vec> points;
  double acceptance_rate = 0.0;
  std::int64_t proposals = 0;
};

inline constexpr std::int64_t kConeProposalCap = 10'000'000;
inline constexpr double kConeAcceptanceFloor = 1e-6;

/// Uniform samples from cone(rays) intersected with the unit ball (or unit
/// sphere) by rejection. When there are fewer rays than dimensions the
/// proposals live in the span of the rays.
ConeSamples sample_cone_ball(std::span<const Vec> rays, Rng& rng, std::int64_t count);
ConeSamples sample_cone_sphere(std::span<const Vec> rays, Rng& rng, std::int64_t count);

/// Distance from each unit ray to the span of the other rays.
std::vector<double> ray_hyperplane_distances(std::span<const Vec> rays);

/// Distance from x to the arrangement of spans {span(rays except j)}.
double dist_to_arrangement(const Vec& x, std::span<const Vec> rays);

struct Lemma31Result {
  double empirical_prob = 0.0;
  double std_error = 0.0;
  double bound = 0.0;  // ((1+eps)^k - 1) / h
  double h = 0.0;
  bool satisfied = false;  // empirical <= bound + 3 SE
};

/// Pr[d(x, H) <= eps] over cone and ball, H = span of all rays but one.
Lemma31Result validate_lemma_3_1(std::span<const Vec> rays, int hyperplane_index, double eps,
                                 std::int64_t trials, Rng& rng);

struct ArrangementResult {
  double empirical_mean = 0.0;
  double std_error = 0.0;
  double lower_bound = 0.0;  // h / (8 k^2)
  double h = 0.0;
  bool satisfied = false;  // empirical >= lower_bound - 3 SE
};

/// Mean distance to the canonical arrangement over cone and ball.
ArrangementResult validate_lemma_3_2(std::span<const Vec> rays, std::int64_t trials, Rng& rng);
/// Same over cone and sphere.
ArrangementResult validate_cor_3_4(std::span<const Vec> rays, std::int64_t trials, Rng& rng);

}  // namespace shadowlab
