#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/core_geom.hpp"

namespace shadowlab {

using Edge = std::pair<int, int>;

class NotSimple : public std::runtime_error {
 public:
  NotSimple(int vertex, int degree, int dim);
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

class SizeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Orthonormal coordinates for the affine hull of a point set.
struct AffineHull {
  Vec origin;
  Mat basis;  // n x d, orthonormal columns

  int dim() const { return static_cast<int>(basis.cols()); }
  Vec reduce(const Vec& x) const { return basis.transpose() * (x - origin); }
  Vec lift_direction(const Vec& y) const { return basis * y; }
};

AffineHull affine_hull(std::span<const Vec> points);

/// Vertex-list polytope. The edge graph is either supplied by the
/// constructor (families with a combinatorial rule) or computed on first
/// use with one LP per vertex pair; concurrent readers share one result.
class VPolytope {
 public:
  VPolytope(std::vector<Vec> vertices, std::optional<std::vector<Edge>> edges, std::string label);

  const std::vector<Vec>& vertices() const { return vertices_; }
  const Vec& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int dim() const { return static_cast<int>(vertices_.front().size()); }
  const std::string& label() const { return label_; }

  const std::vector<Edge>& edges() const;
  bool edges_known() const;

  /// LP re-check of the stored vertex and edge sets.
  bool validate() const;

 private:
  struct EdgeCache {
    std::once_flag once;
    std::vector<Edge> edges;
    bool known = false;
  };

  std::vector<Vec> vertices_;
  std::string label_;
  std::shared_ptr<EdgeCache> cache_;
};

/// Minkowski sum base + sum_i [0, g_i].
class Zonotope {
 public:
  Zonotope(std::vector<Vec> generators, Vec base, std::string label);

  const std::vector<Vec>& generators() const { return generators_; }
  const Vec& base() const { return base_; }
  int dim() const { return static_cast<int>(base_.size()); }
  int num_generators() const { return static_cast<int>(generators_.size()); }
  const std::string& label() const { return label_; }

  struct ParallelClass {
    Vec direction;               // unit
    std::vector<int> members;    // generator indices
    std::vector<double> scales;  // g_member = scale * direction
  };
  /// Generators grouped by parallelism (either orientation).
  const std::vector<ParallelClass>& parallel_classes() const { return classes_; }
  bool has_parallel_generators() const { return classes_.size() < generators_.size(); }

 private:
  std::vector<Vec> generators_;
  Vec base_;
  std::string label_;
  std::vector<ParallelClass> classes_;
};

struct NormalCone {
  int vertex_index = 0;
  std::vector<Vec> rays;          // unit, ambient coordinates
  std::vector<int> neighbors;     // rays[j] is opposite the edge to neighbors[j]
};

struct EdgeStats {
  double min_length = 0.0;  // m
  double max_length = 0.0;  // M
  int count = 0;
};

// Families.
VPolytope hypercube(int n);
VPolytope birkhoff(int n);
Zonotope permutahedron(int n);
Zonotope augmented_permutahedron(int n);
/// k unit generators near e_1 in R^n, each tilted by a random orthogonal
/// perturbation of norm at most eps.
Zonotope zn_parallel(int k, double eps, Rng& rng, int n = 3);
/// e_1..e_n plus, for eps > 0, perturbed unit copies of each e_i.
Zonotope zn_basis(int n, double eps, Rng& rng);

/// True iff p * q^{-1} is a single cycle (Birkhoff adjacency).
bool permutation_ratio_is_single_cycle(std::span<const int> p, std::span<const int> q);

/// Deduplicates, then keeps only extreme points (LP).
VPolytope from_points(std::span<const Vec> points, std::string label);

inline constexpr int kMaxZonotopeGenerators = 20;

/// Vertices (and edges) of a zonotope by incremental enumeration of the
/// realizable sign vectors of its central arrangement, one LP per candidate.
VPolytope zonotope_vertices(const Zonotope& z);

EdgeStats edge_stats(const VPolytope& p);
/// Pairwise non-parallel generators: every edge is a translate of a
/// generator. Otherwise falls back to vertex enumeration.
EdgeStats edge_stats(const Zonotope& z);

/// Normal cones at every vertex of a simple polytope, computed in the
/// coordinates of its affine hull and reported in ambient coordinates.
std::vector<NormalCone> normal_cones(const VPolytope& p);

/// Integer facet normals (one per facet orientation class).
std::vector<std::vector<long long>> hypercube_facet_normals(int n);
std::vector<std::vector<long long>> augmented_permutahedron_facet_normals(int n);

}  // namespace shadowlab
